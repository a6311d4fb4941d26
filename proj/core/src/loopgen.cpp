#include "symtc/loopgen.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "symtc/error.hpp"

namespace symtc {

const TensorSignature& LoopNest::signatureOf(const std::string& tensor) const {
  if (tensor == output_sig.name) return output_sig;
  for (const auto& sig : inputs) {
    if (sig.name == tensor) return sig;
  }
  throw ContractViolation("no signature for tensor '" + tensor + "'");
}

namespace {

std::string boundHeader(const LoopNode& loop) {
  std::ostringstream out;
  out << "for ";
  bool zeroLower = loop.lower.kind == Bound::Kind::Zero;
  bool extentUpper = loop.upper.kind == Bound::Kind::Extent;
  if (zeroLower && extentUpper) {
    out << loop.var;
  } else if (zeroLower) {
    out << loop.var << " <= " << loop.upper.var;
  } else if (extentUpper) {
    out << loop.var << " > " << loop.lower.var;
  } else {
    out << loop.lower.var << " < " << loop.var << " <= " << loop.upper.var;
  }
  return out.str();
}

std::string statementText(const StatementNode& stmt) {
  std::ostringstream out;
  const char* op = stmt.accumulate ? " += " : " = ";
  bool guarded = std::any_of(stmt.terms.begin(), stmt.terms.end(),
                             [](const auto& t) { return !t.guard_vars.empty(); });
  if (!guarded) {
    out << stmt.output.str() << op;
    for (std::size_t t = 0; t < stmt.terms.size(); ++t) {
      if (t > 0) out << " + ";
      for (std::size_t f = 0; f < stmt.terms[t].factors.size(); ++f) {
        if (f > 0) out << " * ";
        out << stmt.terms[t].factors[f].str();
      }
    }
    return out.str();
  }
  for (std::size_t t = 0; t < stmt.terms.size(); ++t) {
    if (t > 0) out << "\n";
    out << stmt.output.str() << op;
    for (std::size_t f = 0; f < stmt.terms[t].factors.size(); ++f) {
      if (f > 0) out << " * ";
      out << stmt.terms[t].factors[f].str();
    }
    for (const auto& v : stmt.terms[t].guard_vars) {
      out << " when " << v << " == 0";
    }
  }
  return out.str();
}

void printNode(const LoopNode& loop, int depth, std::ostringstream& out) {
  for (int i = 0; i < depth; ++i) out << "  ";
  out << boundHeader(loop) << "\n";
  for (const auto& inner : loop.loops) printNode(inner, depth + 1, out);
  for (const auto& stmt : loop.statements) {
    std::istringstream lines(statementText(stmt));
    std::string line;
    while (std::getline(lines, line)) {
      for (int i = 0; i < depth + 1; ++i) out << "  ";
      out << line << "\n";
    }
  }
}

}  // namespace

std::string LoopNest::printIr() const {
  std::ostringstream out;
  printNode(root, 0, out);
  return out.str();
}

Access rewrite_access(
    const Access& access,
    const std::map<std::string, std::vector<std::string>>& placed_lists,
    const TensorSignature& sig) {
  Access result = access;
  for (const auto& part : sig.symmetry.parts()) {
    if (part.size() < 2) continue;
    // The deepest chain member's ordering list contains the whole part; if
    // no member's list does, the dependency graph failed to order the pair
    // and rewriting is impossible.
    const std::vector<std::string>* listing = nullptr;
    for (const auto& v : part) {
      auto it = placed_lists.find(v);
      if (it == placed_lists.end()) continue;
      bool coversAll = std::all_of(part.begin(), part.end(), [&](const auto& u) {
        return std::find(it->second.begin(), it->second.end(), u) !=
               it->second.end();
      });
      if (coversAll) {
        listing = &it->second;
        break;
      }
    }
    if (listing == nullptr) {
      throw Error("cannot canonicalize access " + access.str() +
                  ": symmetry part of " + sig.name +
                  " is not totally ordered in this region (dependency graph "
                  "defect)");
    }
    // Largest coordinate first: right-to-left order of the region listing.
    std::vector<std::string> descending = part;
    std::sort(descending.begin(), descending.end(),
              [&](const auto& a, const auto& b) {
                auto pa = std::find(listing->begin(), listing->end(), a);
                auto pb = std::find(listing->begin(), listing->end(), b);
                return pa > pb;
              });
    for (std::size_t k = 0; k < part.size(); ++k) {
      result.vars[static_cast<std::size_t>(sig.dimOf(part[k]))] =
          descending[k];
    }
  }
  return result;
}

namespace {

bool contiguous(const LoopNode& a, const LoopNode& b) {
  return a.var == b.var && a.upper.kind == Bound::Kind::Var &&
         !a.upper.strict && b.lower.kind == Bound::Kind::Var &&
         b.lower.strict && a.upper.var == b.lower.var;
}

bool sameBody(const LoopNode& a, const LoopNode& b) {
  return a.loops == b.loops && a.statements == b.statements;
}

void mergeLevel(std::vector<LoopNode>& loops) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < loops.size(); ++i) {
      if (contiguous(loops[i], loops[i + 1]) &&
          sameBody(loops[i], loops[i + 1])) {
        loops[i].upper = loops[i + 1].upper;
        loops.erase(loops.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

void merge_redundant(LoopNode& node) {
  for (auto& inner : node.loops) merge_redundant(inner);
  mergeLevel(node.loops);
}

LoopNest merge_redundant(LoopNest nest) {
  merge_redundant(nest.root);
  return nest;
}

namespace {

void validateInputs(const TensorStatement& stmt,
                    const std::vector<TensorSignature>& inputs) {
  auto accesses = stmt.inputAccesses();
  if (accesses.size() != inputs.size()) {
    throw ValidationError("expected " + std::to_string(accesses.size()) +
                          " input signatures, got " +
                          std::to_string(inputs.size()));
  }
  for (std::size_t i = 0; i < accesses.size(); ++i) {
    inputs[i].validate();
    if (inputs[i].name != accesses[i]->tensor ||
        inputs[i].index_vars != accesses[i]->vars) {
      throw ValidationError("signature of " + inputs[i].name +
                            " does not match access " + accesses[i]->str());
    }
  }
  checkExtentConsistency(stmt, inputs);
}

}  // namespace

LoopNest generate(const TensorStatement& stmt,
                  const std::vector<TensorSignature>& inputs,
                  const GenerateOptions& options) {
  validateInputs(stmt, inputs);

  LoopNest nest;
  nest.stmt = stmt;
  nest.inputs = inputs;
  nest.gcs_partition = gcs(stmt, inputs);

  nest.output_sig.name = stmt.output.tensor;
  nest.output_sig.index_vars = stmt.output.vars;
  nest.output_sig.symmetry = output_symmetry(stmt, nest.gcs_partition);
  for (const auto& v : stmt.output.vars) {
    Coord extent = -1;
    for (const auto& sig : inputs) {
      if (!sig.extentsKnown()) continue;
      for (std::size_t d = 0; d < sig.index_vars.size(); ++d) {
        if (sig.index_vars[d] == v) extent = sig.extents[d];
      }
    }
    nest.output_sig.extents.push_back(extent);
  }

  std::vector<SymmetryPartition> inputSyms;
  inputSyms.reserve(inputs.size());
  for (const auto& sig : inputs) inputSyms.push_back(sig.symmetry);
  nest.graph = build_dependency_graph(stmt.var_order, inputSyms);

  auto missing = unorderedSymmetricPairs(nest.graph, inputSyms);
  if (!missing.empty()) {
    std::string pairs;
    for (const auto& [a, b] : missing) {
      if (!pairs.empty()) pairs += ", ";
      pairs += "(" + a + ", " + b + ")";
    }
    throw Error(
        "dependency graph failed to order the symmetric variable pairs " +
        pairs + "; cannot generate canonical accesses");
  }

  // Orderings are pruned only by the gcs parts made of output variables:
  // one canonical write per output orbit. Reduction-variable parts must not
  // prune; their regions case-split with rewritten accesses so every term
  // still sums over its full reduction domain.
  std::vector<std::vector<std::string>> pruningParts;
  for (const auto& part : nest.gcs_partition.parts()) {
    bool allOutput =
        std::all_of(part.begin(), part.end(), [&](const std::string& v) {
          return std::find(stmt.output.vars.begin(), stmt.output.vars.end(),
                           v) != stmt.output.vars.end();
        });
    if (allOutput) {
      pruningParts.push_back(part);
    } else {
      for (const auto& v : part) pruningParts.push_back({v});
    }
  }
  SymmetryPartition pruning(std::move(pruningParts),
                            nest.gcs_partition.universe());
  nest.tree = build_ordering_tree(nest.graph, pruning);

  bool accumulate = !stmt.reductionVars().empty();

  std::map<std::string, std::vector<std::string>> region;
  std::function<LoopNode(const OrderingNode&)> lower =
      [&](const OrderingNode& node) -> LoopNode {
    LoopNode loop;
    loop.var = node.focus;
    int at = node.focusIndex();
    loop.lower = at > 0 ? Bound::below(node.placed[static_cast<std::size_t>(at) - 1])
                        : Bound::zero();
    loop.upper = at + 1 < static_cast<int>(node.placed.size())
                     ? Bound::upTo(node.placed[static_cast<std::size_t>(at) + 1])
                     : Bound::extentOf(node.focus);
    region[node.focus] = node.placed;
    if (node.children.empty()) {
      StatementNode body;
      body.region = region;
      body.accumulate = accumulate;
      body.output = rewrite_access(stmt.output, region, nest.output_sig);
      for (std::size_t t = 0; t < stmt.terms.size(); ++t) {
        StatementTerm term;
        term.term_index = static_cast<int>(t);
        std::size_t accessIdx = 0;
        for (std::size_t tt = 0; tt < t; ++tt) {
          accessIdx += stmt.terms[tt].factors.size();
        }
        for (std::size_t f = 0; f < stmt.terms[t].factors.size(); ++f) {
          term.factors.push_back(rewrite_access(stmt.terms[t].factors[f],
                                                region,
                                                inputs[accessIdx + f]));
        }
        auto termVars = stmt.terms[t].vars();
        for (const auto& v : stmt.var_order) {
          if (std::find(termVars.begin(), termVars.end(), v) ==
              termVars.end()) {
            term.guard_vars.push_back(v);
          }
        }
        body.terms.push_back(std::move(term));
      }
      loop.statements.push_back(std::move(body));
    } else {
      for (const auto& child : node.children) {
        loop.loops.push_back(lower(child));
      }
    }
    region.erase(node.focus);
    return loop;
  };
  nest.root = lower(nest.tree.root);

  if (options.merge) merge_redundant(nest.root);
  return nest;
}

}  // namespace symtc
