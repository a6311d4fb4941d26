#include "symtc/cemit.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "symtc/error.hpp"
#include "symtc/storage.hpp"

namespace symtc {

namespace {

// Storage part structure of a signature: original dimension indices per
// symmetry part, members ascending, parts by smallest dimension. Matches
// PackedLayout but needs no extents.
std::vector<std::vector<int>> storageParts(const TensorSignature& sig) {
  std::vector<std::vector<int>> parts;
  for (const auto& part : sig.symmetry.parts()) {
    std::vector<int> dims;
    dims.reserve(part.size());
    for (const auto& v : part) dims.push_back(sig.dimOf(v));
    parts.push_back(std::move(dims));
  }
  return parts;
}

// C expression for s_d(x); closed-form polynomial up to part size 4, the
// generated helper beyond that.
std::string sExpr(int d, const std::string& x, bool* needHelper) {
  static const std::int64_t factorial[] = {1, 1, 2, 6, 24};
  if (d == 0) return "1";
  if (d == 1) return x;
  if (d > 4) {
    *needHelper = true;
    return "symtc_sdim(" + std::to_string(d) + ", " + x + ")";
  }
  std::ostringstream out;
  out << "(long long)" << x;
  for (int i = 1; i < d; ++i) out << " * (" << x << " + " << i << ")";
  out << " / " << factorial[d];
  return out.str();
}

struct AccessKey {
  std::string tensor;
  std::vector<std::string> vars;
  auto operator<=>(const AccessKey&) const = default;
};

void collectTuples(const LoopNode& node,
                   std::map<std::string, std::set<std::vector<std::string>>>& tuples) {
  for (const auto& stmt : node.statements) {
    tuples[stmt.output.tensor].insert(stmt.output.vars);
    for (const auto& term : stmt.terms) {
      for (const auto& factor : term.factors) {
        tuples[factor.tensor].insert(factor.vars);
      }
    }
  }
  for (const auto& inner : node.loops) collectTuples(inner, tuples);
}

class Emitter {
public:
  Emitter(const LoopNest& nest, const std::string& name)
      : nest_(nest), name_(name) {}

  std::string emit() {
    std::ostringstream body;
    emitFunction(body);

    std::ostringstream out;
    emitHeaderComment(out);
    out << "#include <stddef.h>\n\n";
    if (need_helper_) {
      out << "static long long symtc_sdim(int d, long long n) {\n"
          << "  long long r = 1;\n"
          << "  for (int i = 1; i <= d; i++) {\n"
          << "    r = r * (n + d - i) / i;\n"
          << "  }\n"
          << "  return r;\n"
          << "}\n\n";
    }
    out << body.str();
    return out.str();
  }

private:
  void emitHeaderComment(std::ostringstream& out) {
    out << "/*\n * " << name_ << ": " << nest_.stmt.str() << "\n *\n";
    out << " * Packed storage: each tensor holds one value per canonical\n"
        << " * coordinate orbit, dimensions permuted so every symmetry part\n"
        << " * is contiguous.\n *\n";
    auto describe = [&](const TensorSignature& sig) {
      out << " *   " << sig.name << "[";
      for (std::size_t i = 0; i < sig.index_vars.size(); ++i) {
        if (i > 0) out << ",";
        out << sig.index_vars[i];
      }
      out << "]: symmetry " << sig.symmetry.str() << ", storage order (";
      auto parts = storageParts(sig);
      bool first = true;
      for (const auto& part : parts) {
        for (int d : part) {
          if (!first) out << ",";
          out << sig.index_vars[static_cast<std::size_t>(d)];
          first = false;
        }
      }
      out << ")\n";
    };
    describe(nest_.output_sig);
    for (const auto& sig : nest_.inputs) describe(sig);
    out << " *\n * extents[" << nest_.stmt.var_order.size() << "]:";
    for (std::size_t i = 0; i < nest_.stmt.var_order.size(); ++i) {
      out << (i == 0 ? " " : ", ") << "extents[" << i << "] = N"
          << nest_.stmt.var_order[i];
    }
    out << "\n */\n";
  }

  std::string sizeExpr(const TensorSignature& sig) {
    auto parts = storageParts(sig);
    std::ostringstream out;
    out << "(long long)1";
    for (std::size_t p = 0; p < parts.size(); ++p) {
      std::string n =
          "N" + sig.index_vars[static_cast<std::size_t>(parts[p].front())];
      std::string term =
          sExpr(static_cast<int>(parts[p].size()), n, &need_helper_);
      out << " * (" << term << ")";
    }
    return out.str();
  }

  void emitFunction(std::ostringstream& out) {
    out << "void " << name_ << "(double* " << nest_.output_sig.name;
    for (const auto& sig : nest_.inputs) {
      out << ", const double* " << sig.name;
    }
    out << ", const int* extents) {\n";
    for (std::size_t i = 0; i < nest_.stmt.var_order.size(); ++i) {
      out << "  const int N" << nest_.stmt.var_order[i] << " = extents[" << i
          << "];\n";
    }
    const std::string& outName = nest_.output_sig.name;
    out << "  const long long size_" << outName << " = "
        << sizeExpr(nest_.output_sig) << ";\n";
    out << "  for (long long z = 0; z < size_" << outName << "; z++) {\n"
        << "    " << outName << "[z] = 0.0;\n"
        << "  }\n";
    std::map<AccessKey, int> hoisted;  // consumed storage slots per access
    emitLoop(nest_.root, 1, hoisted, out);
    out << "}\n";
    bound_.clear();
  }

  std::string indent(int depth) { return std::string(2 * depth, ' '); }

  std::string partialName(const std::string& tensor, int slots) {
    return "idx_" + tensor + "_" + std::to_string(slots);
  }

  // Emits the partial offset locals for `key` that become computable with
  // the currently bound variables, starting after `consumed` storage slots.
  // Returns the new consumed count.
  int emitPartials(const AccessKey& key, int consumed, int depth,
                   std::ostringstream& out) {
    const TensorSignature& sig = nest_.signatureOf(key.tensor);
    auto parts = storageParts(sig);
    // Storage-slot order: (part, member) pairs flattened.
    std::vector<std::pair<int, int>> slots;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      for (std::size_t j = 0; j < parts[p].size(); ++j) {
        slots.emplace_back(static_cast<int>(p), static_cast<int>(j));
      }
    }
    int total = static_cast<int>(slots.size());
    while (consumed < total) {
      auto [p, j] = slots[static_cast<std::size_t>(consumed)];
      int dim = parts[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
      const std::string& v = key.vars[static_cast<std::size_t>(dim)];
      if (!bound_.count(v)) break;
      int psize = static_cast<int>(parts[static_cast<std::size_t>(p)].size());
      std::string self = partialName(key.tensor, consumed + 1);
      out << indent(depth) << "const long long " << self << " = ";
      if (j == 0) {
        std::string stepTerm = sExpr(psize, v, &need_helper_);
        if (consumed == 0) {
          out << stepTerm;
        } else {
          std::string partN =
              "N" +
              sig.index_vars[static_cast<std::size_t>(
                  parts[static_cast<std::size_t>(p)].front())];
          out << partialName(key.tensor, consumed) << " * ("
              << sExpr(psize, partN, &need_helper_) << ") + " << stepTerm;
        }
      } else {
        out << partialName(key.tensor, consumed) << " + "
            << sExpr(psize - j, v, &need_helper_);
      }
      out << ";\n";
      ++consumed;
    }
    return consumed;
  }

  void emitLoop(const LoopNode& loop, int depth,
                std::map<AccessKey, int> hoisted, std::ostringstream& out) {
    std::ostringstream header;
    header << "for (int " << loop.var << " = ";
    switch (loop.lower.kind) {
      case Bound::Kind::Zero:
        header << "0";
        break;
      case Bound::Kind::Var:
        header << loop.lower.var << (loop.lower.strict ? " + 1" : "");
        break;
      case Bound::Kind::Extent:
        throw ContractViolation("extent lower bound in loop IR");
    }
    header << "; " << loop.var;
    switch (loop.upper.kind) {
      case Bound::Kind::Extent:
        header << " < N" << loop.upper.var;
        break;
      case Bound::Kind::Var:
        header << (loop.upper.strict ? " < " : " <= ") << loop.upper.var;
        break;
      case Bound::Kind::Zero:
        throw ContractViolation("zero upper bound in loop IR");
    }
    header << "; " << loop.var << "++)";
    out << indent(depth) << header.str() << " {\n";
    bound_.insert(loop.var);

    // Hoist offset partials for every access whose variable tuple is the
    // same across all statements of this subtree.
    std::map<std::string, std::set<std::vector<std::string>>> tuples;
    collectTuples(loop, tuples);
    for (const auto& [tensor, variants] : tuples) {
      if (variants.size() != 1) continue;
      AccessKey key{tensor, *variants.begin()};
      int consumed = 0;
      for (const auto& [k, c] : hoisted) {
        if (k == key) consumed = c;
      }
      int now = emitPartials(key, consumed, depth + 1, out);
      hoisted[key] = now;
    }

    for (const auto& inner : loop.loops) {
      emitLoop(inner, depth + 1, hoisted, out);
    }
    for (const auto& stmt : loop.statements) {
      emitStatement(stmt, depth + 1, hoisted, out);
    }
    bound_.erase(loop.var);
    out << indent(depth) << "}\n";
  }

  std::string offsetOf(const Access& access,
                       const std::map<AccessKey, int>& hoisted) {
    const TensorSignature& sig = nest_.signatureOf(access.tensor);
    AccessKey key{access.tensor, access.vars};
    auto it = hoisted.find(key);
    if (it == hoisted.end() || it->second != sig.order()) {
      throw ContractViolation("offset of " + access.str() +
                              " was not fully hoisted");
    }
    return partialName(access.tensor, sig.order());
  }

  void emitStatement(const StatementNode& stmt, int depth,
                     std::map<AccessKey, int> hoisted,
                     std::ostringstream& out) {
    // Finish any partial chains not hoisted higher up.
    std::map<std::string, std::set<std::vector<std::string>>> tuples;
    tuples[stmt.output.tensor].insert(stmt.output.vars);
    for (const auto& term : stmt.terms) {
      for (const auto& factor : term.factors) {
        tuples[factor.tensor].insert(factor.vars);
      }
    }
    for (const auto& [tensor, variants] : tuples) {
      AccessKey key{tensor, *variants.begin()};
      int consumed = hoisted.count(key) ? hoisted.at(key) : 0;
      hoisted[key] = emitPartials(key, consumed, depth, out);
    }

    auto termExpr = [&](const StatementTerm& term) {
      std::ostringstream e;
      for (std::size_t f = 0; f < term.factors.size(); ++f) {
        if (f > 0) e << " * ";
        e << term.factors[f].tensor << "[" << offsetOf(term.factors[f], hoisted)
          << "]";
      }
      return e.str();
    };
    std::string outRef =
        stmt.output.tensor + "[" + offsetOf(stmt.output, hoisted) + "]";

    bool guarded = std::any_of(stmt.terms.begin(), stmt.terms.end(),
                               [](const auto& t) { return !t.guard_vars.empty(); });
    if (!guarded) {
      out << indent(depth) << outRef << (stmt.accumulate ? " += " : " = ");
      for (std::size_t t = 0; t < stmt.terms.size(); ++t) {
        if (t > 0) out << " + ";
        out << termExpr(stmt.terms[t]);
      }
      out << ";\n";
      return;
    }
    for (const auto& term : stmt.terms) {
      int d = depth;
      if (!term.guard_vars.empty()) {
        out << indent(d) << "if (";
        for (std::size_t g = 0; g < term.guard_vars.size(); ++g) {
          if (g > 0) out << " && ";
          out << term.guard_vars[g] << " == 0";
        }
        out << ") {\n";
        ++d;
      }
      out << indent(d) << outRef << " += " << termExpr(term) << ";\n";
      if (!term.guard_vars.empty()) {
        out << indent(depth) << "}\n";
      }
    }
  }

  const LoopNest& nest_;
  std::string name_;
  std::set<std::string> bound_;
  bool need_helper_ = false;
};

}  // namespace

std::string emit_c(const LoopNest& nest, const std::string& name) {
  Emitter emitter(nest, name);
  return emitter.emit();
}

}  // namespace symtc
