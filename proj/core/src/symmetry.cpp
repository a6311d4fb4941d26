#include "symtc/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "symtc/error.hpp"
#include "symtc/expr.hpp"

namespace symtc {

namespace {

int positionIn(const std::vector<std::string>& order, const std::string& var) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == var) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

SymmetryPartition::SymmetryPartition(
    std::vector<std::vector<std::string>> parts,
    std::vector<std::string> universe)
    : parts_(std::move(parts)), universe_(std::move(universe)) {
  std::set<std::string> seen;
  for (auto& part : parts_) {
    if (part.empty()) throw ValidationError("symmetry partition: empty part");
    for (const auto& v : part) {
      if (positionIn(universe_, v) < 0) {
        throw ValidationError("symmetry partition: variable '" + v +
                              "' is not in the universe");
      }
      if (!seen.insert(v).second) {
        throw ValidationError("symmetry partition: variable '" + v +
                              "' appears in two parts");
      }
    }
  }
  if (seen.size() != universe_.size()) {
    throw ValidationError("symmetry partition: parts do not cover all variables");
  }
  auto pos = [this](const std::string& v) { return positionIn(universe_, v); };
  for (auto& part : parts_) {
    std::sort(part.begin(), part.end(),
              [&](const auto& a, const auto& b) { return pos(a) < pos(b); });
  }
  std::sort(parts_.begin(), parts_.end(), [&](const auto& a, const auto& b) {
    return pos(a.front()) < pos(b.front());
  });
}

SymmetryPartition SymmetryPartition::singletons(std::vector<std::string> vars) {
  std::vector<std::vector<std::string>> parts;
  parts.reserve(vars.size());
  for (const auto& v : vars) parts.push_back({v});
  return SymmetryPartition(std::move(parts), std::move(vars));
}

SymmetryPartition SymmetryPartition::onePart(std::vector<std::string> vars) {
  std::vector<std::vector<std::string>> parts{vars};
  return SymmetryPartition(std::move(parts), std::move(vars));
}

int SymmetryPartition::partOf(const std::string& var) const {
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    for (const auto& v : parts_[p]) {
      if (v == var) return static_cast<int>(p);
    }
  }
  return -1;
}

bool SymmetryPartition::samePart(const std::string& a,
                                 const std::string& b) const {
  int pa = partOf(a);
  return pa >= 0 && pa == partOf(b);
}

bool SymmetryPartition::trivial() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const auto& p) { return p.size() == 1; });
}

std::string SymmetryPartition::str() const {
  auto sorted = parts_;
  for (auto& part : sorted) std::sort(part.begin(), part.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  std::ostringstream out;
  for (const auto& part : sorted) {
    out << '{';
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (i > 0) out << ',';
      out << part[i];
    }
    out << '}';
  }
  return out.str();
}

SymmetryPartition refine(const SymmetryPartition& s1,
                         const SymmetryPartition& s2) {
  std::vector<std::vector<std::string>> result;
  for (const auto& part : s1.parts()) {
    // Bucket members by their part in s2; all variables absent from s2 stay
    // together in one bucket.
    std::map<int, std::vector<std::string>> buckets;
    for (const auto& v : part) buckets[s2.partOf(v)].push_back(v);
    for (auto& [key, members] : buckets) result.push_back(std::move(members));
  }
  return SymmetryPartition(std::move(result), s1.universe());
}

int TensorSignature::dimOf(const std::string& var) const {
  int d = positionIn(index_vars, var);
  if (d < 0) {
    throw ContractViolation("tensor " + name + " has no index variable '" +
                            var + "'");
  }
  return d;
}

Coord TensorSignature::extentOf(const std::string& var) const {
  return extents.at(static_cast<std::size_t>(dimOf(var)));
}

bool TensorSignature::extentsKnown() const {
  if (extents.size() != index_vars.size()) return false;
  return std::all_of(extents.begin(), extents.end(),
                     [](Coord n) { return n >= 0; });
}

void TensorSignature::validate() const {
  std::set<std::string> seen(index_vars.begin(), index_vars.end());
  if (seen.size() != index_vars.size()) {
    throw ValidationError("tensor " + name + ": repeated index variable");
  }
  if (symmetry.universe() != index_vars) {
    throw ValidationError("tensor " + name +
                          ": symmetry universe does not match index variables");
  }
  if (!extents.empty() && extents.size() != index_vars.size()) {
    throw ValidationError("tensor " + name + ": extents length mismatch");
  }
  if (extentsKnown()) {
    for (const auto& part : symmetry.parts()) {
      Coord n = extentOf(part.front());
      for (const auto& v : part) {
        if (extentOf(v) != n) {
          throw ValidationError(
              "tensor " + name + ": dimensions " + part.front() + " and " + v +
              " share a symmetry part but have extents " + std::to_string(n) +
              " and " + std::to_string(extentOf(v)));
        }
      }
    }
  }
}

TensorSignature withExtents(
    TensorSignature sig,
    std::span<const std::pair<std::string, Coord>> extents) {
  sig.extents.assign(sig.index_vars.size(), -1);
  for (std::size_t d = 0; d < sig.index_vars.size(); ++d) {
    for (const auto& [var, n] : extents) {
      if (var == sig.index_vars[d]) sig.extents[d] = n;
    }
    if (sig.extents[d] < 0) {
      throw ValidationError("tensor " + sig.name + ": no extent for variable '" +
                            sig.index_vars[d] + "'");
    }
  }
  sig.validate();
  return sig;
}

namespace {

void checkCoords(std::span<const Coord> coords, const TensorSignature& sig) {
  if (coords.size() != sig.index_vars.size()) {
    throw ContractViolation("tensor " + sig.name + ": expected " +
                            std::to_string(sig.index_vars.size()) +
                            " coordinates, got " +
                            std::to_string(coords.size()));
  }
  if (sig.extentsKnown()) {
    for (std::size_t d = 0; d < coords.size(); ++d) {
      if (coords[d] < 0 || coords[d] >= sig.extents[d]) {
        throw ContractViolation(
            "tensor " + sig.name + ": coordinate " + std::to_string(coords[d]) +
            " out of bounds for dimension " + sig.index_vars[d] + " (extent " +
            std::to_string(sig.extents[d]) + ")");
      }
    }
  }
}

}  // namespace

bool is_canonical(std::span<const Coord> coords, const TensorSignature& sig) {
  checkCoords(coords, sig);
  for (const auto& part : sig.symmetry.parts()) {
    Coord prev = -1;
    bool first = true;
    for (const auto& v : part) {
      Coord c = coords[static_cast<std::size_t>(sig.dimOf(v))];
      if (!first && c > prev) return false;
      prev = c;
      first = false;
    }
  }
  return true;
}

Coords canonicalize(std::span<const Coord> coords, const TensorSignature& sig) {
  checkCoords(coords, sig);
  Coords result(coords.begin(), coords.end());
  for (const auto& part : sig.symmetry.parts()) {
    if (part.size() < 2) continue;
    Coords values;
    values.reserve(part.size());
    for (const auto& v : part) {
      values.push_back(coords[static_cast<std::size_t>(sig.dimOf(v))]);
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    for (std::size_t i = 0; i < part.size(); ++i) {
      result[static_cast<std::size_t>(sig.dimOf(part[i]))] = values[i];
    }
  }
  return result;
}

SymmetryPartition gcs(const TensorStatement& stmt,
                      const std::vector<TensorSignature>& inputs) {
  checkExtentConsistency(stmt, inputs);
  SymmetryPartition g = SymmetryPartition::onePart(stmt.var_order);
  for (const auto& sig : inputs) {
    g = refine(g, sig.symmetry);
  }
  g = refine(g, SymmetryPartition::onePart(stmt.output.vars));
  return g;
}

SymmetryPartition output_symmetry(const TensorStatement& stmt,
                                  const SymmetryPartition& g) {
  return refine(SymmetryPartition::onePart(stmt.output.vars), g);
}

}  // namespace symtc
