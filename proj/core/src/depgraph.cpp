#include "symtc/depgraph.hpp"

#include <algorithm>
#include <sstream>

#include "symtc/error.hpp"

namespace symtc {

int IndexDependencyGraph::pos(const std::string& var) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] == var) return static_cast<int>(i);
  }
  throw ContractViolation("unknown index variable '" + var + "'");
}

std::optional<std::string> IndexDependencyGraph::parentOf(
    const std::string& var) const {
  auto it = parent.find(var);
  if (it == parent.end()) return std::nullopt;
  return it->second;
}

std::string IndexDependencyGraph::chainRoot(const std::string& var) const {
  std::string v = var;
  for (auto it = parent.find(v); it != parent.end(); it = parent.find(v)) {
    v = it->second;
  }
  return v;
}

std::vector<std::string> IndexDependencyGraph::chain(
    const std::string& var) const {
  std::vector<std::string> result{var};
  for (auto it = parent.find(result.back()); it != parent.end();
       it = parent.find(result.back())) {
    result.push_back(it->second);
  }
  return result;
}

bool IndexDependencyGraph::orderKnown(const std::string& a,
                                      const std::string& b) const {
  auto ca = chain(a);
  if (std::find(ca.begin(), ca.end(), b) != ca.end()) return true;
  auto cb = chain(b);
  return std::find(cb.begin(), cb.end(), a) != cb.end();
}

std::string IndexDependencyGraph::str() const {
  std::ostringstream out;
  bool any = false;
  for (const auto& v : vars) {
    auto p = parentOf(v);
    if (p) {
      out << v << " -> " << *p << "\n";
      any = true;
    }
  }
  if (!any) out << "(none)\n";
  return out.str();
}

namespace {

class Builder {
public:
  explicit Builder(IndexDependencyGraph& g) : g_(g) {}

  // Records that the relative order of a and b must be distinguished. The
  // edge always runs from the later variable (child) to the earlier one, so
  // chains stay monotone in iteration order.
  void link(const std::string& a, const std::string& b) {
    if (a == b) return;
    const std::string& child = g_.pos(a) > g_.pos(b) ? a : b;
    const std::string& wanted = g_.pos(a) > g_.pos(b) ? b : a;
    auto existing = g_.parentOf(child);
    if (!existing) {
      g_.parent[child] = wanted;
      return;
    }
    if (*existing == wanted) return;
    // Conflict: the later of the two candidate parents stays the child's
    // parent; the chain root above it takes over ordering against the
    // earlier one.
    const std::string& later =
        g_.pos(*existing) > g_.pos(wanted) ? *existing : wanted;
    const std::string& earlier =
        g_.pos(*existing) > g_.pos(wanted) ? wanted : *existing;
    g_.parent[child] = later;
    link(g_.chainRoot(later), earlier);
  }

private:
  IndexDependencyGraph& g_;
};

}  // namespace

IndexDependencyGraph build_dependency_graph(
    const std::vector<std::string>& vars,
    const std::vector<SymmetryPartition>& input_syms) {
  IndexDependencyGraph g;
  g.vars = vars;
  Builder builder(g);
  for (const auto& sym : input_syms) {
    for (const auto& part : sym.parts()) {
      if (part.size() < 2) continue;
      std::vector<std::string> sorted = part;
      std::sort(sorted.begin(), sorted.end(),
                [&](const auto& a, const auto& b) {
                  return g.pos(a) < g.pos(b);
                });
      for (std::size_t m = 1; m < sorted.size(); ++m) {
        builder.link(sorted[m], sorted[m - 1]);
      }
    }
  }
  return g;
}

std::vector<std::pair<std::string, std::string>> unorderedSymmetricPairs(
    const IndexDependencyGraph& g,
    const std::vector<SymmetryPartition>& input_syms) {
  std::vector<std::pair<std::string, std::string>> missing;
  for (const auto& sym : input_syms) {
    for (const auto& part : sym.parts()) {
      for (std::size_t i = 0; i < part.size(); ++i) {
        for (std::size_t j = i + 1; j < part.size(); ++j) {
          if (!g.orderKnown(part[i], part[j])) {
            auto pair = std::make_pair(part[i], part[j]);
            if (std::find(missing.begin(), missing.end(), pair) ==
                missing.end()) {
              missing.push_back(pair);
            }
          }
        }
      }
    }
  }
  return missing;
}

}  // namespace symtc
