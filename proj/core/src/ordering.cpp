#include "symtc/ordering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "symtc/error.hpp"

namespace symtc {

int OrderingNode::focusIndex() const {
  for (std::size_t i = 0; i < placed.size(); ++i) {
    if (placed[i] == focus) return static_cast<int>(i);
  }
  throw ContractViolation("ordering node: focus missing from placed list");
}

int OrderingTree::nodeCount() const {
  int count = 0;
  std::function<void(const OrderingNode&)> walk = [&](const OrderingNode& n) {
    ++count;
    for (const auto& c : n.children) walk(c);
  };
  walk(root);
  return count;
}

std::string OrderingTree::listing() const {
  std::ostringstream out;
  std::function<void(const OrderingNode&, int)> walk = [&](const OrderingNode& n,
                                                           int depth) {
    for (int i = 0; i < depth; ++i) out << "  ";
    out << '[';
    for (std::size_t i = 0; i < n.placed.size(); ++i) {
      if (i > 0) out << ", ";
      out << n.placed[i];
    }
    out << "]\n";
    for (const auto& c : n.children) walk(c, depth + 1);
  };
  walk(root, 0);
  return out.str();
}

namespace {

// An ordering is non-canonical relative to the gcs when, for some gcs part,
// a variable with an earlier iteration position is constrained strictly
// smaller than (placed strictly left of) a same-part variable with a later
// position.
bool nonCanonical(const std::vector<std::string>& placed,
                  const SymmetryPartition& gcs,
                  const IndexDependencyGraph& graph) {
  for (std::size_t a = 0; a < placed.size(); ++a) {
    for (std::size_t b = a + 1; b < placed.size(); ++b) {
      if (gcs.samePart(placed[a], placed[b]) &&
          graph.pos(placed[a]) < graph.pos(placed[b])) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace

OrderingTree build_ordering_tree(const IndexDependencyGraph& graph,
                                 const SymmetryPartition& gcs) {
  if (graph.vars.empty()) {
    throw ContractViolation("ordering tree requires at least one variable");
  }
  OrderingTree tree;
  tree.level_vars = graph.vars;

  tree.root.focus = graph.vars.front();
  tree.root.placed = {graph.vars.front()};

  // The node whose focus is a given variable, along the current path.
  std::map<std::string, const OrderingNode*> focusNode;

  std::function<void(OrderingNode&, std::size_t)> expand =
      [&](OrderingNode& node, std::size_t level) {
        focusNode[node.focus] = &node;
        if (level + 1 < graph.vars.size()) {
          const std::string& next = graph.vars[level + 1];
          auto parent = graph.parentOf(next);
          std::vector<std::vector<std::string>> candidates;
          if (!parent) {
            candidates.push_back({next});
          } else {
            const OrderingNode* parentNode = focusNode.at(*parent);
            const auto& base = parentNode->placed;
            for (std::size_t at = 0; at <= base.size(); ++at) {
              std::vector<std::string> placed = base;
              placed.insert(placed.begin() + static_cast<std::ptrdiff_t>(at),
                            next);
              candidates.push_back(std::move(placed));
            }
          }
          for (auto& placed : candidates) {
            if (nonCanonical(placed, gcs, graph)) continue;
            OrderingNode child;
            child.focus = next;
            child.placed = std::move(placed);
            node.children.push_back(std::move(child));
          }
          for (auto& child : node.children) expand(child, level + 1);
        }
        focusNode.erase(node.focus);
      };
  expand(tree.root, 0);
  return tree;
}

}  // namespace symtc
