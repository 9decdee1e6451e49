#include "gdl/collection/version_tree.hpp"

#include "gdl/error.hpp"

namespace gdl::collection {

VersionTree::VersionTree(std::vector<std::uint32_t> parent) : parent_(std::move(parent)) {
  std::uint32_t n = size();
  if (n == 0) throw BuildError("version tree needs at least one node");
  std::vector<std::vector<std::uint32_t>> children(n);
  for (std::uint32_t v = 1; v < n; ++v) {
    if (parent_[v] >= v) throw BuildError("version parent must be an earlier node");
    children[parent_[v]].push_back(v);
  }
  pre_.assign(n, 0);
  size_.assign(n, 1);
  std::uint32_t next = 1;
  std::vector<std::uint32_t> stack{0};
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    pre_[v] = next++;
    for (auto it = children[v].rbegin(); it != children[v].rend(); ++it) stack.push_back(*it);
  }
  for (std::uint32_t v = n; v-- > 1;) size_[parent_[v]] += size_[v];
}

VersionTree VersionTree::random(std::mt19937_64& rng, std::uint32_t nodes) {
  std::vector<std::uint32_t> parent(nodes, 0);
  for (std::uint32_t v = 1; v < nodes; ++v) parent[v] = static_cast<std::uint32_t>(rng() % v);
  return VersionTree(std::move(parent));
}

VersionTree VersionTree::path(std::uint32_t nodes) {
  std::vector<std::uint32_t> parent(nodes, 0);
  for (std::uint32_t v = 1; v < nodes; ++v) parent[v] = v - 1;
  return VersionTree(std::move(parent));
}

std::pair<std::uint32_t, std::uint32_t> VersionTree::subtree_range(std::uint32_t v) const {
  return {pre_.at(v), pre_.at(v) + size_.at(v) - 1};
}

}  // namespace gdl::collection
