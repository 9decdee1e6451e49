#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace gdl::collection {

// Rooted tree of D versions. Node 0 is the root; the parent of node v > 0 is
// an earlier node. Documents are numbered by preorder, so every subtree is a
// contiguous document range.
class VersionTree {
 public:
  explicit VersionTree(std::vector<std::uint32_t> parent);
  static VersionTree random(std::mt19937_64& rng, std::uint32_t nodes);
  static VersionTree path(std::uint32_t nodes);

  std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }
  std::uint32_t parent(std::uint32_t v) const { return parent_.at(v); }
  // Preorder number of v, 1-based: the document id of that version.
  std::uint32_t document(std::uint32_t v) const { return pre_.at(v); }
  // Documents of the subtree rooted at v.
  std::pair<std::uint32_t, std::uint32_t> subtree_range(std::uint32_t v) const;

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> pre_;
  std::vector<std::uint32_t> size_;
};

}  // namespace gdl::collection
