#include "gdl/collection/oracles.hpp"

namespace gdl::collection {

std::vector<Occurrence> naive_occurrences(const Collection& c, std::string_view p) {
  std::vector<Occurrence> out;
  if (p.empty()) return out;
  auto starts = c.boundaries();
  for (std::size_t d = 0; d < c.docs.size(); ++d) {
    std::string_view text = c.docs[d];
    for (auto at = text.find(p); at != std::string_view::npos; at = text.find(p, at + 1))
      out.push_back({static_cast<std::uint32_t>(d + 1), at + 1, starts[d] + at});
  }
  return out;
}

std::vector<Occurrence> naive_occurrences_bytewise(const Collection& c, std::string_view p) {
  std::vector<Occurrence> out;
  std::uint64_t global = 0;
  for (std::size_t d = 0; d < c.docs.size(); ++d) {
    const std::string& t = c.docs[d];
    for (std::size_t i = 0; !p.empty() && i + p.size() <= t.size(); ++i) {
      std::size_t k = 0;
      while (k < p.size() && t[i + k] == p[k]) ++k;
      if (k == p.size()) out.push_back({static_cast<std::uint32_t>(d + 1), i + 1, global + i + 1});
    }
    global += t.size();
  }
  return out;
}

std::vector<std::uint32_t> naive_list(const Collection& c, std::string_view p) {
  std::vector<std::uint32_t> out;
  if (p.empty()) return out;
  for (std::size_t d = 0; d < c.docs.size(); ++d)
    if (c.docs[d].find(p) != std::string::npos) out.push_back(static_cast<std::uint32_t>(d + 1));
  return out;
}

std::uint64_t naive_count(const Collection& c, std::string_view p) { return naive_occurrences(c, p).size(); }

}  // namespace gdl::collection
