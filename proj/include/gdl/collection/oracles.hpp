#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gdl/collection/collection.hpp"

namespace gdl::collection {

// Brute-force answers over the explicit documents. Overlapping occurrences
// count separately.
std::vector<std::uint32_t> naive_list(const Collection& c, std::string_view p);
std::uint64_t naive_count(const Collection& c, std::string_view p);
std::vector<Occurrence> naive_occurrences(const Collection& c, std::string_view p);

// A second, independently written scan used to cross-check the first.
std::vector<Occurrence> naive_occurrences_bytewise(const Collection& c, std::string_view p);

}  // namespace gdl::collection
