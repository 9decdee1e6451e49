#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace gdl::testing {

// Node [1,3] of the example grid: L is the concatenation of the lists of
// ab, S1, ca, da, ka, la, ra over the three example documents.
inline const std::vector<std::uint64_t> kExampleL = {1, 2, 3, 1, 1, 1, 2, 3, 2, 3, 3, 1, 2};
inline const std::vector<std::int64_t> kExampleE = {0, 0, 0, 1, 4, 5, 2, 3, 7, 8, 10, 6, 9};

inline const std::vector<std::string> kExampleDocs = {"abracada", "abrakada", "ablakada"};

inline std::vector<bool> random_bits(std::mt19937_64& rng, std::size_t n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<bool> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = coin(rng);
  return v;
}

inline std::size_t scan_rank(const std::vector<bool>& v, bool b, std::size_t k) {
  return static_cast<std::size_t>(std::count(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), b));
}

// 1-based position of the j-th b, or 0.
inline std::size_t scan_select(const std::vector<bool>& v, bool b, std::size_t j) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == b && --j == 0) return i + 1;
  return 0;
}

// Leftmost argmin of a[i..j], 1-based.
template <class T>
std::size_t scan_argmin(const std::vector<T>& a, std::size_t i, std::size_t j) {
  std::size_t best = i;
  for (std::size_t k = i + 1; k <= j; ++k)
    if (a[k - 1] < a[best - 1]) best = k;
  return best;
}

template <class T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace gdl::testing
