#include "gdl/succinct/bit_vector.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "gdl/error.hpp"

namespace gdl::succinct {

namespace {

constexpr std::uint32_t kTag = io::make_tag("BITV");

// Position (0-based) of the j-th one (1-based j) inside a word.
unsigned select_in_word(std::uint64_t w, unsigned j) {
  for (unsigned i = 1; i < j; ++i) w &= w - 1;
  return static_cast<unsigned>(std::countr_zero(w));
}

}  // namespace

BitVector::BitVector(std::size_t length) : words_((length + 63) / 64, 0), size_(length) { rebuild(); }

BitVector::BitVector(const std::vector<bool>& bits) : words_((bits.size() + 63) / 64, 0), size_(bits.size()) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  rebuild();
}

BitVector BitVector::from_string(std::string_view bits) {
  std::vector<bool> v;
  v.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') throw BuildError("bit string must contain only 0 and 1");
    v.push_back(c == '1');
  }
  return BitVector(v);
}

bool BitVector::get(std::size_t pos) const {
  if (pos < 1 || pos > size_) throw RangeError("bitvector access out of range");
  std::size_t i = pos - 1;
  return (words_[i / 64] >> (i % 64)) & 1;
}

void BitVector::set(std::size_t pos, bool value) {
  if (pos < 1 || pos > size_) throw RangeError("bitvector set out of range");
  std::size_t i = pos - 1;
  auto mask = std::uint64_t{1} << (i % 64);
  if (value)
    words_[i / 64] |= mask;
  else
    words_[i / 64] &= ~mask;
  directory_ok_ = false;
}

void BitVector::rebuild() {
  std::size_t nsuper = (words_.size() + kWordsPerSuper - 1) / kWordsPerSuper;
  super_.assign(nsuper + 1, 0);
  std::uint64_t acc = 0;
  for (std::size_t s = 0; s < nsuper; ++s) {
    super_[s] = acc;
    std::size_t end = std::min(words_.size(), (s + 1) * kWordsPerSuper);
    for (std::size_t w = s * kWordsPerSuper; w < end; ++w) acc += std::popcount(words_[w]);
  }
  super_[nsuper] = acc;
  directory_ok_ = true;
}

void BitVector::check_directory() const {
  if (!directory_ok_) throw std::logic_error("bitvector directory is stale; call rebuild()");
}

std::size_t BitVector::rank1(std::size_t k) const {
  if (k > size_) throw RangeError("rank position out of range");
  check_directory();
  if (k == 0) return 0;
  std::size_t word = k / 64;
  std::size_t s = word / kWordsPerSuper;
  std::uint64_t r = super_[s];
  for (std::size_t w = s * kWordsPerSuper; w < word; ++w) r += std::popcount(words_[w]);
  if (k % 64 != 0) r += std::popcount(words_[word] & ((std::uint64_t{1} << (k % 64)) - 1));
  return static_cast<std::size_t>(r);
}

std::size_t BitVector::select1(std::size_t j) const {
  check_directory();
  std::size_t total = count_ones();
  if (j < 1 || j > total) throw RangeError("select1 ordinal out of range");
  // Last superblock whose prefix count is < j.
  auto it = std::lower_bound(super_.begin(), super_.end(), static_cast<std::uint64_t>(j));
  std::size_t s = static_cast<std::size_t>(it - super_.begin()) - 1;
  std::size_t need = j - static_cast<std::size_t>(super_[s]);
  for (std::size_t w = s * kWordsPerSuper;; ++w) {
    auto c = static_cast<std::size_t>(std::popcount(words_[w]));
    if (need <= c) return w * 64 + select_in_word(words_[w], static_cast<unsigned>(need)) + 1;
    need -= c;
  }
}

std::size_t BitVector::select0(std::size_t j) const {
  check_directory();
  std::size_t total = size_ - count_ones();
  if (j < 1 || j > total) throw RangeError("select0 ordinal out of range");
  // Zeros before superblock s are s*512 - super_[s] (capped at size for the tail).
  std::size_t lo = 0, hi = super_.size() - 1;
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    std::size_t zeros = mid * kWordsPerSuper * 64 - static_cast<std::size_t>(super_[mid]);
    if (zeros < j)
      lo = mid;
    else
      hi = mid;
  }
  std::size_t need = j - (lo * kWordsPerSuper * 64 - static_cast<std::size_t>(super_[lo]));
  for (std::size_t w = lo * kWordsPerSuper;; ++w) {
    std::uint64_t inv = ~words_[w];
    if (w == words_.size() - 1 && size_ % 64 != 0) inv &= (std::uint64_t{1} << (size_ % 64)) - 1;
    auto c = static_cast<std::size_t>(std::popcount(inv));
    if (need <= c) return w * 64 + select_in_word(inv, static_cast<unsigned>(need)) + 1;
    need -= c;
  }
}

std::size_t BitVector::count_ones() const {
  if (directory_ok_) return static_cast<std::size_t>(super_.empty() ? 0 : super_.back());
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::uint64_t BitVector::size_in_bits() const { return 64 * words_.size() + 64 * super_.size(); }

std::string BitVector::to_string() const {
  std::string s;
  s.reserve(size_);
  for (std::size_t i = 1; i <= size_; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

void BitVector::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u64(size_);
    w.u64_vector(std::span<const std::uint64_t>(words_));
  });
}

BitVector BitVector::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  BitVector bv;
  bv.size_ = r.u64();
  bv.words_ = r.u64_vector();
  if (bv.words_.size() != (bv.size_ + 63) / 64) throw FormatError("bitvector word count mismatch");
  if (bv.size_ % 64 != 0 && !bv.words_.empty() && (bv.words_.back() >> (bv.size_ % 64)) != 0)
    throw FormatError("bitvector has bits beyond its length");
  r.expect_end();
  bv.rebuild();
  return bv;
}

}  // namespace gdl::succinct
