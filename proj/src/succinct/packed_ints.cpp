#include "gdl/succinct/packed_ints.hpp"

#include <algorithm>
#include <bit>

#include "gdl/error.hpp"

namespace gdl::succinct {

namespace {
constexpr std::uint32_t kTag = io::make_tag("PINT");
}

unsigned bit_width_of(std::uint64_t v) { return static_cast<unsigned>(std::bit_width(v)); }

PackedInts::PackedInts(std::size_t n, unsigned width) : n_(n), width_(width) {
  if (width > 64) throw BuildError("packed width above 64");
  words_.assign((n * width + 63) / 64, 0);
}

PackedInts PackedInts::from_values(const std::vector<std::uint64_t>& values) {
  std::uint64_t mx = 0;
  for (auto v : values) mx = std::max(mx, v);
  PackedInts p(values.size(), bit_width_of(mx));
  for (std::size_t i = 0; i < values.size(); ++i) p.set(i, values[i]);
  return p;
}

std::uint64_t PackedInts::get(std::size_t i) const {
  if (i >= n_) throw RangeError("packed index out of range");
  if (width_ == 0) return 0;
  std::size_t bit = i * width_;
  std::size_t w = bit / 64, off = bit % 64;
  std::uint64_t mask = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
  std::uint64_t v = words_[w] >> off;
  if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
  return v & mask;
}

void PackedInts::set(std::size_t i, std::uint64_t v) {
  if (i >= n_) throw RangeError("packed index out of range");
  if (width_ == 0) {
    if (v != 0) throw RangeError("value does not fit packed width");
    return;
  }
  std::uint64_t mask = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
  if ((v & ~mask) != 0) throw RangeError("value does not fit packed width");
  std::size_t bit = i * width_;
  std::size_t w = bit / 64, off = bit % 64;
  words_[w] = (words_[w] & ~(mask << off)) | (v << off);
  if (off + width_ > 64) {
    std::size_t spill = off + width_ - 64;
    std::uint64_t hi_mask = (std::uint64_t{1} << spill) - 1;
    words_[w + 1] = (words_[w + 1] & ~hi_mask) | (v >> (64 - off));
  }
}

void PackedInts::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u64(n_);
    w.u32(width_);
    w.u64_vector(std::span<const std::uint64_t>(words_));
  });
}

PackedInts PackedInts::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  PackedInts p;
  p.n_ = r.u64();
  p.width_ = r.u32();
  if (p.width_ > 64) throw FormatError("packed width above 64");
  p.words_ = r.u64_vector();
  if (p.n_ > (std::uint64_t{1} << 58) || p.words_.size() != (p.n_ * p.width_ + 63) / 64)
    throw FormatError("packed word count mismatch");
  r.expect_end();
  return p;
}

}  // namespace gdl::succinct
