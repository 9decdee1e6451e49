#include "gdl/succinct/sparse_bit_vector.hpp"

#include <bit>

#include "gdl/error.hpp"

namespace gdl::succinct {

namespace {

constexpr std::uint32_t kTag = io::make_tag("SPBV");

unsigned low_width(std::size_t t, std::size_t rho) {
  if (rho == 0 || t <= rho) return 0;
  return static_cast<unsigned>(std::bit_width(static_cast<std::uint64_t>(t / rho)) - 1);
}

unsigned ceil_log2(std::uint64_t v) { return v <= 1 ? 0 : static_cast<unsigned>(std::bit_width(v - 1)); }

}  // namespace

SparseBitVector::SparseBitVector(std::size_t universe, const std::vector<std::uint64_t>& positions)
    : t_(universe), rho_(positions.size()), ell_(low_width(universe, positions.size())) {
  low_ = PackedInts(rho_, ell_);
  std::vector<bool> high(rho_ + (t_ >> ell_) + 1, false);
  std::uint64_t prev = 0;
  std::uint64_t mask = (std::uint64_t{1} << ell_) - 1;
  for (std::size_t k = 0; k < rho_; ++k) {
    std::uint64_t p = positions[k];
    if (p < 1 || p > t_) throw BuildError("sparse bitvector position out of universe");
    if (p <= prev) throw BuildError("sparse bitvector positions must increase strictly");
    prev = p;
    std::uint64_t x = p - 1;
    low_.set(k, x & mask);
    high[(x >> ell_) + k] = true;
  }
  high_ = BitVector(high);
}

SparseBitVector SparseBitVector::from_bits(const BitVector& bv) {
  std::vector<std::uint64_t> pos;
  for (std::size_t i = 1; i <= bv.size(); ++i)
    if (bv[i]) pos.push_back(i);
  return SparseBitVector(bv.size(), pos);
}

bool SparseBitVector::get(std::size_t pos) const {
  if (pos < 1 || pos > t_) throw RangeError("sparse bitvector access out of range");
  return rank1(pos) != rank1(pos - 1);
}

std::size_t SparseBitVector::rank1(std::size_t k) const {
  if (k > t_) throw RangeError("rank position out of range");
  if (k == 0 || rho_ == 0) return 0;
  std::uint64_t q = k;  // count x = p - 1 < q
  std::uint64_t hb = q >> ell_;
  std::uint64_t lq = q & ((std::uint64_t{1} << ell_) - 1);
  std::size_t lo = hb == 0 ? 0 : high_.select0(hb) - hb;
  std::size_t hi = high_.select0(hb + 1) - (hb + 1);
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (low_.get(mid) < lq)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

std::size_t SparseBitVector::select1(std::size_t j) const {
  if (j < 1 || j > rho_) throw RangeError("select1 ordinal out of range");
  std::uint64_t hi = high_.select1(j) - j;
  return static_cast<std::size_t>(((hi << ell_) | low_.get(j - 1)) + 1);
}

std::size_t SparseBitVector::select0(std::size_t j) const {
  if (j < 1 || j > t_ - rho_) throw RangeError("select0 ordinal out of range");
  std::size_t lo = 1, hi = t_;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (rank0(mid) >= j)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

std::vector<std::uint64_t> SparseBitVector::positions() const {
  std::vector<std::uint64_t> out;
  out.reserve(rho_);
  for (std::size_t j = 1; j <= rho_; ++j) out.push_back(select1(j));
  return out;
}

std::uint64_t SparseBitVector::size_bound(std::size_t t, std::size_t rho) {
  if (rho == 0) return kSizeSlack + 2 * static_cast<std::uint64_t>(t);
  std::uint64_t ratio = (t + rho - 1) / rho;
  return kSizeFactor * rho * (ceil_log2(ratio) + 2) + kSizeSlack;
}

void SparseBitVector::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u64(t_);
    w.u64(rho_);
    w.u32(ell_);
    low_.serialize(w);
    high_.serialize(w);
  });
}

SparseBitVector SparseBitVector::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  SparseBitVector s;
  s.t_ = r.u64();
  s.rho_ = r.u64();
  s.ell_ = r.u32();
  s.low_ = PackedInts::deserialize(r);
  s.high_ = BitVector::deserialize(r);
  r.expect_end();
  if (s.rho_ > s.t_ || s.ell_ != low_width(s.t_, s.rho_) || s.low_.size() != s.rho_ || s.low_.width() != s.ell_ ||
      s.high_.size() != s.rho_ + (s.t_ >> s.ell_) + 1 || s.high_.count_ones() != s.rho_)
    throw FormatError("sparse bitvector fields inconsistent");
  return s;
}

}  // namespace gdl::succinct
