#include "gdl/succinct/rmq.hpp"

#include <bit>

#include "gdl/error.hpp"

namespace gdl::succinct {

namespace {
constexpr std::uint32_t kTag = io::make_tag("BRMQ");
constexpr std::size_t kNone = static_cast<std::size_t>(-1);
}  // namespace

BaseRMQ::BaseRMQ(const std::vector<std::int64_t>& values, bool keep_values) : u_(values.size()) {
  std::vector<std::size_t> parent(u_, kNone), stack;
  for (std::size_t i = 0; i < u_; ++i) {
    std::size_t last = kNone;
    while (!stack.empty() && values[stack.back()] > values[i]) {
      last = stack.back();
      stack.pop_back();
    }
    if (last != kNone) parent[last] = i;
    parent[i] = stack.empty() ? kNone : stack.back();
    stack.push_back(i);
  }
  std::vector<std::uint64_t> depth(u_, 0);
  std::vector<bool> known(u_, false);
  std::vector<std::size_t> path;
  for (std::size_t i = 0; i < u_; ++i) {
    std::size_t x = i;
    while (x != kNone && !known[x]) {
      path.push_back(x);
      x = parent[x];
    }
    std::uint64_t d = x == kNone ? 0 : depth[x] + 1;
    while (!path.empty()) {
      std::size_t y = path.back();
      path.pop_back();
      depth[y] = d++;
      known[y] = true;
    }
  }
  depth_ = PackedInts::from_values(depth);
  block_ = std::max<std::size_t>(1, std::bit_width(static_cast<std::uint64_t>(u_)));
  build_tables();
  if (keep_values) values_ = values;
}

std::size_t BaseRMQ::scan(std::size_t lo, std::size_t hi) const {
  std::size_t best = lo;
  for (std::size_t k = lo + 1; k <= hi; ++k) best = shallower(best, k);
  return best;
}

void BaseRMQ::build_tables() {
  table_.clear();
  if (u_ == 0) return;
  std::size_t nb = (u_ + block_ - 1) / block_;
  unsigned w = std::max(1u, bit_width_of(u_ - 1));
  PackedInts level(nb, w);
  for (std::size_t b = 0; b < nb; ++b) level.set(b, scan(b * block_, std::min(u_, (b + 1) * block_) - 1));
  table_.push_back(std::move(level));
  for (std::size_t span = 2; span <= nb; span *= 2) {
    const auto& prev = table_.back();
    PackedInts next(nb - span + 1, w);
    for (std::size_t b = 0; b + span <= nb; ++b) next.set(b, shallower(prev.get(b), prev.get(b + span / 2)));
    table_.push_back(std::move(next));
  }
}

std::size_t BaseRMQ::rmq(std::size_t i, std::size_t j) const {
  if (i < 1 || i > j || j > u_) throw RangeError("rmq range invalid");
  std::size_t lo = i - 1, hi = j - 1;
  std::size_t bl = lo / block_, bh = hi / block_;
  if (bl == bh || bl + 1 == bh) return scan(lo, hi) + 1;
  std::size_t best = scan(lo, (bl + 1) * block_ - 1);
  std::size_t first = bl + 1, last = bh - 1;
  unsigned k = static_cast<unsigned>(std::bit_width(last - first + 1) - 1);
  best = shallower(best, table_[k].get(first));
  best = shallower(best, table_[k].get(last + 1 - (std::size_t{1} << k)));
  best = shallower(best, scan(bh * block_, hi));
  return best + 1;
}

std::int64_t BaseRMQ::value(std::size_t i) const {
  if (!values_) throw RangeError("rmq values not retained");
  if (i < 1 || i > u_) throw RangeError("rmq value position out of range");
  return (*values_)[i - 1];
}

std::uint64_t BaseRMQ::size_in_bits() const {
  std::uint64_t bits = depth_.size_in_bits();
  for (const auto& t : table_) bits += t.size_in_bits();
  if (values_) bits += 64 * values_->size();
  return bits;
}

void BaseRMQ::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    w.u64(u_);
    depth_.serialize(w);
  });
}

BaseRMQ BaseRMQ::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  BaseRMQ q;
  q.u_ = r.u64();
  q.depth_ = PackedInts::deserialize(r);
  r.expect_end();
  if (q.depth_.size() != q.u_) throw FormatError("rmq depth length mismatch");
  q.block_ = std::max<std::size_t>(1, std::bit_width(static_cast<std::uint64_t>(q.u_)));
  q.build_tables();
  return q;
}

}  // namespace gdl::succinct
