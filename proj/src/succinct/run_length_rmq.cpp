#include "gdl/succinct/run_length_rmq.hpp"

#include "gdl/error.hpp"

namespace gdl::succinct {

namespace {
constexpr std::uint32_t kTag = io::make_tag("RLMQ");
}

RunLengthRMQ::RunLengthRMQ(const std::vector<std::int64_t>& e) {
  std::vector<std::uint64_t> heads;
  std::vector<std::int64_t> head_values;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k == 0 || e[k] < e[k - 1]) {
      heads.push_back(k + 1);
      head_values.push_back(e[k]);
    }
  }
  f_ = SparseBitVector(e.size(), heads);
  inner_ = BaseRMQ(head_values);
}

RunCandidates RunLengthRMQ::candidates(std::size_t i, std::size_t j) const {
  if (i < 1 || i > j || j > size()) throw RangeError("run-length rmq range invalid");
  RunCandidates c;
  c.left = i;
  std::size_t ip = f_.rank1(i - 1) + 1;
  std::size_t jp = f_.rank1(j);
  if (ip <= jp) c.head = f_.select1(inner_.rmq(ip, jp));
  return c;
}

void RunLengthRMQ::serialize(io::Writer& out) const {
  out.blob(kTag, 1, [&](io::Writer& w) {
    f_.serialize(w);
    inner_.serialize(w);
  });
}

RunLengthRMQ RunLengthRMQ::deserialize(io::Reader& in) {
  auto r = in.blob(kTag, 1);
  RunLengthRMQ q;
  q.f_ = SparseBitVector::deserialize(r);
  q.inner_ = BaseRMQ::deserialize(r);
  r.expect_end();
  if (q.inner_.size() != q.f_.count_ones()) throw FormatError("run-length rmq head count mismatch");
  if (q.f_.size() > 0 && !q.f_.get(1)) throw FormatError("run-length rmq must start with a head");
  return q;
}

}  // namespace gdl::succinct
