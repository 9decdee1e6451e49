#include "gdl/cli/container.hpp"

#include <array>

#include "gdl/error.hpp"
#include "gdl/grammar/builders.hpp"

namespace gdl::cli {

namespace {

constexpr std::array<std::uint32_t, 4> kSections = {io::make_tag("META"), io::make_tag("GRAM"),
                                                    io::make_tag("GRID"), io::make_tag("DOCL")};

}  // namespace

IndexBundle build_index(const collection::Collection& c, const BuildOptions& opt) {
  if (c.docs.empty()) throw BuildError("collection has no documents");
  if (opt.ms_len < 1) throw DomainError("metasymbol length must be at least 1");
  IndexBundle b;
  b.grammar = std::make_shared<const grammar::Grammar>(c.script ? grammar::build_repetitive(*c.script, c.base, opt.ms_len)
                                                                : grammar::build_generic(c.docs, opt.ms_len));
  grid::GridOptions gopt;
  gopt.epsilon = opt.epsilon;
  gopt.tau = opt.tau;
  b.pattern = std::make_shared<const index::PatternIndex>(b.grammar, gopt);
  b.docs = std::make_shared<const doclist::DocIndex>(b.pattern, opt.layout);
  return b;
}

std::string save_container(const IndexBundle& b) {
  std::array<std::string, 4> payload;
  payload[0] = b.meta;
  {
    io::Writer w;
    b.grammar->serialize(w);
    payload[1] = w.take();
  }
  {
    io::Writer w;
    b.pattern->serialize(w);
    payload[2] = w.take();
  }
  {
    io::Writer w;
    b.docs->serialize(w);
    payload[3] = w.take();
  }
  io::Writer out;
  out.bytes(std::string_view(kMagic, 8));
  out.u32(kContainerVersion);
  out.u32(static_cast<std::uint32_t>(payload.size()));
  for (std::size_t k = 0; k < payload.size(); ++k) {
    out.u32(kSections[k]);
    out.u64(payload[k].size());
    out.u64(io::fnv1a64(payload[k]));
    out.bytes(payload[k]);
  }
  return out.take();
}

IndexBundle load_container(std::string_view bytes) {
  io::Reader r(bytes);
  if (r.remaining() < 8 || r.bytes(8) != std::string_view(kMagic, 8)) throw FormatError("not an index container");
  if (r.u32() != kContainerVersion) throw FormatError("unsupported container version");
  if (r.u32() != kSections.size()) throw FormatError("unexpected section count");
  std::array<std::string_view, 4> payload;
  for (std::size_t k = 0; k < kSections.size(); ++k) {
    if (r.u32() != kSections[k]) throw FormatError("unexpected section");
    auto len = r.u64();
    auto sum = r.u64();
    if (len > r.remaining()) throw FormatError("truncated section");
    payload[k] = r.bytes(len);
    if (io::fnv1a64(payload[k]) != sum) throw FormatError("section checksum mismatch");
  }
  r.expect_end();

  IndexBundle b;
  b.meta = std::string(payload[0]);
  io::Reader gram(payload[1]);
  b.grammar = std::make_shared<const grammar::Grammar>(grammar::Grammar::deserialize(gram));
  gram.expect_end();
  io::Reader grid(payload[2]);
  b.pattern = index::PatternIndex::deserialize(grid, b.grammar);
  grid.expect_end();
  io::Reader docl(payload[3]);
  b.docs = doclist::DocIndex::deserialize(docl, b.pattern);
  docl.expect_end();
  return b;
}

}  // namespace gdl::cli
