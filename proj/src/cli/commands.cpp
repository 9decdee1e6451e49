#include "gdl/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "gdl/cli/container.hpp"
#include "gdl/collection/oracles.hpp"
#include "gdl/error.hpp"
#include "gdl/grammar/edit_script.hpp"
#include "json.hpp"

namespace gdl::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string doc_name(std::uint32_t d) {
  std::string s = std::to_string(d);
  return "doc_" + std::string(s.size() < 4 ? 4 - s.size() : 0, '0') + s + ".txt";
}

IndexBundle load_index(const std::string& path) { return load_container(collection::read_file(path)); }

json listing_stats(const doclist::ListingStats& s) {
  return {{"rmq_calls", s.rmq_calls},
          {"lists_opened", s.lists_opened},
          {"elements_scanned", s.elements_scanned},
          {"nodes_visited", s.nodes_visited},
          {"track_hops", s.track_hops}};
}

json locate_json(const std::vector<collection::Occurrence>& occ) {
  json a = json::array();
  for (const auto& o : occ) a.push_back({o.doc, o.offset});
  return a;
}

std::string sample_pattern(std::mt19937_64& rng, const collection::Collection& c, std::size_t max_m,
                           const std::string& symbols, bool occurring) {
  std::size_t m = 1 + rng() % max_m;
  if (occurring) {
    const auto& d = c.docs[rng() % c.docs.size()];
    m = std::min(m, d.size());
    return d.substr(rng() % (d.size() - m + 1), m);
  }
  std::string p;
  for (std::size_t k = 0; k < m; ++k) p.push_back(symbols[rng() % symbols.size()]);
  return p;
}

std::string used_symbols(const collection::Collection& c) {
  std::array<bool, 256> seen{};
  for (const auto& d : c.docs)
    for (char ch : d) seen[static_cast<unsigned char>(ch)] = true;
  std::string s;
  for (int k = 0; k < 256; ++k)
    if (seen[k]) s.push_back(static_cast<char>(k));
  return s;
}

// Names of the operations whose answer differs from the oracles.
std::vector<std::string> mismatches(const IndexBundle& b, const collection::Collection& c, const std::string& p) {
  std::vector<std::string> bad;
  if (b.docs->list_documents(p) != collection::naive_list(c, p)) bad.push_back("list");
  auto want = collection::naive_occurrences(c, p);
  if (b.pattern->count(p) != want.size()) bad.push_back("count");
  if (b.pattern->locate(p) != want) bad.push_back("locate");
  return bad;
}

std::string minimize(const IndexBundle& b, const collection::Collection& c, std::string p) {
  bool shrunk = true;
  while (shrunk && p.size() > 1) {
    shrunk = false;
    for (auto cand : {p.substr(1), p.substr(0, p.size() - 1)}) {
      if (!mismatches(b, c, cand).empty()) {
        p = cand;
        shrunk = true;
        break;
      }
    }
  }
  return p;
}

int cmd_gen(const collection::GenParams& p, const std::string& out_dir, std::ostream& out) {
  auto c = collection::generate(p);
  fs::path dir(out_dir);
  fs::create_directories(dir / "docs");
  for (const auto& e : fs::directory_iterator(dir / "docs")) {
    auto name = e.path().filename().string();
    if (name.rfind("doc_", 0) == 0 && e.path().extension() == ".txt") fs::remove(e.path());
  }
  collection::write_file(dir / "base.txt", c.base);
  collection::write_file(dir / "script.txt", grammar::format_script(*c.script));
  for (std::uint32_t d = 1; d <= c.num_docs(); ++d) collection::write_file(dir / "docs" / doc_name(d), c.docs[d - 1]);
  json meta = {{"seed", p.seed}, {"n", p.n},         {"D", p.docs},
               {"s", p.edits},   {"sigma", p.sigma}, {"model", std::string(collection::model_name(p.model))}};
  collection::write_file(dir / "gen.json", meta.dump(2) + "\n");
  out << json{{"documents", c.num_docs()}, {"total_length", c.total_length()}, {"out", out_dir}}.dump() << "\n";
  return kOk;
}

int cmd_build(const std::vector<std::string>& in, const std::string& out_path, const BuildOptions& opt,
              std::ostream& out) {
  auto c = load_collection(in);
  auto b = build_index(c, opt);
  json meta = {{"documents", c.num_docs()},
               {"total_length", c.total_length()},
               {"builder", c.script ? "repetitive" : "generic"},
               {"provenance", c.provenance},
               {"seed", c.seed},
               {"ms_len", opt.ms_len},
               {"epsilon", opt.epsilon},
               {"tau", b.pattern->grid().tau()},
               {"layout", doclist::layout_name(opt.layout)}};
  b.meta = meta.dump();
  auto bytes = save_container(b);
  collection::write_file(out_path, bytes);
  out << json{{"out", out_path}, {"bytes", bytes.size()}, {"documents", c.num_docs()}, {"rules", b.grammar->num_rules()}}
             .dump()
      << "\n";
  return kOk;
}

int cmd_query(const std::string& index_path, const std::string& op, const std::vector<std::string>& patterns, bool hex,
              std::ostream& out) {
  std::vector<std::string> decoded;
  for (const auto& a : patterns) {
    decoded.push_back(decode_pattern(a, hex));
    if (decoded.back().empty()) throw UsageError("pattern must be nonempty");
  }
  auto b = load_index(index_path);
  for (const auto& p : decoded) {
    json rec = {{"op", op}, {"pattern", collection::escape_bytes(p)}};
    if (op == "list") {
      doclist::ListingStats st;
      rec["result"] = b.docs->list_documents(p, &st);
      rec["stats"] = listing_stats(st);
    } else if (op == "count") {
      rec["result"] = b.pattern->count(p);
      rec["stats"] = {{"cuts", b.pattern->cut_rectangles(p).size()}};
    } else {
      auto occ = b.pattern->locate(p);
      rec["result"] = locate_json(occ);
      rec["stats"] = {{"occurrences", occ.size()}};
    }
    out << rec.dump() << "\n";
  }
  return kOk;
}

int cmd_verify(const std::string& index_path, const std::vector<std::string>& in, std::size_t num, std::size_t max_m,
               std::uint64_t seed, std::ostream& out, std::ostream& err) {
  auto b = load_index(index_path);
  auto c = load_collection(in);
  std::size_t failures = 0;
  if (b.grammar->num_docs() != c.num_docs()) {
    out << json{{"failure", "document count"}, {"index", b.grammar->num_docs()}, {"collection", c.num_docs()}}.dump()
        << "\n";
    return kVerifyFailed;
  }
  for (std::uint32_t d = 1; d <= c.num_docs(); ++d) {
    if (b.grammar->document(d) != c.docs[d - 1]) {
      ++failures;
      out << json{{"failure", "extract"}, {"doc", d}}.dump() << "\n";
    }
  }
  if (num == 0) err << "warning: no patterns requested, nothing compared\n";
  std::mt19937_64 rng(seed);
  auto symbols = used_symbols(c);
  for (std::size_t k = 0; k < num; ++k) {
    auto p = sample_pattern(rng, c, max_m, symbols, k % 2 == 0);
    auto bad = mismatches(b, c, p);
    if (bad.empty()) continue;
    ++failures;
    auto small = minimize(b, c, p);
    out << json{{"failure", bad},
                {"pattern", collection::escape_bytes(p)},
                {"repro", {{"collection_seed", c.seed}, {"verify_seed", seed}, {"pattern", collection::escape_bytes(small)}}}}
               .dump()
        << "\n";
  }
  out << json{{"checked", num}, {"documents", c.num_docs()}, {"failures", failures}, {"pass", failures == 0}}.dump()
      << "\n";
  return failures == 0 ? kOk : kVerifyFailed;
}

int cmd_stats(const std::string& index_path, std::ostream& out) {
  auto b = load_index(index_path);
  auto st = b.docs->doc_stats();
  const auto& grid = b.pattern->grid();
  json meta = json::parse(b.meta.empty() ? "{}" : b.meta, nullptr, false);
  if (meta.is_discarded()) meta = json::object();
  json rec = {{"documents", b.grammar->num_docs()},
              {"total_length", b.grammar->total_length()},
              {"rules", b.grammar->num_rules()},
              {"ms_len", b.grammar->ms_len()},
              {"grid", {{"points", grid.num_points()}, {"cols", grid.cols()}, {"rows", grid.rows()},
                        {"height", grid.height()}, {"epsilon", grid.epsilon()}, {"tau", grid.tau()}}},
              {"layout", doclist::layout_name(b.docs->layout())},
              {"bits", {{"grammar", st.grammar_bits}, {"grid", st.grid_bits}, {"uses", st.uses_bits},
                        {"m", st.m_bits}, {"rmq", st.rmq_bits}, {"lists", st.list_bits},
                        {"short", st.short_bits}, {"total", st.total_bits()}}},
              {"runs", {{"total", st.total_runs}, {"per_level", st.level_runs}, {"nodes_per_level", st.level_nodes}}},
              {"list_ranges", st.list_ranges},
              {"meta", meta}};
  out << rec.dump() << "\n";
  return kOk;
}

int cmd_bench(const std::string& index_path, std::size_t max_m, std::size_t num, std::uint64_t seed,
              std::ostream& out) {
  auto b = load_index(index_path);
  collection::Collection c;
  for (std::uint32_t d = 1; d <= b.grammar->num_docs(); ++d) c.docs.push_back(b.grammar->document(d));
  std::mt19937_64 rng(seed);
  out << "op,m,patterns,total_us,avg_us,avg_results\n";
  for (std::size_t m = 1; m <= max_m; m = m < 4 ? m + 1 : m * 2) {
    std::vector<std::string> pats;
    for (std::size_t k = 0; k < num; ++k) {
      const auto& d = c.docs[rng() % c.docs.size()];
      std::size_t len = std::min(m, d.size());
      pats.push_back(d.substr(rng() % (d.size() - len + 1), len));
    }
    for (std::string op : {"list", "count", "locate"}) {
      std::size_t results = 0;
      auto t0 = std::chrono::steady_clock::now();
      for (const auto& p : pats) {
        if (op == "list")
          results += b.docs->list_documents(p).size();
        else if (op == "count")
          results += b.pattern->count(p);
        else
          results += b.pattern->locate(p).size();
      }
      auto us = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - t0).count();
      double n = static_cast<double>(std::max<std::size_t>(1, pats.size()));
      out << op << "," << m << "," << pats.size() << "," << us << "," << us / n << ","
          << static_cast<double>(results) / n << "\n";
    }
  }
  return kOk;
}

}  // namespace

std::string decode_pattern(const std::string& arg, bool hex) {
  if (!hex) return collection::unescape_bytes(arg);
  if (arg.size() % 2 != 0) throw UsageError("hex pattern needs an even number of digits");
  std::string out;
  for (std::size_t k = 0; k < arg.size(); k += 2) {
    auto digit = [&](char ch) {
      if (ch >= '0' && ch <= '9') return ch - '0';
      if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
      if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
      throw UsageError("bad hex digit in pattern");
    };
    out.push_back(static_cast<char>(digit(arg[k]) * 16 + digit(arg[k + 1])));
  }
  return out;
}

collection::Collection load_collection(const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw UsageError("no input given");
  if (inputs.size() == 1 && fs::is_directory(inputs[0])) {
    fs::path dir(inputs[0]);
    if (fs::exists(dir / "base.txt") && fs::exists(dir / "script.txt")) {
      collection::Collection c;
      c.base = collection::read_file(dir / "base.txt");
      c.script = grammar::parse_script(collection::read_file(dir / "script.txt"));
      c.docs = collection::replay_naive(*c.script, c.base);
      c.provenance = "generated";
      if (fs::exists(dir / "gen.json")) {
        auto meta = json::parse(collection::read_file(dir / "gen.json"), nullptr, false);
        if (!meta.is_discarded() && meta.contains("seed")) c.seed = meta["seed"].get<std::uint64_t>();
      }
      return c;
    }
    fs::path docs = fs::is_directory(dir / "docs") ? dir / "docs" : dir;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(docs))
      if (e.is_regular_file()) files.push_back(e.path());
    if (files.empty()) throw BuildError("no documents in " + docs.string());
    return collection::ingest(files);
  }
  if (inputs.size() == 1 && fs::path(inputs[0]).extension() == ".col") {
    collection::Collection c;
    c.docs = collection::read_col(collection::read_file(inputs[0]));
    if (c.docs.empty()) throw BuildError("collection file holds no documents");
    for (const auto& d : c.docs)
      if (d.empty()) throw BuildError("empty document in collection file");
    return c;
  }
  std::vector<fs::path> files(inputs.begin(), inputs.end());
  return collection::ingest(files);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammar-compressed document listing index"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a repetitive collection");
  collection::GenParams gp;
  std::string model = "range", gen_out;
  gen->add_option("--seed", gp.seed)->default_val(1);
  gen->add_option("--n", gp.n, "base length")->default_val(100);
  gen->add_option("--D", gp.docs, "documents")->default_val(10);
  gen->add_option("--s", gp.edits, "edits")->default_val(20);
  gen->add_option("--sigma", gp.sigma)->default_val(4);
  gen->add_option("--model", model)->check(CLI::IsMember({"single", "range", "subtree"}))->default_val("range");
  gen->add_option("--out", gen_out, "output directory")->required();

  auto* build = app.add_subcommand("build", "build an index container");
  std::vector<std::string> build_in;
  std::string build_out, layout = "leaf";
  BuildOptions bo;
  build->add_option("--in", build_in, "generated directory, document directory, .col file or files")->required();
  build->add_option("--out", build_out)->required();
  build->add_option("--ms-len", bo.ms_len)->default_val(1)->check(CLI::Range(1u, 64u));
  build->add_option("--epsilon", bo.epsilon)->default_val(0.5);
  build->add_option("--tau", bo.tau, "prefix-sum sampling step (0 = ceil log p)")->default_val(0);
  build->add_option("--list-layout", layout)->check(CLI::IsMember({"leaf", "root"}))->default_val("leaf");

  auto* query = app.add_subcommand("query", "answer list, count or locate queries");
  std::string q_index, op = "list";
  std::vector<std::string> q_patterns;
  bool hex = false;
  query->add_option("--index", q_index)->required();
  query->add_option("--op", op)->check(CLI::IsMember({"list", "count", "locate"}))->default_val("list");
  query->add_option("--pattern,-p", q_patterns)->required();
  query->add_flag("--hex", hex, "patterns are hex digits");

  auto* verify = app.add_subcommand("verify", "compare index answers with brute force");
  std::string v_index;
  std::vector<std::string> v_in;
  std::size_t v_num = 100, v_max = 8;
  std::uint64_t v_seed = 1;
  verify->add_option("--index", v_index)->required();
  verify->add_option("--collection", v_in)->required();
  verify->add_option("--num-patterns", v_num)->default_val(100);
  verify->add_option("--max-m", v_max)->default_val(8)->check(CLI::PositiveNumber);
  verify->add_option("--seed", v_seed)->default_val(1);

  auto* stats = app.add_subcommand("stats", "space and run statistics");
  std::string s_index;
  stats->add_option("--index", s_index)->required();

  auto* bench = app.add_subcommand("bench", "time queries over pattern lengths");
  std::string b_index;
  std::size_t b_max = 16, b_num = 200;
  std::uint64_t b_seed = 1;
  bench->add_option("--index", b_index)->required();
  bench->add_option("--max-m", b_max)->default_val(16)->check(CLI::PositiveNumber);
  bench->add_option("--patterns", b_num)->default_val(200);
  bench->add_option("--seed", b_seed)->default_val(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      gp.model = collection::parse_model(model);
      return cmd_gen(gp, gen_out, out);
    }
    if (*build) {
      bo.layout = doclist::parse_layout(layout);
      if (!(bo.epsilon > 0 && bo.epsilon <= 1)) throw UsageError("--epsilon must be in (0, 1]");
      return cmd_build(build_in, build_out, bo, out);
    }
    if (*query) return cmd_query(q_index, op, q_patterns, hex, out);
    if (*verify) return cmd_verify(v_index, v_in, v_num, v_max, v_seed, out, err);
    if (*stats) return cmd_stats(s_index, out);
    if (*bench) return cmd_bench(b_index, b_max, b_num, b_seed, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace gdl::cli
