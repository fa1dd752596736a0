#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <unistd.h>

#include "mediasim/csv.hpp"
#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"
#include "mediasim/pipeline.hpp"
#include "mediasim/reports.hpp"
#include "mediasim/synth.hpp"

namespace fs = std::filesystem;
using namespace mediasim;

namespace {

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("o" + std::to_string(i));
  return v;
}

SimilarityGraph two_cliques() {
  SimilarityGraph g(names(8));
  for (std::size_t base : {0, 4}) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) g.set_weight(base + i, base + j, 1.0);
    }
  }
  return g;
}

Registry registry_from(const std::string& rows) {
  std::stringstream ss(rows);
  return load_registry(ss);
}

fs::path scratch_root() { return fs::temp_directory_path() / ("mediasim-test-" + std::to_string(::getpid())); }

struct ScratchCleanup {
  ~ScratchCleanup() { fs::remove_all(scratch_root()); }
} scratch_cleanup;

fs::path scratch(const std::string& name) {
  auto dir = scratch_root() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_synthetic(const SyntheticData& data, const fs::path& dir) {
  std::ofstream corpus(dir / "corpus.jsonl", std::ios::binary);
  write_tweet_archive(corpus, data.tweets);
  std::ofstream registry(dir / "registry.csv", std::ios::binary);
  write_registry_csv(registry, data.registry);
}

SynthConfig small_synth() {
  SynthConfig c;
  c.owners = 3;
  c.outlets_per_owner = 3;
  c.days = 5;
  c.seed = 9;
  return c;
}

}  // namespace

TEST_CASE("csv helpers") {
  CHECK(csv::split_row("a,\"b,c\",\"d\"\"e\"\r") == std::vector<std::string>{"a", "b,c", "d\"e"});
  CHECK(csv::split_row("") == std::vector<std::string>{""});
  CHECK_THROWS_AS(csv::split_row("\"open"), ParseError);
  CHECK(csv::join_row({"a", "b,c", "x\"y"}) == "a,\"b,c\",\"x\"\"y\"");
  CHECK(csv::format_real(-0.0) == "0");
  CHECK(csv::format_real(0.125) == "0.125");
}

TEST_CASE("partition basics") {
  const Partition p({"a", "b", "c", "d"}, {1, 0, 1, 2});
  CHECK(p.community_count() == 2);
  CHECK(p.grouped_count() == 3);
  CHECK(p.label_of("c") == 1);
  CHECK_THROWS_AS(Partition({"a", "a"}, {1, 1}), ContractError);
  CHECK_THROWS_AS(Partition({"a"}, {-1}), ContractError);
  CHECK(canonical_community_labels({7, 3, 7, 5, 3}) == std::vector<int>{1, 2, 1, 0, 2});
  CHECK(same_grouping({1, 1, 2}, {5, 5, 0}));
  CHECK_FALSE(same_grouping({1, 1, 2}, {5, 0, 0}));

  std::stringstream ss;
  write_partition_csv(ss, p);
  CHECK(ss.str().rfind("outlet,community_id\n", 0) == 0);
  CHECK(read_partition_csv(ss) == p);
}

TEST_CASE("matrix csv round trip") {
  SimilarityMatrix m({"x", "y,z"});
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m.set_symmetric(0, 1, 1.0 / 3.0);
  std::stringstream ss;
  write_matrix_csv(ss, m);
  const auto back = read_matrix_csv(ss);
  CHECK(back.labels() == m.labels());
  CHECK(back(0, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("internal metrics report") {
  const auto g = two_cliques();
  const auto row = internal_metrics_report("Topic: Minhash", g, Partition(names(8), {1, 1, 1, 1, 2, 2, 2, 2}));
  CHECK(row.outlets == 8);
  CHECK(row.grouped == 8);
  CHECK(row.communities == 2);
  CHECK(row.modularity == doctest::Approx(0.5));
  CHECK(row.conductance == 0.0);

  WarningCapture quiet;
  const auto none = internal_metrics_report("Vocabulary", g, Partition(names(8), std::vector<int>(8, 0)));
  CHECK(none.grouped == 0);
  CHECK(none.communities == 0);
  CHECK(none.outlets == 8);
}

TEST_CASE("report column sets") {
  std::ostringstream im, ev;
  write_internal_metrics_csv(im, {});
  write_evaluation_csv(ev, {});
  CHECK(im.str() == "Similarity,Outlets,Grouped,Comm.,Mod.,Cond.\n");
  CHECK(ev.str() == "Similarity,Outlets,Comm.,ARI,AMI,NMI,Hom,Com\n");
}

TEST_CASE("ownership composition") {
  SUBCASE("three of four with one unknown") {
    const auto registry = registry_from("a,O,1\nb,O,1\nc,O,1\nd,,\n");
    const auto rows = ownership_composition(Partition({"a", "b", "c", "d"}, {1, 1, 1, 1}), registry);
    REQUIRE(rows.size() == 1);
    REQUIRE(rows[0].owners.size() == 1);
    CHECK(rows[0].owners[0].owner == "O");
    CHECK(rows[0].owners[0].percent == doctest::Approx(75.0));
    CHECK(rows[0].owners[0].count == 3);
    CHECK(rows[0].unknown_count == 1);
    std::ostringstream out;
    write_composition_csv(out, rows);
    CHECK(out.str() == "ID,Size,Main owner(s),Owner(s)% [#],Unk. owner % [#]\n1,4,O,75.00 [3],25.00 [1]\n");
  }
  SUBCASE("exactly ten percent is not listed") {
    std::string rows;
    std::vector<std::string> outlets;
    for (int i = 0; i < 10; ++i) {
      outlets.push_back("x" + std::to_string(i));
      rows += outlets.back() + ",Owner" + std::to_string(i) + ",1\n";
    }
    const auto comp = ownership_composition(Partition(outlets, std::vector<int>(10, 1)), registry_from(rows));
    REQUIRE(comp.size() == 1);
    CHECK(comp[0].size == 10);
    CHECK(comp[0].owners.empty());
  }
}

TEST_CASE("flow export") {
  const auto registry = registry_from("a,O,1\nb,O,1\nc,O,1\nd,O,1\ne,O,1\nf,P,1\n");
  const std::vector<std::string> outlets = {"a", "b", "c", "d", "e", "f"};
  const auto truth = ground_truth_partition(registry, outlets);

  const auto whole = flow_export(Partition(outlets, {3, 3, 3, 3, 3, 0}), truth, registry);
  CHECK(whole == std::vector<FlowRecord>{{"O", 3, 5}, {"P", 0, 1}});

  const auto split = flow_export(Partition(outlets, {1, 1, 2, 2, 2, 2}), truth, registry);
  std::size_t o_total = 0;
  std::map<int, std::size_t> per_community;
  for (const auto& f : split) {
    CHECK(f.outlets > 0);
    if (f.owner == "O") o_total += f.outlets;
    per_community[f.community] += f.outlets;
  }
  CHECK(o_total == 5);
  CHECK(per_community[1] == 2);
  CHECK(per_community[2] == 4);

  std::ostringstream out;
  write_flows_csv(out, whole);
  CHECK(out.str().rfind("owner,community_id,outlets\n", 0) == 0);
}

TEST_CASE("metric and algorithm names") {
  CHECK(parse_metric("minhash") == Metric::Minhash);
  CHECK(parse_algorithm("ncut") == Algorithm::NormalizedCut);
  CHECK_THROWS_AS(parse_metric("bogus"), ConfigError);
  CHECK_THROWS_AS(parse_algorithm("louvain"), ConfigError);
  CHECK(similarity_label(Metric::Keywords, Algorithm::Greedy) == "Topic: Keywords");
  CHECK(similarity_label(Metric::Minhash, Algorithm::NormalizedCut) == "Cluster Topic: Minhash");
  CHECK(similarity_label(Metric::Vocabulary, Algorithm::Greedy) == "Vocabulary");
}

TEST_CASE("synthetic generator") {
  SUBCASE("fixed seed is byte identical") {
    std::ostringstream a, b;
    write_tweet_archive(a, generate_synthetic(small_synth()).tweets);
    write_tweet_archive(b, generate_synthetic(small_synth()).tweets);
    CHECK(a.str() == b.str());
    auto other = small_synth();
    other.seed = 10;
    std::ostringstream c;
    write_tweet_archive(c, generate_synthetic(other).tweets);
    CHECK(a.str() != c.str());
  }
  SUBCASE("one owner is one class") {
    auto cfg = small_synth();
    cfg.owners = 1;
    const auto data = generate_synthetic(cfg);
    Registry reg;
    reg.records = data.registry;
    std::vector<std::string> outlets;
    for (const auto& r : data.registry) outlets.push_back(r.outlet);
    const auto truth = ground_truth_partition(reg, outlets);
    CHECK(std::set<int>(truth.labels().begin(), truth.labels().end()).size() == 1);
  }
  SUBCASE("noise zero repeats each story verbatim within an owner") {
    auto cfg = small_synth();
    cfg.noise = 0.0;
    cfg.background_per_outlet_per_day = 0;
    const auto data = generate_synthetic(cfg);
    std::map<std::string, std::set<std::string>> texts_by_owner;
    std::map<std::string, std::size_t> tweets_by_owner;
    for (const auto& t : data.tweets) {
      const auto owner = t.outlet.substr(0, t.outlet.rfind('_'));
      texts_by_owner[owner].insert(t.text);
      ++tweets_by_owner[owner];
    }
    for (const auto& [owner, texts] : texts_by_owner) {
      CHECK(texts.size() * cfg.outlets_per_owner == tweets_by_owner[owner]);
    }
  }
  SUBCASE("every outlet passes the activity filter") {
    const auto data = generate_synthetic(small_synth());
    const auto corpus = make_corpus(data.tweets, data.window);
    CHECK(filter_active_outlets(corpus).removed.empty());
  }
}

TEST_CASE("run writes a complete directory") {
  WarningCapture quiet;
  const auto dir = scratch("run");
  write_synthetic(generate_synthetic(small_synth()), dir);
  RunConfig rc;
  rc.corpus_path = (dir / "corpus.jsonl").string();
  rc.registry_path = (dir / "registry.csv").string();
  rc.output_dir = (dir / "out").string();
  const auto out = run(rc);
  for (const char* f : {"manifest.json", "similarity_vocab.csv", "similarity_keywords.csv", "similarity_minhash.csv",
                        "partition_minhash_greedy.csv", "partition_minhash_ncut.csv", "evaluation.csv",
                        "internal_metrics.csv", "graph_minhash.csv", "graph_minhash_threshold.csv",
                        "composition_vocab_greedy.csv", "flows_keywords_ncut.csv", "clusters_minhash.jsonl"}) {
    CHECK_MESSAGE(fs::exists(out / f), f);
  }
  CHECK_FALSE(fs::exists(out / "topics_keywords.jsonl"));
  const auto eval = slurp(out / "evaluation.csv");
  CHECK(std::count(eval.begin(), eval.end(), '\n') == 7);

  SUBCASE("a second run gets its own directory with the same content") {
    const auto again = run(rc);
    CHECK(again != out);
    CHECK(slurp(again / "manifest.json") == slurp(out / "manifest.json"));
  }
  SUBCASE("a changed setting changes the directory name") {
    rc.link_threshold = 4;
    const auto other = run(rc);
    CHECK(other.filename().string().substr(0, 20) != out.filename().string().substr(0, 20));
  }
}

TEST_CASE("run aborts on a missing registry") {
  const auto dir = scratch("missing");
  write_synthetic(generate_synthetic(small_synth()), dir);
  RunConfig rc;
  rc.corpus_path = (dir / "corpus.jsonl").string();
  rc.registry_path = (dir / "nope.csv").string();
  rc.output_dir = (dir / "out").string();
  CHECK_THROWS_WITH_AS(run(rc), doctest::Contains("ownership: file not found"), ConfigError);
  CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("run reports the failing stage") {
  const auto dir = scratch("badcorpus");
  std::ofstream(dir / "corpus.jsonl") << "{\"id\":\"1\",\"ts\":1,\"text\":\"x\"}\n";
  std::ofstream(dir / "registry.csv") << "a,O,1\n";
  RunConfig rc;
  rc.corpus_path = (dir / "corpus.jsonl").string();
  rc.registry_path = (dir / "registry.csv").string();
  rc.output_dir = (dir / "out").string();
  CHECK_THROWS_WITH_AS(run(rc), doctest::Contains("ingest: line 1: outlet missing"), DataError);
}

TEST_CASE("ingest applies the configured window and filter") {
  WarningCapture quiet;
  const auto dir = scratch("ingest");
  write_synthetic(generate_synthetic(small_synth()), dir);
  IngestOptions io;
  io.corpus_path = (dir / "corpus.jsonl").string();
  const auto all = ingest(io);
  CHECK(all.outlets.size() == 9);
  CHECK(all.tweets_read == all.corpus.tweets.size());
  io.window_start = "2015-10-25";
  io.window_end = "2015-10-26";
  const auto two = ingest(io);
  CHECK(two.corpus.window.length_days() == 2);
  CHECK(two.corpus.tweets.size() < all.corpus.tweets.size());
  io.corpus_path = (dir / "absent.jsonl").string();
  CHECK_THROWS_AS(ingest(io), ConfigError);
}
