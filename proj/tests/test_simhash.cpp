#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"
#include "mediasim/simhash.hpp"

using namespace mediasim;

namespace {

TweetSketch sketch(std::string id, std::string outlet, std::array<std::uint64_t, 4> c) {
  return TweetSketch{id, std::move(outlet), MinHashSignature{id, c}};
}

TopicCluster cluster(std::vector<std::string> outlets) {
  TopicCluster c;
  std::sort(outlets.begin(), outlets.end());
  c.outlets = outlets;
  return c;
}

// All-pairs linking closed with a flood fill; clusters as sorted id sets.
std::set<std::vector<std::string>> naive_clusters(const std::vector<TweetSketch>& s, std::size_t threshold) {
  const std::size_t n = s.size();
  std::vector<int> comp(n, -1);
  int next = 0;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<std::size_t> stack = {start};
    comp[start] = next;
    while (!stack.empty()) {
      const auto i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (comp[j] >= 0) continue;
        std::size_t same = 0;
        for (std::size_t c = 0; c < 4; ++c) same += s[i].signature.components[c] == s[j].signature.components[c];
        if (same >= threshold) {
          comp[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  std::map<int, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[comp[i]].push_back(s[i].tweet_id);
  std::set<std::vector<std::string>> out;
  for (auto& [k, ids] : groups) {
    std::sort(ids.begin(), ids.end());
    out.insert(ids);
  }
  return out;
}

std::set<std::vector<std::string>> as_sets(const std::vector<TopicCluster>& clusters) {
  std::set<std::vector<std::string>> out;
  for (const auto& c : clusters) out.insert(c.tweet_ids);
  return out;
}

}  // namespace

TEST_CASE("shingle windows") {
  CHECK(shingle({"a", "b", "c", "d", "e"}).shingles == std::vector<std::string>{"a b c", "b c d", "c d e"});
  CHECK(shingle({"a", "b"}).shingles.empty());
  CHECK(shingle({"a", "b", "a", "b", "a"}).shingles == std::vector<std::string>{"a b a", "b a b"});
  CHECK(shingle({"a", "b", "c"}, 2, "id").tweet_id == "id");
  CHECK_THROWS_AS(shingle({"a"}, 0), ContractError);
}

TEST_CASE("minhash determinism and empty input") {
  const auto a = shingle({"gran", "gol", "de", "chile", "hoy"}, 3, "1");
  auto b = a;
  b.tweet_id = "2";
  const auto sa = minhash(a), sb = minhash(b);
  REQUIRE(sa);
  CHECK(sa->components == sb->components);
  CHECK_FALSE(minhash(ShingleSet{"3", {}}));
  CHECK(shingle_hash("x y z", 1) != shingle_hash("x y z", 2));
}

TEST_CASE("minhash of singletons match only on collision") {
  const ShingleSet x{"1", {"x"}}, y{"2", {"y"}};
  const auto sx = minhash(x), sy = minhash(y);
  for (std::size_t c = 0; c < kSignatureSize; ++c) {
    CHECK(sx->components[c] == shingle_hash("x", kDefaultSeeds[c]));
    CHECK((sx->components[c] == sy->components[c]) == (shingle_hash("x", kDefaultSeeds[c]) == shingle_hash("y", kDefaultSeeds[c])));
  }
}

TEST_CASE("minhash component is the minimum seeded hash") {
  const ShingleSet s{"1", {"a b c", "b c d", "c d e"}};
  const auto sig = minhash(s);
  for (std::size_t c = 0; c < kSignatureSize; ++c) {
    std::uint64_t lo = ~0ULL;
    for (const auto& sh : s.shingles) lo = std::min(lo, shingle_hash(sh, kDefaultSeeds[c]));
    CHECK(sig->components[c] == lo);
  }
}

TEST_CASE("identical and unrelated tweets") {
  const auto date = parse_date("2016-01-01");
  const std::vector<TokenDoc> docs = {
      {"1", "x", date, {"gran", "gol", "de", "chile", "hoy"}},
      {"2", "y", date, {"gran", "gol", "de", "chile", "hoy"}},
      {"3", "z", date, {"lluvia", "intensa", "en", "el", "sur"}},
      {"4", "z", date, {"corto"}},
  };
  const auto sketches = sketch_tweets(docs);
  CHECK(sketches.size() == 3);
  const auto clusters = cluster_topics(sketches);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].tweet_ids == std::vector<std::string>{"1", "2"});
  CHECK(clusters[0].outlets == std::vector<std::string>{"x", "y"});
  CHECK(clusters[1].tweet_ids == std::vector<std::string>{"3"});
}

TEST_CASE("cluster_topics validates the threshold") {
  CHECK_THROWS_AS(cluster_topics({}, 0), ContractError);
  CHECK_THROWS_AS(cluster_topics({}, 5), ContractError);
}

TEST_CASE("cluster_topics matches all-pairs linking") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> val(0, 2);
  for (std::size_t threshold = 1; threshold <= 4; ++threshold) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<TweetSketch> s;
      for (int i = 0; i < 40; ++i) {
        s.push_back(sketch("t" + std::to_string(100 + i), "o" + std::to_string(i % 5),
                           {val(rng), val(rng), val(rng), val(rng)}));
      }
      CHECK(as_sets(cluster_topics(s, threshold)) == naive_clusters(s, threshold));
    }
  }
}

TEST_CASE("cluster_topics is invariant under input order") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::uint64_t> val(0, 3);
  std::vector<TweetSketch> s;
  for (int i = 0; i < 60; ++i) {
    s.push_back(sketch("t" + std::to_string(100 + i), "o" + std::to_string(i % 7), {val(rng), val(rng), val(rng), val(rng)}));
  }
  const auto base = cluster_topics(s);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(s.begin(), s.end(), rng);
    const auto again = cluster_topics(s);
    REQUIRE(again.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(again[i].id == base[i].id);
      CHECK(again[i].tweet_ids == base[i].tweet_ids);
      CHECK(again[i].outlets == base[i].outlets);
    }
  }
}

TEST_CASE("conditional probability example") {
  // B in 10 clusters, A in 5, together in 4.
  std::vector<TopicCluster> clusters;
  for (int i = 0; i < 4; ++i) clusters.push_back(cluster({"A", "B"}));
  for (int i = 0; i < 6; ++i) clusters.push_back(cluster({"B", "C"}));
  clusters.push_back(cluster({"A", "C"}));
  const auto m = cooccurrence_similarity(clusters, {"A", "B", "C"});
  CHECK(m(0, 1) == doctest::Approx(0.8));
  CHECK(m(1, 0) == doctest::Approx(0.8));
  CHECK(m.is_symmetric());
}

TEST_CASE("always together gives one") {
  const auto m = cooccurrence_similarity({cluster({"A", "B"}), cluster({"A", "B", "C"})}, {"A", "B", "C"});
  CHECK(m(0, 1) == doctest::Approx(1.0));
  CHECK(m(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("single-outlet clusters only count on request") {
  const std::vector<TopicCluster> clusters = {cluster({"A", "B"}), cluster({"A"}), cluster({"A"}), cluster({"B"})};
  CHECK(cooccurrence_similarity(clusters, {"A", "B"})(0, 1) == doctest::Approx(1.0));
  CooccurrenceOptions all;
  all.include_single_outlet_clusters = true;
  CHECK(cooccurrence_similarity(clusters, {"A", "B"}, all)(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("co-occurrence matches exhaustive counting") {
  const std::vector<std::string> outlets = {"A", "B", "C"};
  const std::vector<TopicCluster> clusters = {cluster({"A", "B"}), cluster({"A", "B", "C"}), cluster({"B", "C"}),
                                              cluster({"A", "C"}), cluster({"B", "C"}), cluster({"A"})};
  const auto m = cooccurrence_similarity(clusters, outlets);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      double ni = 0, nj = 0, both = 0;
      for (const auto& c : clusters) {
        if (c.outlets.size() < 2) continue;
        const bool hi = std::count(c.outlets.begin(), c.outlets.end(), outlets[i]);
        const bool hj = std::count(c.outlets.begin(), c.outlets.end(), outlets[j]);
        ni += hi;
        nj += hj;
        both += hi && hj;
      }
      CHECK(m(i, j) == doctest::Approx(std::max(both / ni, both / nj)));
    }
  }
}

TEST_CASE("outlet in no multi-outlet cluster warns and scores zero") {
  WarningCapture cap;
  const auto m = cooccurrence_similarity({cluster({"A", "B"}), cluster({"C"})}, {"A", "B", "C"});
  CHECK(m(2, 0) == 0.0);
  CHECK(m(2, 2) == 0.0);
  CHECK(cap.contains("'C'"));
}
