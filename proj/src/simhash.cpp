#include "mediasim/simhash.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <json.hpp>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"
#include "mediasim/hashing.hpp"

namespace mediasim {

ShingleSet shingle(const std::vector<std::string>& tokens, std::size_t k, std::string tweet_id) {
  if (k == 0) throw ContractError("shingle: k must be positive");
  ShingleSet out{std::move(tweet_id), {}};
  if (tokens.size() < k) return out;
  for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
    std::string s = tokens[i];
    for (std::size_t j = 1; j < k; ++j) {
      s.push_back(' ');
      s += tokens[i + j];
    }
    out.shingles.push_back(std::move(s));
  }
  std::sort(out.shingles.begin(), out.shingles.end());
  out.shingles.erase(std::unique(out.shingles.begin(), out.shingles.end()), out.shingles.end());
  return out;
}

std::uint64_t shingle_hash(const std::string& shingle, std::uint64_t seed) {
  return murmur64(shingle, seed);
}

std::optional<MinHashSignature> minhash(const ShingleSet& shingles, const SeedSet& seeds) {
  if (shingles.shingles.empty()) return std::nullopt;
  MinHashSignature sig{shingles.tweet_id, {}};
  sig.components.fill(std::numeric_limits<std::uint64_t>::max());
  for (const auto& s : shingles.shingles) {
    for (std::size_t c = 0; c < kSignatureSize; ++c) {
      sig.components[c] = std::min(sig.components[c], shingle_hash(s, seeds[c]));
    }
  }
  return sig;
}

std::vector<TweetSketch> sketch_tweets(const std::vector<TokenDoc>& docs, const SeedSet& seeds,
                                       std::size_t k) {
  std::vector<TweetSketch> out;
  for (const auto& d : docs) {
    if (auto sig = minhash(shingle(d.tokens, k, d.tweet_id), seeds)) {
      out.push_back({d.tweet_id, d.outlet, std::move(*sig)});
    }
  }
  return out;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

// All `choose`-element subsets of {0..n-1} as bit masks.
std::vector<unsigned> component_bands(std::size_t n, std::size_t choose) {
  std::vector<unsigned> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) == choose) out.push_back(mask);
  }
  return out;
}

struct BandKeyHash {
  std::size_t operator()(const std::array<std::uint64_t, kSignatureSize>& k) const {
    std::uint64_t h = 0;
    for (auto x : k) h = splitmix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

std::vector<TopicCluster> cluster_topics(const std::vector<TweetSketch>& sketches,
                                         std::size_t link_threshold) {
  if (link_threshold < 1 || link_threshold > kSignatureSize) {
    throw ContractError("cluster_topics: link threshold must be in 1..4");
  }
  const std::size_t n = sketches.size();
  DisjointSets dsu(n);

  for (unsigned band : component_bands(kSignatureSize, link_threshold)) {
    std::unordered_map<std::array<std::uint64_t, kSignatureSize>, std::size_t, BandKeyHash> first;
    first.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::array<std::uint64_t, kSignatureSize> key{};
      for (std::size_t c = 0; c < kSignatureSize; ++c) {
        if (band & (1u << c)) key[c] = sketches[i].signature.components[c];
      }
      auto [it, fresh] = first.emplace(key, i);
      if (!fresh) dsu.unite(it->second, i);
    }
  }

  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) members[dsu.find(i)].push_back(i);

  std::vector<TopicCluster> clusters;
  clusters.reserve(members.size());
  for (const auto& [_, idx] : members) {
    TopicCluster c;
    for (auto i : idx) {
      c.tweet_ids.push_back(sketches[i].tweet_id);
      c.outlets.push_back(sketches[i].outlet);
    }
    std::sort(c.tweet_ids.begin(), c.tweet_ids.end());
    std::sort(c.outlets.begin(), c.outlets.end());
    c.outlets.erase(std::unique(c.outlets.begin(), c.outlets.end()), c.outlets.end());
    clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const TopicCluster& a, const TopicCluster& b) { return a.tweet_ids[0] < b.tweet_ids[0]; });
  for (std::size_t i = 0; i < clusters.size(); ++i) clusters[i].id = i;
  return clusters;
}

SimilarityMatrix cooccurrence_similarity(const std::vector<TopicCluster>& clusters,
                                         const std::vector<std::string>& outlets,
                                         const CooccurrenceOptions& options) {
  const std::size_t n = outlets.size();
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) slot.emplace(outlets[i], i);

  std::vector<double> occurs(n, 0.0);
  std::vector<double> joint(n * n, 0.0);
  for (const auto& c : clusters) {
    if (c.outlets.size() < 2 && !options.include_single_outlet_clusters) continue;
    std::vector<std::size_t> present;
    for (const auto& o : c.outlets) {
      if (auto it = slot.find(o); it != slot.end()) present.push_back(it->second);
    }
    for (std::size_t a = 0; a < present.size(); ++a) {
      occurs[present[a]] += 1.0;
      for (std::size_t b = a + 1; b < present.size(); ++b) {
        joint[present[a] * n + present[b]] += 1.0;
        joint[present[b] * n + present[a]] += 1.0;
      }
    }
  }

  SimilarityMatrix m(outlets);
  for (std::size_t i = 0; i < n; ++i) {
    if (occurs[i] == 0.0) {
      warn("minhash: outlet '" + outlets[i] + "' co-occurs in no topic");
      continue;
    }
    m(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (occurs[j] == 0.0) continue;
      const double both = joint[i * n + j];
      m.set_symmetric(i, j, std::max(both / occurs[j], both / occurs[i]));
    }
  }
  return m;
}

void write_cluster_dump(std::ostream& out, const std::vector<TopicCluster>& clusters) {
  for (const auto& c : clusters) {
    nlohmann::ordered_json j;
    j["cluster_id"] = c.id;
    j["tweet_ids"] = c.tweet_ids;
    j["outlets"] = c.outlets;
    out << j.dump() << '\n';
  }
}

}  // namespace mediasim
