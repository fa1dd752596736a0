#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mediasim/corpus.hpp"
#include "mediasim/similarity_matrix.hpp"

namespace mediasim {

inline constexpr std::size_t kSignatureSize = 4;
using SeedSet = std::array<std::uint64_t, kSignatureSize>;

inline constexpr SeedSet kDefaultSeeds = {0x2545F4914F6CDD1DULL, 0x9E3779B97F4A7C15ULL,
                                          0xD1B54A32D192ED03ULL, 0x8CB92BA72F3D8DD7ULL};

struct ShingleSet {
  std::string tweet_id;
  std::vector<std::string> shingles;  // sorted, unique; tokens joined by ' '
};

struct MinHashSignature {
  std::string tweet_id;
  std::array<std::uint64_t, kSignatureSize> components{};

  bool operator==(const MinHashSignature&) const = default;
};

ShingleSet shingle(const std::vector<std::string>& tokens, std::size_t k = 3,
                   std::string tweet_id = {});

// Seeded 64-bit hash of one shingle.
std::uint64_t shingle_hash(const std::string& shingle, std::uint64_t seed);

/// nullopt for an empty shingle set: such tweets take no part in topics.
std::optional<MinHashSignature> minhash(const ShingleSet& shingles, const SeedSet& seeds = kDefaultSeeds);

struct TweetSketch {
  std::string tweet_id;
  std::string outlet;
  MinHashSignature signature;
};

struct TopicCluster {
  std::size_t id = 0;
  std::vector<std::string> tweet_ids;  // sorted
  std::vector<std::string> outlets;    // sorted, distinct
};

/// Links tweets agreeing on at least `link_threshold` signature components
/// and returns connected components. Candidates come from one hash bucket per
/// `link_threshold`-subset of components. Clusters are numbered by their
/// smallest tweet id.
std::vector<TopicCluster> cluster_topics(const std::vector<TweetSketch>& sketches,
                                         std::size_t link_threshold = 3);

/// Shingles and signs every doc; docs with fewer than k tokens are skipped.
std::vector<TweetSketch> sketch_tweets(const std::vector<TokenDoc>& docs,
                                       const SeedSet& seeds = kDefaultSeeds, std::size_t k = 3);

struct CooccurrenceOptions {
  // Count single-outlet clusters in the per-outlet denominators too.
  bool include_single_outlet_clusters = false;
};

/// sim(A,B) = max(P(A|B), P(B|A)) from cluster co-occurrence counts.
SimilarityMatrix cooccurrence_similarity(const std::vector<TopicCluster>& clusters,
                                         const std::vector<std::string>& outlets,
                                         const CooccurrenceOptions& options = {});

// JSON lines {cluster_id, tweet_ids, outlets}.
void write_cluster_dump(std::ostream& out, const std::vector<TopicCluster>& clusters);

}  // namespace mediasim
