#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mediasim/corpus.hpp"
#include "mediasim/evalx.hpp"
#include "mediasim/graphpart.hpp"
#include "mediasim/ownership.hpp"
#include "mediasim/simhash.hpp"
#include "mediasim/simtopic.hpp"
#include "mediasim/simvocab.hpp"

namespace mediasim {

inline constexpr const char* kVersion = "1.0.0";

enum class Metric { Vocabulary, Keywords, Minhash };
enum class Algorithm { Greedy, NormalizedCut };

Metric parse_metric(const std::string& s);         // vocab | keywords | minhash
Algorithm parse_algorithm(const std::string& s);   // greedy | ncut
std::string metric_key(Metric m);
std::string algorithm_key(Algorithm a);
/// Row label used in the report tables, e.g. "Topic: Minhash" or
/// "Cluster Topic: Minhash" for normalized-cut partitions.
std::string similarity_label(Metric m, Algorithm a);

struct RunConfig {
  std::string corpus_path;
  std::string registry_path;
  std::string owner_graph_path;  // optional
  std::string stopwords_path;    // optional; bundled Spanish list otherwise
  std::string window_start;      // optional YYYY-MM-DD; inferred from data otherwise
  std::string window_end;
  int utc_offset_hours = 0;
  bool exclude_retweets = false;
  bool keep_mentions = false;

  std::vector<Metric> metrics = {Metric::Vocabulary, Metric::Keywords, Metric::Minhash};
  IdfVariant idf = IdfVariant::Smooth;

  std::size_t min_support = 5;
  std::size_t termset_max_size = 5;
  std::size_t bridging_min = 1;
  bool active_days_only = false;
  bool dump_topics = false;

  SeedSet seeds = kDefaultSeeds;
  std::size_t link_threshold = 3;
  bool include_single_outlet_clusters = false;

  std::vector<Algorithm> algorithms = {Algorithm::Greedy, Algorithm::NormalizedCut};
  std::size_t ncut_k = 0;  // 0 picks k by eigengap
  std::size_t ncut_max_k = 16;
  ConductanceAggregate conductance = ConductanceAggregate::VolumeWeightedMean;
  AmiNormalizer ami = AmiNormalizer::Arithmetic;

  std::string output_dir = "runs";
  std::uint64_t master_seed = 0;

  /// Stable key=value rendering of every setting that affects outputs.
  std::string canonical() const;
};

// ---- stage helpers shared by `run` and the individual CLI subcommands ------

struct IngestOptions {
  std::string corpus_path;
  std::string stopwords_path;
  std::string window_start;
  std::string window_end;
  int utc_offset_hours = 0;
  bool exclude_retweets = false;
  bool keep_mentions = false;
};

struct IngestResult {
  Corpus corpus;  // filtered
  std::vector<std::string> removed_outlets;
  std::vector<std::string> outlets;  // sorted, retained
  std::vector<TokenDoc> docs;
  std::size_t tweets_read = 0;
};

IngestResult ingest(const IngestOptions& options);

struct SimilarityOptions {
  IdfVariant idf = IdfVariant::Smooth;
  KeywordOptions keywords;
  SeedSet seeds = kDefaultSeeds;
  std::size_t link_threshold = 3;
  CooccurrenceOptions cooccurrence;
};

struct SimilarityResult {
  SimilarityMatrix matrix;
  std::vector<DailyTopicModel> topic_models;  // keywords only
  std::vector<TopicCluster> clusters;         // minhash only
};

SimilarityResult compute_similarity(Metric metric, const IngestResult& data, const SimilarityOptions& options,
                                    bool keep_topic_models = false);

Partition partition_graph(Algorithm algorithm, const SimilarityGraph& g, std::size_t ncut_k = 0,
                          std::size_t ncut_max_k = 16);

/// Runs every stage and writes a fresh directory under output_dir, named
/// after the configuration hash. Returns its path.
std::filesystem::path run(const RunConfig& config);

}  // namespace mediasim
