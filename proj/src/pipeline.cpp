#include "mediasim/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <json.hpp>
#include <sstream>

#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"
#include "mediasim/hashing.hpp"
#include "mediasim/reports.hpp"

namespace fs = std::filesystem;

namespace mediasim {

Metric parse_metric(const std::string& s) {
  if (s == "vocab") return Metric::Vocabulary;
  if (s == "keywords") return Metric::Keywords;
  if (s == "minhash") return Metric::Minhash;
  throw ConfigError("unknown metric '" + s + "' (expected vocab, keywords or minhash)");
}

Algorithm parse_algorithm(const std::string& s) {
  if (s == "greedy") return Algorithm::Greedy;
  if (s == "ncut") return Algorithm::NormalizedCut;
  throw ConfigError("unknown partitioner '" + s + "' (expected greedy or ncut)");
}

std::string metric_key(Metric m) {
  switch (m) {
    case Metric::Vocabulary: return "vocab";
    case Metric::Keywords: return "keywords";
    case Metric::Minhash: return "minhash";
  }
  return {};
}

std::string algorithm_key(Algorithm a) { return a == Algorithm::Greedy ? "greedy" : "ncut"; }

std::string similarity_label(Metric m, Algorithm a) {
  std::string base;
  switch (m) {
    case Metric::Vocabulary: base = "Vocabulary"; break;
    case Metric::Keywords: base = "Topic: Keywords"; break;
    case Metric::Minhash: base = "Topic: Minhash"; break;
  }
  return a == Algorithm::NormalizedCut ? "Cluster " + base : base;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

const char* idf_key(IdfVariant v) { return v == IdfVariant::Smooth ? "smooth" : "raw"; }

const char* conductance_key(ConductanceAggregate a) {
  switch (a) {
    case ConductanceAggregate::VolumeWeightedMean: return "volume";
    case ConductanceAggregate::Mean: return "mean";
    case ConductanceAggregate::Max: return "max";
  }
  return "";
}

const char* ami_key(AmiNormalizer n) {
  switch (n) {
    case AmiNormalizer::Arithmetic: return "arithmetic";
    case AmiNormalizer::Geometric: return "geometric";
    case AmiNormalizer::Max: return "max";
    case AmiNormalizer::Min: return "min";
  }
  return "";
}

std::ifstream open_input(const std::string& stage, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(stage + ": file not found: " + path);
  return in;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs one stage, prefixing any failure with the stage name.
template <class F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  } catch (const DataError& e) {
    throw DataError(name + ": " + e.what());
  } catch (const ContractError& e) {
    throw ContractError(name + ": " + e.what());
  }
}

}  // namespace

std::string RunConfig::canonical() const {
  std::ostringstream s;
  s << "version=" << kVersion << '\n';
  s << "window_start=" << window_start << '\n' << "window_end=" << window_end << '\n';
  s << "utc_offset_hours=" << utc_offset_hours << '\n';
  s << "exclude_retweets=" << exclude_retweets << '\n' << "keep_mentions=" << keep_mentions << '\n';
  s << "metrics=";
  for (std::size_t i = 0; i < metrics.size(); ++i) s << (i ? "," : "") << metric_key(metrics[i]);
  s << '\n' << "idf=" << idf_key(idf) << '\n';
  s << "min_support=" << min_support << '\n' << "termset_max_size=" << termset_max_size << '\n';
  s << "bridging_min=" << bridging_min << '\n' << "active_days_only=" << active_days_only << '\n';
  s << "dump_topics=" << dump_topics << '\n';
  s << "seeds=";
  for (std::size_t i = 0; i < seeds.size(); ++i) s << (i ? "," : "") << seeds[i];
  s << '\n' << "link_threshold=" << link_threshold << '\n';
  s << "include_single_outlet_clusters=" << include_single_outlet_clusters << '\n';
  s << "algorithms=";
  for (std::size_t i = 0; i < algorithms.size(); ++i) s << (i ? "," : "") << algorithm_key(algorithms[i]);
  s << '\n' << "ncut_k=" << ncut_k << '\n' << "ncut_max_k=" << ncut_max_k << '\n';
  s << "conductance=" << conductance_key(conductance) << '\n' << "ami=" << ami_key(ami) << '\n';
  s << "master_seed=" << master_seed << '\n';
  return s.str();
}

IngestResult ingest(const IngestOptions& options) {
  IngestResult r;
  std::vector<Tweet> tweets;
  {
    auto in = open_input("ingest", options.corpus_path);
    tweets = read_tweet_archive(in);
  }
  r.tweets_read = tweets.size();

  Stopwords stopwords = default_spanish_stopwords();
  if (!options.stopwords_path.empty()) {
    auto in = open_input("ingest", options.stopwords_path);
    stopwords = read_stopwords(in);
  }

  Window window;
  if (options.window_start.empty() || options.window_end.empty()) {
    if (tweets.empty()) {
      throw DataError("empty archive and no window configured");
    }
    window = infer_window(tweets, options.utc_offset_hours);
  }
  if (!options.window_start.empty()) window.start = parse_date(options.window_start);
  if (!options.window_end.empty()) window.end = parse_date(options.window_end);

  auto corpus = make_corpus(std::move(tweets), window, options.exclude_retweets, options.utc_offset_hours);
  auto filtered = filter_active_outlets(corpus);
  r.corpus = std::move(filtered.corpus);
  r.removed_outlets = std::move(filtered.removed);
  r.outlets.assign(r.corpus.outlets.begin(), r.corpus.outlets.end());

  NormalizeOptions norm;
  norm.strip_mentions = !options.keep_mentions;
  r.docs = tokenize(r.corpus, stopwords, norm, options.utc_offset_hours);
  return r;
}

SimilarityResult compute_similarity(Metric metric, const IngestResult& data, const SimilarityOptions& options,
                                    bool keep_topic_models) {
  SimilarityResult r;
  switch (metric) {
    case Metric::Vocabulary:
      r.matrix = vocabulary_similarity(data.docs, data.outlets, options.idf);
      break;
    case Metric::Keywords:
      r.matrix = keyword_topic_similarity(partition_by_day(data.docs), data.outlets, data.corpus.window,
                                          options.keywords, keep_topic_models ? &r.topic_models : nullptr);
      break;
    case Metric::Minhash:
      r.clusters = cluster_topics(sketch_tweets(data.docs, options.seeds), options.link_threshold);
      r.matrix = cooccurrence_similarity(r.clusters, data.outlets, options.cooccurrence);
      break;
  }
  return r;
}

Partition partition_graph(Algorithm algorithm, const SimilarityGraph& g, std::size_t ncut_k,
                          std::size_t ncut_max_k) {
  if (algorithm == Algorithm::Greedy) return greedy_modularity(g);
  const std::size_t k = ncut_k ? ncut_k : eigengap_cluster_count(g, ncut_max_k);
  return normalized_cut(g, k);
}

fs::path run(const RunConfig& config) {
  // Inputs must exist before anything is written.
  stage("ingest", [&] {
    if (config.corpus_path.empty()) throw ConfigError("corpus path not set");
    open_input("file", config.corpus_path);
    if (!config.stopwords_path.empty()) open_input("file", config.stopwords_path);
  });
  stage("ownership", [&] {
    if (config.registry_path.empty()) throw ConfigError("registry path not set");
    if (!fs::exists(config.registry_path)) throw ConfigError("file not found: " + config.registry_path);
    if (!config.owner_graph_path.empty() && !fs::exists(config.owner_graph_path)) {
      throw ConfigError("file not found: " + config.owner_graph_path);
    }
  });
  if (config.metrics.empty() || config.algorithms.empty()) {
    throw ConfigError("config: at least one metric and one partitioner are required");
  }

  std::string identity = config.canonical();
  identity += "corpus=" + hex64(murmur64(read_bytes(config.corpus_path), 0)) + '\n';
  identity += "registry=" + hex64(murmur64(read_bytes(config.registry_path), 0)) + '\n';
  if (!config.owner_graph_path.empty()) {
    identity += "owner_graph=" + hex64(murmur64(read_bytes(config.owner_graph_path), 0)) + '\n';
  }
  if (!config.stopwords_path.empty()) {
    identity += "stopwords=" + hex64(murmur64(read_bytes(config.stopwords_path), 0)) + '\n';
  }
  const std::string config_hash = hex64(murmur64(identity, 0));

  IngestOptions io{config.corpus_path,      config.stopwords_path,  config.window_start, config.window_end,
                   config.utc_offset_hours, config.exclude_retweets, config.keep_mentions};
  const auto data = stage("ingest", [&] { return ingest(io); });

  const auto registry = stage("ownership", [&] {
    auto reg_in = open_input("ownership", config.registry_path);
    if (config.owner_graph_path.empty()) return load_registry(reg_in);
    auto graph_in = open_input("ownership", config.owner_graph_path);
    return load_registry(reg_in, &graph_in);
  });
  const auto truth = ground_truth_partition(registry, data.outlets);

  // Fresh directory per invocation.
  fs::create_directories(config.output_dir);
  fs::path dir = fs::path(config.output_dir) / ("run-" + config_hash);
  for (int n = 2; fs::exists(dir); ++n) {
    dir = fs::path(config.output_dir) / ("run-" + config_hash + "-" + std::to_string(n));
  }
  fs::create_directory(dir);

  std::vector<std::string> written;
  auto write = [&](const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    body(out);
    written.push_back(name);
  };

  write("ingest_summary.json", [&](std::ostream& out) {
    nlohmann::ordered_json j;
    j["tweets_read"] = data.tweets_read;
    j["tweets_retained"] = data.corpus.tweets.size();
    j["window_start"] = format_date(data.corpus.window.start);
    j["window_end"] = format_date(data.corpus.window.end);
    j["outlets_retained"] = data.outlets.size();
    j["outlets_removed"] = data.removed_outlets;
    out << j.dump(2) << '\n';
  });
  write("ground_truth.csv", [&](std::ostream& out) { write_partition_csv(out, truth); });

  SimilarityOptions so;
  so.idf = config.idf;
  so.keywords.mining.min_support = config.min_support;
  so.keywords.mining.max_size = config.termset_max_size;
  so.keywords.bridging_min = config.bridging_min;
  so.keywords.active_days_only = config.active_days_only;
  so.seeds = config.seeds;
  so.link_threshold = config.link_threshold;
  so.cooccurrence.include_single_outlet_clusters = config.include_single_outlet_clusters;

  std::vector<InternalMetricsRow> internal_rows;
  std::vector<EvaluationRow> eval_rows;

  for (Metric metric : config.metrics) {
    const auto key = metric_key(metric);
    const auto sim = stage("similarity:" + key, [&] {
      return compute_similarity(metric, data, so, config.dump_topics);
    });
    write("similarity_" + key + ".csv", [&](std::ostream& out) { write_matrix_csv(out, sim.matrix); });
    if (metric == Metric::Minhash) {
      write("clusters_minhash.jsonl", [&](std::ostream& out) { write_cluster_dump(out, sim.clusters); });
    }
    if (metric == Metric::Keywords && config.dump_topics) {
      write("topics_keywords.jsonl", [&](std::ostream& out) { write_topic_dump(out, sim.topic_models); });
    }

    const auto graph = stage("graph:" + key, [&] { return build_graph(sim.matrix); });
    write("graph_" + key + ".csv", [&](std::ostream& out) { write_edge_list_csv(out, graph); });
    write("graph_" + key + "_threshold.csv",
          [&](std::ostream& out) { write_edge_list_csv(out, threshold_edges(graph).graph); });

    for (Algorithm algo : config.algorithms) {
      if (algo == Algorithm::NormalizedCut && graph.size() < 2) {
        warn("partition: normalized cut skipped for " + key + " (fewer than two outlets)");
        continue;
      }
      const auto tag = key + "_" + algorithm_key(algo);
      const auto label = similarity_label(metric, algo);
      const auto part = stage("partition:" + tag, [&] {
        return partition_graph(algo, graph, config.ncut_k, config.ncut_max_k);
      });
      write("partition_" + tag + ".csv", [&](std::ostream& out) { write_partition_csv(out, part); });

      internal_rows.push_back(stage("report", [&] {
        return internal_metrics_report(label, graph, part, config.conductance);
      }));
      eval_rows.push_back({label, stage("evaluation:" + tag, [&] {
                             return evaluate(part, truth, registry, config.ami);
                           })});
      write("composition_" + tag + ".csv",
            [&](std::ostream& out) { write_composition_csv(out, ownership_composition(part, registry)); });
      write("flows_" + tag + ".csv",
            [&](std::ostream& out) { write_flows_csv(out, flow_export(part, truth, registry)); });
    }
  }

  write("internal_metrics.csv", [&](std::ostream& out) { write_internal_metrics_csv(out, internal_rows); });
  write("internal_metrics.txt", [&](std::ostream& out) { write_internal_metrics_text(out, internal_rows); });
  write("evaluation.csv", [&](std::ostream& out) { write_evaluation_csv(out, eval_rows); });
  write("evaluation.txt", [&](std::ostream& out) { write_evaluation_text(out, eval_rows); });
  write("evaluation.json", [&](std::ostream& out) { write_evaluation_json(out, eval_rows); });

  nlohmann::ordered_json manifest;
  manifest["version"] = kVersion;
  manifest["config_hash"] = config_hash;
  manifest["config"] = config.canonical();
  manifest["inputs"] = {{"corpus", config.corpus_path},
                        {"registry", config.registry_path},
                        {"owner_graph", config.owner_graph_path},
                        {"stopwords", config.stopwords_path}};
  auto seeds = nlohmann::ordered_json::array();
  for (auto s : config.seeds) seeds.push_back(hex64(s));
  manifest["minhash_seeds"] = seeds;
  manifest["master_seed"] = config.master_seed;
  std::sort(written.begin(), written.end());
  auto files = nlohmann::ordered_json::array();
  for (const auto& name : written) {
    const auto bytes = read_bytes(dir / name);
    files.push_back({{"name", name}, {"bytes", bytes.size()}, {"murmur64", hex64(murmur64(bytes, 0))}});
  }
  manifest["files"] = files;
  std::ofstream(dir / "manifest.json", std::ios::binary) << manifest.dump(2) << '\n';
  return dir;
}

}  // namespace mediasim
