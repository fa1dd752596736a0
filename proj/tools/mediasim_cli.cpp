// mediasim command-line front end.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mediasim/csv.hpp"
#include "mediasim/error.hpp"
#include "mediasim/pipeline.hpp"
#include "mediasim/reports.hpp"
#include "mediasim/synth.hpp"

namespace ms = mediasim;

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kData = 3, kInternal = 4 };

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = ms::csv::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ms::ConfigError("file not found: " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ms::ConfigError("cannot write: " + path);
  return out;
}

// key=value lines become --key=value tokens placed before the user's own
// arguments, so the command line wins.
std::vector<std::string> config_tokens(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::string> tokens;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = ms::csv::trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ms::ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = ms::csv::trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    tokens.push_back("--" + key + "=" + ms::csv::trim(line.substr(eq + 1)));
  }
  return tokens;
}

std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string config_path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config_path.empty() || rest.empty()) return rest;
  auto tokens = config_tokens(config_path);
  rest.insert(rest.begin() + 1, tokens.begin(), tokens.end());
  return rest;
}

struct CommonInputs {
  std::string corpus;
  std::string stopwords;
  std::string window_start;
  std::string window_end;
  int utc_offset = 0;
  bool exclude_retweets = false;
  bool keep_mentions = false;

  void attach(CLI::App* app, bool corpus_required) {
    auto* c = app->add_option("--corpus", corpus, "Tweet archive (JSON lines)");
    if (corpus_required) c->required();
    app->add_option("--stopwords", stopwords, "Stopword list, one per line");
    app->add_option("--window-start", window_start, "First day, YYYY-MM-DD");
    app->add_option("--window-end", window_end, "Last day, YYYY-MM-DD");
    app->add_option("--utc-offset", utc_offset, "Hours added to UTC before day bucketing");
    app->add_flag("--exclude-retweets", exclude_retweets, "Drop retweets before anything else");
    app->add_flag("--keep-mentions", keep_mentions, "Keep @-mentions as tokens");
  }

  ms::IngestOptions options() const {
    return {corpus, stopwords, window_start, window_end, utc_offset, exclude_retweets, keep_mentions};
  }
};

struct SimilarityInputs {
  std::string idf = "smooth";
  std::size_t min_support = 5;
  std::size_t max_size = 5;
  std::size_t bridging_min = 1;
  bool active_days_only = false;
  std::size_t link_threshold = 3;
  bool single_outlet_clusters = false;
  std::string seeds;

  void attach(CLI::App* app) {
    app->add_option("--idf", idf, "smooth or raw")->check(CLI::IsMember({"smooth", "raw"}));
    app->add_option("--min-support", min_support, "Keyword mining support threshold");
    app->add_option("--termset-max-size", max_size, "Largest mined term-set");
    app->add_option("--bridging-min", bridging_min, "Bridging tweets needed to merge term-sets");
    app->add_flag("--active-days-only", active_days_only, "Average keyword cosines over shared active days");
    app->add_option("--link-threshold", link_threshold, "Matching minhash components to link tweets");
    app->add_flag("--include-single-outlet-clusters", single_outlet_clusters,
                 "Count single-outlet topics in the co-occurrence denominators");
    app->add_option("--seeds", seeds, "Four comma-separated minhash seeds");
  }

  ms::SimilarityOptions options() const {
    ms::SimilarityOptions o;
    o.idf = idf == "raw" ? ms::IdfVariant::Raw : ms::IdfVariant::Smooth;
    o.keywords.mining.min_support = min_support;
    o.keywords.mining.max_size = max_size;
    o.keywords.bridging_min = bridging_min;
    o.keywords.active_days_only = active_days_only;
    o.link_threshold = link_threshold;
    o.cooccurrence.include_single_outlet_clusters = single_outlet_clusters;
    if (!seeds.empty()) {
      const auto parts = split_list(seeds);
      if (parts.size() != ms::kSignatureSize) throw ms::ConfigError("--seeds needs exactly four values");
      for (std::size_t i = 0; i < parts.size(); ++i) {
        try {
          std::size_t used = 0;
          o.seeds[i] = std::stoull(parts[i], &used, 0);
          if (used != parts[i].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
          throw ms::ConfigError("bad seed '" + parts[i] + "'");
        }
      }
    }
    return o;
  }
};

ms::ConductanceAggregate parse_conductance(const std::string& s) {
  if (s == "mean") return ms::ConductanceAggregate::Mean;
  if (s == "max") return ms::ConductanceAggregate::Max;
  return ms::ConductanceAggregate::VolumeWeightedMean;
}

ms::AmiNormalizer parse_ami(const std::string& s) {
  if (s == "geometric") return ms::AmiNormalizer::Geometric;
  if (s == "max") return ms::AmiNormalizer::Max;
  if (s == "min") return ms::AmiNormalizer::Min;
  return ms::AmiNormalizer::Arithmetic;
}

ms::Registry load_registry_files(const std::string& registry, const std::string& graph) {
  auto reg = open_in(registry);
  if (graph.empty()) return ms::load_registry(reg);
  auto g = open_in(graph);
  return ms::load_registry(reg, &g);
}

ms::SimilarityMatrix load_matrix(const std::string& path) {
  auto in = open_in(path);
  return ms::read_matrix_csv(in);
}

ms::Partition load_partition(const std::string& path) {
  auto in = open_in(path);
  return ms::read_partition_csv(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Media ownership discovery from outlet tweet streams"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", ms::kVersion);
  app.footer("Every subcommand also takes --config FILE: key=value lines (e.g. min_support=5) that act as\n"
             "defaults for the matching --key options. Flags given on the command line win.");

  // ingest
  auto* ingest_cmd = app.add_subcommand("ingest", "Load, window and filter a tweet archive");
  CommonInputs ingest_in;
  std::string ingest_out;
  ingest_in.attach(ingest_cmd, true);
  ingest_cmd->add_option("--out", ingest_out, "Write the retained tweets here");

  // similarity
  auto* sim_cmd = app.add_subcommand("similarity", "Compute an outlet similarity matrix");
  CommonInputs sim_in;
  SimilarityInputs sim_opts;
  std::string sim_metric = "minhash";
  std::string sim_out;
  std::string sim_dump;
  sim_in.attach(sim_cmd, true);
  sim_opts.attach(sim_cmd);
  sim_cmd->add_option("--metric", sim_metric, "vocab, keywords or minhash")
      ->check(CLI::IsMember({"vocab", "keywords", "minhash"}));
  sim_cmd->add_option("--out", sim_out, "Matrix CSV")->required();
  sim_cmd->add_option("--dump", sim_dump, "Topic or cluster dump (JSON lines)");

  // partition
  auto* part_cmd = app.add_subcommand("partition", "Partition a similarity graph");
  std::string part_sim;
  std::string part_algo = "greedy";
  std::size_t part_k = 0;
  std::size_t part_max_k = 16;
  std::string part_out;
  std::string part_edges;
  part_cmd->add_option("--similarity", part_sim, "Matrix CSV")->required();
  part_cmd->add_option("--algo", part_algo, "greedy or ncut")->check(CLI::IsMember({"greedy", "ncut"}));
  part_cmd->add_option("--k", part_k, "Normalized-cut parts (0 = eigengap)");
  part_cmd->add_option("--max-k", part_max_k, "Eigengap search cap");
  part_cmd->add_option("--out", part_out, "Partition CSV")->required();
  part_cmd->add_option("--edges", part_edges, "Also write the edge list");

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a partition against ownership");
  std::string eval_part;
  std::string eval_registry;
  std::string eval_graph;
  std::string eval_label = "partition";
  std::string eval_ami = "arithmetic";
  std::string eval_json;
  eval_cmd->add_option("--partition", eval_part, "Partition CSV")->required();
  eval_cmd->add_option("--registry", eval_registry, "Ownership registry CSV")->required();
  eval_cmd->add_option("--owner-graph", eval_graph, "Parent,child owner pairs");
  eval_cmd->add_option("--label", eval_label, "Row label");
  eval_cmd->add_option("--ami", eval_ami)->check(CLI::IsMember({"arithmetic", "geometric", "max", "min"}));
  eval_cmd->add_option("--json", eval_json, "Also write JSON with the contingency table");

  // report
  auto* report_cmd = app.add_subcommand("report", "Internal metrics and ownership composition");
  std::string rep_sim;
  std::string rep_part;
  std::string rep_registry;
  std::string rep_graph;
  std::string rep_label = "partition";
  std::string rep_cond = "volume";
  std::string rep_composition;
  std::string rep_flows;
  report_cmd->add_option("--similarity", rep_sim, "Matrix CSV")->required();
  report_cmd->add_option("--partition", rep_part, "Partition CSV")->required();
  report_cmd->add_option("--registry", rep_registry, "Ownership registry CSV");
  report_cmd->add_option("--owner-graph", rep_graph, "Parent,child owner pairs");
  report_cmd->add_option("--label", rep_label, "Row label");
  report_cmd->add_option("--conductance", rep_cond)->check(CLI::IsMember({"volume", "mean", "max"}));
  report_cmd->add_option("--composition", rep_composition, "Composition CSV (needs --registry)");
  report_cmd->add_option("--flows", rep_flows, "Owner to community flows CSV (needs --registry)");

  // synth
  auto* synth_cmd = app.add_subcommand("synth", "Generate a corpus with planted ownership");
  ms::SynthConfig synth;
  std::string synth_dir;
  synth_cmd->add_option("--out-dir", synth_dir, "Writes corpus.jsonl and registry.csv here")->required();
  synth_cmd->add_option("--owners", synth.owners);
  synth_cmd->add_option("--outlets-per-owner", synth.outlets_per_owner);
  synth_cmd->add_option("--days", synth.days);
  synth_cmd->add_option("--stories", synth.stories_per_owner_per_day);
  synth_cmd->add_option("--noise", synth.noise)->check(CLI::Range(0.0, 1.0));
  synth_cmd->add_option("--background", synth.background_per_outlet_per_day);
  synth_cmd->add_option("--regions", synth.regions);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--start-date", synth.start_date);

  // run
  auto* run_cmd = app.add_subcommand("run", "Full pipeline into a fresh run directory");
  CommonInputs run_in;
  SimilarityInputs run_sim;
  ms::RunConfig rc;
  std::string run_metrics = "vocab,keywords,minhash";
  std::string run_algos = "greedy,ncut";
  std::string run_cond = "volume";
  std::string run_ami = "arithmetic";
  run_in.attach(run_cmd, true);
  run_sim.attach(run_cmd);
  run_cmd->add_option("--registry", rc.registry_path, "Ownership registry CSV")->required();
  run_cmd->add_option("--owner-graph", rc.owner_graph_path, "Parent,child owner pairs");
  run_cmd->add_option("--metrics", run_metrics, "Comma list of vocab, keywords, minhash");
  run_cmd->add_option("--algorithms", run_algos, "Comma list of greedy, ncut");
  run_cmd->add_option("--ncut-k", rc.ncut_k, "Normalized-cut parts (0 = eigengap)");
  run_cmd->add_option("--ncut-max-k", rc.ncut_max_k, "Eigengap search cap");
  run_cmd->add_option("--conductance", run_cond)->check(CLI::IsMember({"volume", "mean", "max"}));
  run_cmd->add_option("--ami", run_ami)->check(CLI::IsMember({"arithmetic", "geometric", "max", "min"}));
  run_cmd->add_flag("--dump-topics", rc.dump_topics, "Write the daily keyword topics");
  run_cmd->add_option("--output-dir", rc.output_dir, "Parent of the run directory");
  run_cmd->add_option("--master-seed", rc.master_seed, "Recorded in the manifest");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  } catch (const ms::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }

  try {
    if (*ingest_cmd) {
      auto data = ms::ingest(ingest_in.options());
      nlohmann::ordered_json j;
      j["tweets_read"] = data.tweets_read;
      j["tweets_retained"] = data.corpus.tweets.size();
      j["window_start"] = ms::format_date(data.corpus.window.start);
      j["window_end"] = ms::format_date(data.corpus.window.end);
      j["outlets"] = data.outlets;
      j["removed_outlets"] = data.removed_outlets;
      std::cout << j.dump(2) << '\n';
      if (!ingest_out.empty()) {
        auto out = open_out(ingest_out);
        ms::write_tweet_archive(out, data.corpus.tweets);
      }
    } else if (*sim_cmd) {
      const auto metric = ms::parse_metric(sim_metric);
      auto data = ms::ingest(sim_in.options());
      auto result = ms::compute_similarity(metric, data, sim_opts.options(), !sim_dump.empty());
      auto out = open_out(sim_out);
      ms::write_matrix_csv(out, result.matrix);
      if (!sim_dump.empty()) {
        auto dump = open_out(sim_dump);
        if (metric == ms::Metric::Keywords) ms::write_topic_dump(dump, result.topic_models);
        if (metric == ms::Metric::Minhash) ms::write_cluster_dump(dump, result.clusters);
      }
    } else if (*part_cmd) {
      auto g = ms::build_graph(load_matrix(part_sim));
      auto p = ms::partition_graph(ms::parse_algorithm(part_algo), g, part_k, part_max_k);
      auto out = open_out(part_out);
      ms::write_partition_csv(out, p);
      if (!part_edges.empty()) {
        auto edges = open_out(part_edges);
        ms::write_edge_list_csv(edges, g);
      }
    } else if (*eval_cmd) {
      auto pred = load_partition(eval_part);
      auto registry = load_registry_files(eval_registry, eval_graph);
      auto truth = ms::ground_truth_partition(registry, pred.outlets());
      std::vector<ms::EvaluationRow> rows{{eval_label, ms::evaluate(pred, truth, registry, parse_ami(eval_ami))}};
      ms::write_evaluation_text(std::cout, rows);
      if (!eval_json.empty()) {
        auto out = open_out(eval_json);
        ms::write_evaluation_json(out, rows);
      }
    } else if (*report_cmd) {
      auto g = ms::build_graph(load_matrix(rep_sim));
      auto p = load_partition(rep_part);
      std::vector<ms::InternalMetricsRow> rows{
          ms::internal_metrics_report(rep_label, g, p, parse_conductance(rep_cond))};
      ms::write_internal_metrics_text(std::cout, rows);
      if ((!rep_composition.empty() || !rep_flows.empty()) && rep_registry.empty()) {
        throw ms::ConfigError("--composition and --flows need --registry");
      }
      if (!rep_registry.empty()) {
        auto registry = load_registry_files(rep_registry, rep_graph);
        if (!rep_composition.empty()) {
          auto out = open_out(rep_composition);
          ms::write_composition_csv(out, ms::ownership_composition(p, registry));
        }
        if (!rep_flows.empty()) {
          auto truth = ms::ground_truth_partition(registry, p.outlets());
          auto out = open_out(rep_flows);
          ms::write_flows_csv(out, ms::flow_export(p, truth, registry));
        }
      }
    } else if (*synth_cmd) {
      auto data = ms::generate_synthetic(synth);
      std::filesystem::create_directories(synth_dir);
      auto corpus = open_out((std::filesystem::path(synth_dir) / "corpus.jsonl").string());
      ms::write_tweet_archive(corpus, data.tweets);
      auto registry = open_out((std::filesystem::path(synth_dir) / "registry.csv").string());
      ms::write_registry_csv(registry, data.registry);
      std::cout << data.tweets.size() << " tweets, " << data.registry.size() << " outlets\n";
    } else if (*run_cmd) {
      rc.corpus_path = run_in.corpus;
      rc.stopwords_path = run_in.stopwords;
      rc.window_start = run_in.window_start;
      rc.window_end = run_in.window_end;
      rc.utc_offset_hours = run_in.utc_offset;
      rc.exclude_retweets = run_in.exclude_retweets;
      rc.keep_mentions = run_in.keep_mentions;
      const auto so = run_sim.options();
      rc.idf = so.idf;
      rc.min_support = so.keywords.mining.min_support;
      rc.termset_max_size = so.keywords.mining.max_size;
      rc.bridging_min = so.keywords.bridging_min;
      rc.active_days_only = so.keywords.active_days_only;
      rc.link_threshold = so.link_threshold;
      rc.include_single_outlet_clusters = so.cooccurrence.include_single_outlet_clusters;
      rc.seeds = so.seeds;
      rc.metrics.clear();
      for (const auto& m : split_list(run_metrics)) rc.metrics.push_back(ms::parse_metric(m));
      rc.algorithms.clear();
      for (const auto& a : split_list(run_algos)) rc.algorithms.push_back(ms::parse_algorithm(a));
      rc.conductance = parse_conductance(run_cond);
      rc.ami = parse_ami(run_ami);
      const auto dir = ms::run(rc);
      std::cout << dir.string() << '\n';
    }
  } catch (const ms::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const ms::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const ms::ContractError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}
