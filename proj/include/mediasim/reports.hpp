#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mediasim/evalx.hpp"
#include "mediasim/graphpart.hpp"
#include "mediasim/ownership.hpp"
#include "mediasim/partition.hpp"

namespace mediasim {

// ---- internal community metrics ------------------------------------------

struct InternalMetricsRow {
  std::string similarity;
  std::size_t outlets = 0;
  std::size_t grouped = 0;
  std::size_t communities = 0;
  double modularity = 0.0;
  double conductance = 0.0;
};

inline const std::vector<std::string> kInternalMetricsColumns = {"Similarity", "Outlets", "Grouped",
                                                                 "Comm.",      "Mod.",    "Cond."};

/// Modularity and conductance are taken on the subgraph of grouped outlets.
InternalMetricsRow internal_metrics_report(const std::string& similarity, const SimilarityGraph& g,
                                           const Partition& p,
                                           ConductanceAggregate aggregate = ConductanceAggregate::VolumeWeightedMean);

void write_internal_metrics_csv(std::ostream& out, const std::vector<InternalMetricsRow>& rows);
void write_internal_metrics_text(std::ostream& out, const std::vector<InternalMetricsRow>& rows);

// ---- external evaluation --------------------------------------------------

struct EvaluationRow {
  std::string similarity;
  EvalReport report;
};

inline const std::vector<std::string> kEvaluationColumns = {"Similarity", "Outlets", "Comm.", "ARI",
                                                            "AMI",        "NMI",     "Hom",   "Com"};

void write_evaluation_csv(std::ostream& out, const std::vector<EvaluationRow>& rows);
void write_evaluation_text(std::ostream& out, const std::vector<EvaluationRow>& rows);
// Scores plus full contingency tables.
void write_evaluation_json(std::ostream& out, const std::vector<EvaluationRow>& rows);

// ---- ownership composition -------------------------------------------------

struct OwnerPresence {
  std::string owner;
  double percent = 0.0;
  std::size_t count = 0;
};

struct CompositionRow {
  int community = 0;
  std::size_t size = 0;
  std::vector<OwnerPresence> owners;  // owners above 10% of the community
  double unknown_percent = 0.0;
  std::size_t unknown_count = 0;
};

inline const std::vector<std::string> kCompositionColumns = {"ID", "Size", "Main owner(s)",
                                                             "Owner(s)% [#]", "Unk. owner % [#]"};

std::vector<CompositionRow> ownership_composition(const Partition& p, const Registry& registry);
void write_composition_csv(std::ostream& out, const std::vector<CompositionRow>& rows);

// ---- owner -> community flows ------------------------------------------------

struct FlowRecord {
  std::string owner;
  int community = 0;
  std::size_t outlets = 0;

  bool operator==(const FlowRecord&) const = default;
};

/// One record per (owner, community) pair sharing outlets. Owner names come
/// from the registry; truth classes without a known owner are "UNKNOWN".
std::vector<FlowRecord> flow_export(const Partition& pred, const Partition& truth, const Registry& registry);
void write_flows_csv(std::ostream& out, const std::vector<FlowRecord>& flows);

}  // namespace mediasim
