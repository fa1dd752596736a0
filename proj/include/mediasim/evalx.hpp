#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mediasim/ownership.hpp"
#include "mediasim/partition.hpp"

namespace mediasim {

/// Rows are ground-truth classes, columns predicted communities.
struct ContingencyTable {
  std::vector<std::vector<std::int64_t>> cells;
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  /// Classes and clusters are indexed by first appearance.
  static ContingencyTable from_labels(const std::vector<int>& truth, const std::vector<int>& pred);
};

struct EvalInput {
  std::vector<std::string> outlets;
  std::vector<int> truth;
  std::vector<int> pred;
  std::size_t dropped_unknown = 0;
  std::size_t dropped_single_outlet_owner = 0;
};

/// Drops UNKNOWN-owner outlets, then outlets whose owner has a single outlet
/// left, then gives each remaining kUngrouped outlet its own community.
/// Throws DataError("no evaluable outlets") when nothing survives.
EvalInput prepare_for_eval(const Partition& pred, const Partition& truth, const Registry& registry);

/// Adjusted Rand index; 1.0 when the index and its expectation both equal the
/// maximum.
double ari(const ContingencyTable& t);

enum class AmiNormalizer { Arithmetic, Geometric, Max, Min };

struct InformationScores {
  double nmi = 0.0;
  double ami = 0.0;
  double homogeneity = 0.0;
  double completeness = 0.0;
};

double entropy(const std::vector<std::int64_t>& counts);
double mutual_information(const ContingencyTable& t);
/// E[MI] under the hypergeometric (fixed margins) model.
double expected_mutual_information(const ContingencyTable& t);

InformationScores mutual_information_family(const ContingencyTable& t,
                                            AmiNormalizer normalizer = AmiNormalizer::Arithmetic);

struct EvalReport {
  std::size_t outlets = 0;
  std::size_t communities = 0;
  double ari = 0.0;
  double ami = 0.0;
  double nmi = 0.0;
  double hom = 0.0;
  double com = 0.0;
  ContingencyTable table;
};

EvalReport evaluate(const Partition& pred, const Partition& truth, const Registry& registry,
                    AmiNormalizer normalizer = AmiNormalizer::Arithmetic);

}  // namespace mediasim
