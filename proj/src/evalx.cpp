#include "mediasim/evalx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

ContingencyTable ContingencyTable::from_labels(const std::vector<int>& truth,
                                               const std::vector<int>& pred) {
  if (truth.size() != pred.size()) throw ContractError("contingency table: label vectors differ in size");
  std::map<int, std::size_t> rows, cols;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!rows.count(truth[i])) rows.emplace(truth[i], rows.size());
    if (!cols.count(pred[i])) cols.emplace(pred[i], cols.size());
  }
  ContingencyTable t;
  t.cells.assign(rows.size(), std::vector<std::int64_t>(cols.size(), 0));
  t.row_sums.assign(rows.size(), 0);
  t.col_sums.assign(cols.size(), 0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto r = rows[truth[i]], c = cols[pred[i]];
    ++t.cells[r][c];
    ++t.row_sums[r];
    ++t.col_sums[c];
  }
  t.total = static_cast<std::int64_t>(truth.size());
  return t;
}

EvalInput prepare_for_eval(const Partition& pred, const Partition& truth, const Registry& registry) {
  if (pred.size() != truth.size()) {
    throw ContractError("prepare_for_eval: partitions cover different outlets");
  }
  for (const auto& o : pred.outlets()) {
    if (!truth.contains(o)) throw ContractError("prepare_for_eval: '" + o + "' missing from ground truth");
  }

  EvalInput in;
  // Rule 1: known owners only.
  std::vector<std::string> known;
  std::map<std::string, std::size_t> outlets_per_owner;
  for (const auto& o : pred.outlets()) {
    const auto* rec = registry.find(o);
    if (!rec || !rec->resolved_owner) {
      ++in.dropped_unknown;
      continue;
    }
    known.push_back(o);
    ++outlets_per_owner[*rec->resolved_owner];
  }
  // Rule 2: owners with a single outlet in what is left.
  int next_label = pred.max_label() + 1;
  for (const auto& o : known) {
    if (outlets_per_owner[*registry.find(o)->resolved_owner] < 2) {
      ++in.dropped_single_outlet_owner;
      continue;
    }
    in.outlets.push_back(o);
    in.truth.push_back(truth.label_of(o));
    // Rule 3: un-grouped outlets become singleton communities.
    const int l = pred.label_of(o);
    in.pred.push_back(l == kUngrouped ? next_label++ : l);
  }
  if (in.outlets.empty()) throw DataError("no evaluable outlets");
  return in;
}

namespace {

double choose2(std::int64_t x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

}  // namespace

double ari(const ContingencyTable& t) {
  if (t.total < 2) return 1.0;
  double index = 0.0, rows = 0.0, cols = 0.0;
  for (const auto& r : t.cells) {
    for (auto c : r) index += choose2(c);
  }
  for (auto a : t.row_sums) rows += choose2(a);
  for (auto b : t.col_sums) cols += choose2(b);
  const double expected = rows * cols / choose2(t.total);
  const double max_index = 0.5 * (rows + cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double entropy(const std::vector<std::int64_t>& counts) {
  double n = 0.0;
  for (auto c : counts) n += static_cast<double>(c);
  if (n == 0.0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return std::max(0.0, h);
}

double mutual_information(const ContingencyTable& t) {
  const auto n = static_cast<double>(t.total);
  double mi = 0.0;
  for (std::size_t i = 0; i < t.cells.size(); ++i) {
    for (std::size_t j = 0; j < t.cells[i].size(); ++j) {
      const auto nij = static_cast<double>(t.cells[i][j]);
      if (nij == 0.0) continue;
      mi += nij / n * std::log(n * nij / (static_cast<double>(t.row_sums[i]) * static_cast<double>(t.col_sums[j])));
    }
  }
  return std::max(0.0, mi);
}

double expected_mutual_information(const ContingencyTable& t) {
  const std::int64_t n = t.total;
  const double nd = static_cast<double>(n);
  const double lg_n = std::lgamma(nd + 1.0);
  double emi = 0.0;
  for (auto a : t.row_sums) {
    for (auto b : t.col_sums) {
      const std::int64_t lo = std::max<std::int64_t>(1, a + b - n);
      const std::int64_t hi = std::min(a, b);
      const double ad = static_cast<double>(a), bd = static_cast<double>(b);
      const double fixed = std::lgamma(ad + 1.0) + std::lgamma(bd + 1.0) + std::lgamma(nd - ad + 1.0) +
                           std::lgamma(nd - bd + 1.0) - lg_n;
      for (std::int64_t nij = lo; nij <= hi; ++nij) {
        const double x = static_cast<double>(nij);
        const double log_p = fixed - std::lgamma(x + 1.0) - std::lgamma(ad - x + 1.0) -
                             std::lgamma(bd - x + 1.0) - std::lgamma(nd - ad - bd + x + 1.0);
        emi += x / nd * std::log(nd * x / (ad * bd)) * std::exp(log_p);
      }
    }
  }
  return emi;
}

InformationScores mutual_information_family(const ContingencyTable& t, AmiNormalizer normalizer) {
  InformationScores s;
  const double h_truth = entropy(t.row_sums);
  const double h_pred = entropy(t.col_sums);
  const double mi = mutual_information(t);

  constexpr double kZero = 1e-15;
  const bool truth_degenerate = h_truth < kZero;
  const bool pred_degenerate = h_pred < kZero;

  if (truth_degenerate && pred_degenerate) {
    s.nmi = 1.0;
  } else if (truth_degenerate || pred_degenerate) {
    s.nmi = 0.0;  // MI is 0 when either side carries no information
  } else {
    s.nmi = std::clamp(mi / std::sqrt(h_truth * h_pred), 0.0, 1.0);
  }

  if (truth_degenerate) {
    warn("evaluation: ground truth has a single class; homogeneity set to 1");
    s.homogeneity = 1.0;
  } else {
    s.homogeneity = std::clamp(mi / h_truth, 0.0, 1.0);  // 1 - H(C|K)/H(C)
  }
  if (pred_degenerate) {
    warn("evaluation: prediction has a single community; completeness set to 1");
    s.completeness = 1.0;
  } else {
    s.completeness = std::clamp(mi / h_pred, 0.0, 1.0);  // 1 - H(K|C)/H(K)
  }

  double norm = 0.0;
  switch (normalizer) {
    case AmiNormalizer::Arithmetic: norm = 0.5 * (h_truth + h_pred); break;
    case AmiNormalizer::Geometric: norm = std::sqrt(h_truth * h_pred); break;
    case AmiNormalizer::Max: norm = std::max(h_truth, h_pred); break;
    case AmiNormalizer::Min: norm = std::min(h_truth, h_pred); break;
  }
  const double emi = expected_mutual_information(t);
  const double denom = norm - emi;
  if (std::abs(denom) < 1e-12) {
    s.ami = 1.0;
  } else {
    s.ami = std::min(1.0, (mi - emi) / denom);
  }
  return s;
}

EvalReport evaluate(const Partition& pred, const Partition& truth, const Registry& registry,
                    AmiNormalizer normalizer) {
  const auto in = prepare_for_eval(pred, truth, registry);
  EvalReport r;
  r.table = ContingencyTable::from_labels(in.truth, in.pred);
  r.outlets = in.outlets.size();
  r.communities = r.table.col_sums.size();
  r.ari = ari(r.table);
  const auto info = mutual_information_family(r.table, normalizer);
  r.ami = info.ami;
  r.nmi = info.nmi;
  r.hom = info.homogeneity;
  r.com = info.completeness;
  return r;
}

}  // namespace mediasim
