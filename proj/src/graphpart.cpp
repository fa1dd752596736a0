#include "mediasim/graphpart.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>

#include "mediasim/csv.hpp"
#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

SimilarityGraph::SimilarityGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)), weights_(nodes_.size() * nodes_.size(), 0.0) {}

void SimilarityGraph::set_weight(std::size_t i, std::size_t j, double w) {
  if (i == j) throw ContractError("similarity graph: self-loops are not allowed");
  if (w < 0.0) throw ContractError("similarity graph: negative edge weight");
  weights_[i * size() + j] = w;
  weights_[j * size() + i] = w;
}

double SimilarityGraph::degree(std::size_t i) const {
  double d = 0.0;
  for (std::size_t j = 0; j < size(); ++j) d += weight(i, j);
  return d;
}

double SimilarityGraph::total_weight() const {
  double w = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) w += weight(i, j);
  }
  return w;
}

std::vector<Edge> SimilarityGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (weight(i, j) > 0.0) out.push_back({i, j, weight(i, j)});
    }
  }
  return out;
}

SimilarityGraph build_graph(const SimilarityMatrix& s) {
  if (!s.is_symmetric(1e-12)) throw ContractError("build_graph: similarity matrix is not symmetric");
  SimilarityGraph g(s.labels());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (s(i, j) < 0.0 || std::isnan(s(i, j))) {
        throw ContractError("build_graph: negative similarity between '" + s.labels()[i] + "' and '" +
                            s.labels()[j] + "'");
      }
    }
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s(i, j) > 0.0) g.set_weight(i, j, s(i, j));
    }
  }
  return g;
}

SimilarityGraph induced_subgraph(const SimilarityGraph& g, const std::vector<std::size_t>& nodes) {
  std::vector<std::string> names;
  for (auto v : nodes) names.push_back(g.nodes()[v]);
  SimilarityGraph sub(std::move(names));
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (double w = g.weight(nodes[a], nodes[b]); w > 0.0) sub.set_weight(a, b, w);
    }
  }
  return sub;
}

ThresholdResult threshold_edges(const SimilarityGraph& g) {
  // Statistics run over every node pair of the complete graph, zeros included.
  const std::size_t n = g.size();
  ThresholdResult r{SimilarityGraph(g.nodes()), 0.0};
  if (n < 2) return r;
  const double pairs = static_cast<double>(n * (n - 1) / 2);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) mean += g.weight(i, j);
  }
  mean /= pairs;
  double var = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) var += (g.weight(i, j) - mean) * (g.weight(i, j) - mean);
  }
  var /= pairs;
  r.threshold = mean + 2.0 * std::sqrt(var);
  for (const auto& e : g.edges()) {
    if (e.weight > r.threshold) r.graph.set_weight(e.source, e.target, e.weight);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Greedy modularity agglomeration

Partition greedy_modularity(const SimilarityGraph& g) {
  const std::size_t n = g.size();
  const double total = g.total_weight();
  if (n == 0 || total == 0.0) return Partition(g.nodes(), std::vector<int>(n, kUngrouped));

  // between[c * n + d]: edge weight between communities c and d.
  std::vector<double> between(n * n);
  std::vector<double> share(n);  // vol(c) / 2W
  std::vector<bool> alive(n, true);
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) between[i * n + j] = g.weight(i, j);
    share[i] = g.degree(i) / (2.0 * total);
    q -= share[i] * share[i];
  }

  constexpr double kTieTolerance = 1e-12;
  std::vector<std::pair<std::size_t, std::size_t>> merges;
  double best_q = q;
  std::size_t best_step = 0;

  for (;;) {
    double best_gain = 0.0;
    std::size_t bc = n, bd = n;
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c]) continue;
      for (std::size_t d = c + 1; d < n; ++d) {
        if (!alive[d] || between[c * n + d] <= 0.0) continue;
        const double gain = between[c * n + d] / total - 2.0 * share[c] * share[d];
        if (bc == n || gain > best_gain + kTieTolerance) {
          best_gain = gain;
          bc = c;
          bd = d;
        }
      }
    }
    if (bc == n) break;

    for (std::size_t x = 0; x < n; ++x) {
      if (!alive[x] || x == bc || x == bd) continue;
      between[bc * n + x] += between[bd * n + x];
      between[x * n + bc] = between[bc * n + x];
    }
    between[bc * n + bc] += between[bd * n + bd] + between[bc * n + bd];
    share[bc] += share[bd];
    alive[bd] = false;
    q += best_gain;
    merges.emplace_back(bc, bd);
    if (q > best_q + kTieTolerance) {
      best_q = q;
      best_step = merges.size();
    }
  }

  std::vector<int> raw(n);
  std::iota(raw.begin(), raw.end(), 0);
  for (std::size_t s = 0; s < best_step; ++s) {
    const int from = static_cast<int>(merges[s].second), to = static_cast<int>(merges[s].first);
    for (auto& l : raw) {
      if (l == from) l = to;
    }
  }
  return Partition(g.nodes(), canonical_community_labels(raw));
}

// ---------------------------------------------------------------------------
// Normalized cut

namespace {

std::vector<std::vector<std::size_t>> connected_components(const SimilarityGraph& g,
                                                           const std::vector<std::size_t>& nodes) {
  std::vector<std::vector<std::size_t>> comps;
  std::vector<bool> seen(nodes.size(), false);
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp, stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      comp.push_back(nodes[u]);
      for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (!seen[v] && g.weight(nodes[u], nodes[v]) > 0.0) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

struct Split {
  std::vector<std::size_t> first, second;
  double ncut = 0.0;
};

// Shi-Malik: sweep the generalized Fiedler vector D^-1/2 v of the normalized
// Laplacian and keep the threshold cut with the smallest ncut.
Split best_bisection(const SimilarityGraph& g, const std::vector<std::size_t>& part) {
  const auto comps = connected_components(g, part);
  if (comps.size() > 1) {
    Split s;
    s.first = comps.front();
    for (std::size_t c = 1; c < comps.size(); ++c) {
      s.second.insert(s.second.end(), comps[c].begin(), comps[c].end());
    }
    std::sort(s.second.begin(), s.second.end());
    return s;
  }

  const std::size_t m = part.size();
  Eigen::VectorXd deg(m);
  Eigen::MatrixXd lap(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    double d = 0.0;
    for (std::size_t b = 0; b < m; ++b) d += g.weight(part[a], part[b]);
    deg(a) = d;
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const double w = g.weight(part[a], part[b]) / std::sqrt(deg(a) * deg(b));
      lap(a, b) = (a == b ? 1.0 : 0.0) - w;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  Eigen::VectorXd y = solver.eigenvectors().col(1);
  for (std::size_t a = 0; a < m; ++a) y(a) /= std::sqrt(deg(a));
  for (std::size_t a = 0; a < m; ++a) {
    if (std::abs(y(a)) > 1e-12) {
      if (y(a) < 0) y = -y;
      break;
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return y(a) < y(b); });

  const double vol = deg.sum();
  std::vector<bool> in_first(m, false);
  double cut = 0.0, vol_first = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_prefix = 1;
  for (std::size_t p = 0; p + 1 < m; ++p) {
    const auto u = order[p];
    double to_first = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      if (in_first[b]) to_first += g.weight(part[u], part[b]);
    }
    cut += deg(u) - 2.0 * to_first;
    vol_first += deg(u);
    in_first[u] = true;
    const double ncut = cut / vol_first + cut / (vol - vol_first);
    if (ncut < best - 1e-12) {
      best = ncut;
      best_prefix = p + 1;
    }
  }

  Split s;
  s.ncut = best;
  for (std::size_t p = 0; p < m; ++p) {
    (p < best_prefix ? s.first : s.second).push_back(part[order[p]]);
  }
  std::sort(s.first.begin(), s.first.end());
  std::sort(s.second.begin(), s.second.end());
  if (s.second.front() < s.first.front()) std::swap(s.first, s.second);
  return s;
}

// Splits `component` into `parts` pieces, always cutting the cheapest part.
std::vector<std::vector<std::size_t>> bisect_until(const SimilarityGraph& g,
                                                   std::vector<std::size_t> component,
                                                   std::size_t parts) {
  std::vector<std::vector<std::size_t>> out{std::move(component)};
  std::vector<std::optional<Split>> cache(1);
  while (out.size() < parts) {
    std::size_t pick = out.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].size() < 2) continue;
      if (!cache[i]) cache[i] = best_bisection(g, out[i]);
      if (pick == out.size() || cache[i]->ncut < cache[pick]->ncut - 1e-12) pick = i;
    }
    if (pick == out.size()) break;
    Split s = std::move(*cache[pick]);
    out[pick] = std::move(s.first);
    cache[pick].reset();
    out.push_back(std::move(s.second));
    cache.emplace_back();
  }
  return out;
}

Eigen::VectorXd normalized_laplacian_spectrum(const SimilarityGraph& g) {
  const std::size_t n = g.size();
  Eigen::VectorXd deg(n);
  for (std::size_t i = 0; i < n; ++i) deg(i) = g.degree(i);
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (deg(i) == 0.0) continue;  // isolated node: its own component, eigenvalue 0
    for (std::size_t j = 0; j < n; ++j) {
      if (deg(j) == 0.0) continue;
      lap(i, j) = (i == j ? 1.0 : 0.0) - g.weight(i, j) / std::sqrt(deg(i) * deg(j));
    }
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lap, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

std::size_t eigengap_cluster_count(const SimilarityGraph& g, std::size_t cap) {
  const std::size_t n = g.size();
  if (n < 2) throw ContractError("eigengap_cluster_count: need at least two nodes");
  if (n == 2) return 2;
  const auto ev = normalized_laplacian_spectrum(g);
  const std::size_t hi = std::min(cap, n - 1);
  std::size_t best_k = 2;
  double best_gap = -1.0;
  for (std::size_t k = 2; k <= hi; ++k) {
    const double gap = ev(static_cast<Eigen::Index>(k)) - ev(static_cast<Eigen::Index>(k - 1));
    if (gap > best_gap + 1e-12) {
      best_gap = gap;
      best_k = k;
    }
  }
  return best_k;
}

Partition normalized_cut(const SimilarityGraph& g, std::optional<std::size_t> k_opt) {
  const std::size_t n = g.size();
  if (n < 2) throw ContractError("normalized_cut: need at least two nodes");
  const std::size_t k = k_opt ? *k_opt : eigengap_cluster_count(g);
  if (k < 2 || k > n) throw ContractError("normalized_cut: k must be in [2, node count]");

  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  auto comps = connected_components(g, all);

  auto by_size = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
  };

  std::vector<std::vector<std::size_t>> parts;
  if (comps.size() >= k) {
    std::sort(comps.begin(), comps.end(), by_size);
    parts.assign(comps.begin(), comps.begin() + static_cast<std::ptrdiff_t>(k - 1));
    std::vector<std::size_t> rest;
    for (std::size_t c = k - 1; c < comps.size(); ++c) rest.insert(rest.end(), comps[c].begin(), comps[c].end());
    std::sort(rest.begin(), rest.end());
    parts.push_back(std::move(rest));
  } else {
    // One part per component, extra parts by size (largest remainder).
    const std::size_t extra = k - comps.size();
    std::vector<std::size_t> allot(comps.size(), 1);
    std::vector<double> remainder(comps.size());
    std::size_t given = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const double exact = static_cast<double>(extra * comps[c].size()) / static_cast<double>(n);
      const auto whole = std::min(static_cast<std::size_t>(exact), comps[c].size() - 1);
      allot[c] += whole;
      given += whole;
      remainder[c] = exact - static_cast<double>(whole);
    }
    while (given < extra) {
      std::size_t pick = comps.size();
      for (std::size_t c = 0; c < comps.size(); ++c) {
        if (allot[c] >= comps[c].size()) continue;
        if (pick == comps.size() || remainder[c] > remainder[pick] + 1e-12) pick = c;
      }
      ++allot[pick];
      remainder[pick] -= 1.0;
      ++given;
    }
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (auto& p : bisect_until(g, comps[c], allot[c])) parts.push_back(std::move(p));
    }
  }

  std::sort(parts.begin(), parts.end(), by_size);
  std::vector<int> labels(n);
  for (std::size_t id = 0; id < parts.size(); ++id) {
    for (auto v : parts[id]) labels[v] = static_cast<int>(id);
  }
  return Partition(g.nodes(), std::move(labels));
}

double normalized_cut_value(const SimilarityGraph& g, const std::vector<bool>& in_first) {
  double cut = 0.0, vol_a = 0.0, vol_b = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    (in_first[i] ? vol_a : vol_b) += g.degree(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (in_first[i] != in_first[j]) cut += g.weight(i, j);
    }
  }
  if (cut == 0.0) return 0.0;
  return cut / vol_a + cut / vol_b;
}

// ---------------------------------------------------------------------------
// Quality metrics

namespace {

struct CommunityStats {
  double internal = 0.0;  // weight of edges inside
  double volume = 0.0;
};

// Communities keyed by label, with kUngrouped members split into singletons
// (keyed by -1 - index).
std::map<long, CommunityStats> community_stats(const SimilarityGraph& g, const Partition& p) {
  if (p.size() != g.size()) throw ContractError("partition does not cover the graph");
  std::vector<long> key(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int l = p.label_of(g.nodes()[i]);
    key[i] = l == kUngrouped ? -1 - static_cast<long>(i) : l;
  }
  std::map<long, CommunityStats> stats;
  for (std::size_t i = 0; i < g.size(); ++i) {
    auto& s = stats[key[i]];
    s.volume += g.degree(i);
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (key[i] == key[j]) s.internal += g.weight(i, j);
    }
  }
  return stats;
}

}  // namespace

double modularity(const SimilarityGraph& g, const Partition& p) {
  const double total = g.total_weight();
  const auto stats = community_stats(g, p);
  if (total == 0.0) return 0.0;
  double q = 0.0;
  for (const auto& [_, s] : stats) {
    const double a = s.volume / (2.0 * total);
    q += s.internal / total - a * a;
  }
  return q;
}

double conductance(const SimilarityGraph& g, const Partition& p, ConductanceAggregate aggregate) {
  const double total_volume = 2.0 * g.total_weight();
  const auto stats = community_stats(g, p);
  double num = 0.0, den = 0.0, worst = 0.0;
  std::size_t used = 0;
  for (const auto& [label, s] : stats) {
    if (label <= 0) continue;
    const double smaller = std::min(s.volume, total_volume - s.volume);
    if (smaller <= 0.0) {
      warn("conductance: community " + std::to_string(label) + " has zero volume on one side; excluded");
      continue;
    }
    const double cut = s.volume - 2.0 * s.internal;
    const double phi = std::max(0.0, cut) / smaller;
    ++used;
    worst = std::max(worst, phi);
    switch (aggregate) {
      case ConductanceAggregate::VolumeWeightedMean:
        num += s.volume * phi;
        den += s.volume;
        break;
      case ConductanceAggregate::Mean:
        num += phi;
        den += 1.0;
        break;
      case ConductanceAggregate::Max: break;
    }
  }
  if (used == 0) {
    warn("conductance: no community with a defined conductance; reporting 0");
    return 0.0;
  }
  return aggregate == ConductanceAggregate::Max ? worst : num / den;
}

void write_edge_list_csv(std::ostream& out, const SimilarityGraph& g) {
  out << "source,target,weight\n";
  for (const auto& e : g.edges()) {
    out << csv::join_row({g.nodes()[e.source], g.nodes()[e.target], csv::format_real(e.weight)}) << '\n';
  }
}

}  // namespace mediasim
