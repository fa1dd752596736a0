#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mediasim/partition.hpp"
#include "mediasim/similarity_matrix.hpp"

namespace mediasim {

struct Edge {
  std::size_t source;
  std::size_t target;
  double weight;
};

/// Undirected weighted graph over outlets, stored densely (these graphs start
/// out complete). A zero weight means no edge; there are no self-loops.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  explicit SimilarityGraph(std::vector<std::string> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }

  double weight(std::size_t i, std::size_t j) const { return weights_[i * size() + j]; }
  void set_weight(std::size_t i, std::size_t j, double w);

  double degree(std::size_t i) const;
  double total_weight() const;  // each undirected edge counted once
  std::vector<Edge> edges() const;  // i < j, weight > 0

 private:
  std::vector<std::string> nodes_;
  std::vector<double> weights_;
};

/// Complete graph over the matrix labels. Throws ContractError on asymmetric
/// or negative input; zero entries become missing edges.
SimilarityGraph build_graph(const SimilarityMatrix& s);

SimilarityGraph induced_subgraph(const SimilarityGraph& g, const std::vector<std::size_t>& nodes);

struct ThresholdResult {
  SimilarityGraph graph;
  double threshold = 0.0;  // mean + 2 * population std over all node pairs
};

/// Keeps edges strictly heavier than mean + 2 std. Export only.
ThresholdResult threshold_edges(const SimilarityGraph& g);

/// Agglomerative modularity maximization: merge the adjacent community pair
/// with the largest modularity gain until none remain, then keep the
/// dendrogram level with maximal Q. Communities of one node come back as
/// kUngrouped; the rest are numbered from 1 by lowest member index.
Partition greedy_modularity(const SimilarityGraph& g);

/// Number of clusters at the largest gap of the normalized Laplacian
/// spectrum, searched in [2, min(cap, n - 1)].
std::size_t eigengap_cluster_count(const SimilarityGraph& g, std::size_t cap = 16);

/// Recursive spectral bisection. Each round splits, among all current parts,
/// the one whose Fiedler sweep cut has the smallest normalized cut.
/// Disconnected graphs are split into components first and the remaining
/// budget is spread over components by size. Parts are numbered 0..k-1 by
/// decreasing size, so id 0 is the largest cluster.
Partition normalized_cut(const SimilarityGraph& g, std::optional<std::size_t> k = std::nullopt);

/// cut(A,B)/vol(A) + cut(A,B)/vol(B) for a two-way split given as side flags.
double normalized_cut_value(const SimilarityGraph& g, const std::vector<bool>& in_first);

/// Weighted modularity; kUngrouped members count as singleton communities.
double modularity(const SimilarityGraph& g, const Partition& p);

enum class ConductanceAggregate { VolumeWeightedMean, Mean, Max };

/// Aggregate of cut(c) / min(vol(c), vol(rest)) over communities with id != 0.
double conductance(const SimilarityGraph& g, const Partition& p,
                   ConductanceAggregate aggregate = ConductanceAggregate::VolumeWeightedMean);

// source,target,weight
void write_edge_list_csv(std::ostream& out, const SimilarityGraph& g);

}  // namespace mediasim
