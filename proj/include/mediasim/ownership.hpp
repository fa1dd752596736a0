#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mediasim/partition.hpp"

namespace mediasim {

inline constexpr const char* kUnknownOwner = "UNKNOWN";

struct OwnerShare {
  std::string owner;
  double share = 0.0;
};

struct OwnershipRecord {
  std::string outlet;
  std::vector<OwnerShare> owners;
  std::optional<std::string> resolved_owner;  // nullopt means UNKNOWN
};

/// Owner-owns-owner relation. Each owner has at most one parent and the
/// relation is acyclic; both are checked on construction.
class OwnerGraph {
 public:
  OwnerGraph() = default;
  explicit OwnerGraph(const std::vector<std::pair<std::string, std::string>>& parent_child);

  std::optional<std::string> parent_of(const std::string& owner) const;
  std::string topmost_ancestor(const std::string& owner) const;
  std::size_t edge_count() const { return parent_.size(); }

 private:
  std::map<std::string, std::string> parent_;
};

struct Registry {
  std::vector<OwnershipRecord> records;  // sorted by outlet
  OwnerGraph graph;

  const OwnershipRecord* find(const std::string& outlet) const;
};

/// Registry CSV: outlet,owner,share (one row per owner, optional header).
/// Owner graph CSV: parent_owner,child_owner (optional header).
/// Every record comes back with its owner resolved.
Registry load_registry(std::istream& registry_csv, std::istream* owner_graph_csv = nullptr);

/// Major partner (lexicographic tie-break, warned) lifted to its topmost
/// ancestor in the owner graph.
std::optional<std::string> resolve_owner(const OwnershipRecord& record, const OwnerGraph& graph);

/// Outlets with the same resolved owner share a label (ids from 1). UNKNOWN
/// outlets and outlets absent from the registry get unique labels.
Partition ground_truth_partition(const Registry& registry, const std::vector<std::string>& outlets);

void write_registry_csv(std::ostream& out, const std::vector<OwnershipRecord>& records);

}  // namespace mediasim
