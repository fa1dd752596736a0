#include "mediasim/ownership.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "mediasim/csv.hpp"
#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

OwnerGraph::OwnerGraph(const std::vector<std::pair<std::string, std::string>>& parent_child) {
  for (const auto& [parent, child] : parent_child) {
    if (parent == child) throw DataError("owner graph: '" + parent + "' owns itself");
    auto [it, fresh] = parent_.emplace(child, parent);
    if (!fresh && it->second != parent) {
      throw DataError("owner graph: '" + child + "' has two parents ('" + it->second + "', '" +
                      parent + "')");
    }
  }
  // With one parent per node a cycle shows up as a walk longer than the node count.
  for (const auto& [child, _] : parent_) {
    std::string cur = child;
    for (std::size_t steps = 0;; ++steps) {
      auto it = parent_.find(cur);
      if (it == parent_.end()) break;
      if (steps > parent_.size()) throw DataError("owner graph: cycle through '" + child + "'");
      cur = it->second;
    }
  }
}

std::optional<std::string> OwnerGraph::parent_of(const std::string& owner) const {
  auto it = parent_.find(owner);
  if (it == parent_.end()) return std::nullopt;
  return it->second;
}

std::string OwnerGraph::topmost_ancestor(const std::string& owner) const {
  std::string cur = owner;
  while (auto p = parent_of(cur)) cur = *p;
  return cur;
}

const OwnershipRecord* Registry::find(const std::string& outlet) const {
  auto it = std::lower_bound(records.begin(), records.end(), outlet,
                             [](const OwnershipRecord& r, const std::string& o) { return r.outlet < o; });
  return it != records.end() && it->outlet == outlet ? &*it : nullptr;
}

std::optional<std::string> resolve_owner(const OwnershipRecord& record, const OwnerGraph& graph) {
  if (record.owners.empty()) return std::nullopt;
  const OwnerShare* best = nullptr;
  bool tie = false;
  for (const auto& o : record.owners) {
    if (!best || o.share > best->share) {
      best = &o;
      tie = false;
    } else if (o.share == best->share) {
      tie = true;
      if (o.owner < best->owner) best = &o;
    }
  }
  if (tie) {
    warn("ownership: '" + record.outlet + "' has tied major partners; picked '" + best->owner + "'");
  }
  return graph.topmost_ancestor(best->owner);
}

namespace {

bool is_header(const std::vector<std::string>& cells, const char* first) {
  return !cells.empty() && csv::trim(cells[0]) == first;
}

}  // namespace

Registry load_registry(std::istream& registry_csv, std::istream* owner_graph_csv) {
  Registry reg;

  if (owner_graph_csv) {
    std::vector<std::pair<std::string, std::string>> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(*owner_graph_csv, line)) {
      ++line_no;
      if (csv::trim(line).empty()) continue;
      auto cells = csv::split_row(line);
      if (line_no == 1 && is_header(cells, "parent_owner")) continue;
      if (cells.size() != 2 || csv::trim(cells[0]).empty() || csv::trim(cells[1]).empty()) {
        throw ParseError("owner graph line " + std::to_string(line_no) +
                         ": expected parent_owner,child_owner");
      }
      edges.emplace_back(csv::trim(cells[0]), csv::trim(cells[1]));
    }
    reg.graph = OwnerGraph(edges);
  }

  std::map<std::string, OwnershipRecord> by_outlet;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(registry_csv, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    auto cells = csv::split_row(line);
    if (line_no == 1 && is_header(cells, "outlet")) continue;
    const auto where = "registry line " + std::to_string(line_no) + ": ";
    if (cells.size() != 3) throw ParseError(where + "expected outlet,owner,share");
    const auto outlet = csv::trim(cells[0]);
    const auto owner = csv::trim(cells[1]);
    const auto share_text = csv::trim(cells[2]);
    if (outlet.empty()) throw ParseError(where + "outlet missing");

    auto& rec = by_outlet[outlet];
    rec.outlet = outlet;
    if (owner.empty()) {
      if (!share_text.empty()) throw ParseError(where + "share given without owner");
      continue;
    }
    if (owner == kUnknownOwner) continue;
    double share = 0.0;
    try {
      std::size_t used = 0;
      share = std::stod(share_text, &used);
      if (used != share_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError(where + "bad share '" + share_text + "'");
    }
    if (!(share >= 0.0 && share <= 1.0)) throw ParseError(where + "share outside [0,1]");
    rec.owners.push_back({owner, share});
  }

  for (auto& [outlet, rec] : by_outlet) {
    double total = 0.0;
    for (const auto& o : rec.owners) total += o.share;
    if (total > 1.0 + 1e-9) throw DataError("registry: shares of '" + outlet + "' sum above 1");
    rec.resolved_owner = resolve_owner(rec, reg.graph);
    reg.records.push_back(std::move(rec));
  }
  return reg;
}

Partition ground_truth_partition(const Registry& registry, const std::vector<std::string>& outlets) {
  std::map<std::string, int> owner_label;
  std::vector<int> labels;
  labels.reserve(outlets.size());
  int next = 1;
  for (const auto& outlet : outlets) {
    const auto* rec = registry.find(outlet);
    if (!rec) warn("ownership: no registry record for '" + outlet + "', treated as UNKNOWN");
    if (!rec || !rec->resolved_owner) {
      labels.push_back(next++);
      continue;
    }
    auto [it, fresh] = owner_label.emplace(*rec->resolved_owner, next);
    if (fresh) ++next;
    labels.push_back(it->second);
  }
  return Partition(outlets, std::move(labels));
}

void write_registry_csv(std::ostream& out, const std::vector<OwnershipRecord>& records) {
  out << "outlet,owner,share\n";
  for (const auto& r : records) {
    if (r.owners.empty()) {
      out << csv::join_row({r.outlet, "", ""}) << '\n';
      continue;
    }
    for (const auto& o : r.owners) {
      out << csv::join_row({r.outlet, o.owner, csv::format_real(o.share)}) << '\n';
    }
  }
}

}  // namespace mediasim
