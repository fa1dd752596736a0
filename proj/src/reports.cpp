#include "mediasim/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <json.hpp>
#include <ostream>

#include "mediasim/csv.hpp"
#include "mediasim/error.hpp"

namespace mediasim {
namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v == 0.0 ? 0.0 : v);
  return buf;
}

void write_text_table(std::ostream& out, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) out << "  ";
      if (c == 0) {
        out << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << cells[c];
      }
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace

InternalMetricsRow internal_metrics_report(const std::string& similarity, const SimilarityGraph& g,
                                           const Partition& p, ConductanceAggregate aggregate) {
  InternalMetricsRow row;
  row.similarity = similarity;
  row.outlets = g.size();
  std::vector<std::size_t> grouped_nodes;
  std::vector<int> grouped_labels;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int l = p.label_of(g.nodes()[i]);
    if (l == kUngrouped) continue;
    grouped_nodes.push_back(i);
    grouped_labels.push_back(l);
  }
  row.grouped = grouped_nodes.size();
  row.communities = p.community_count();
  if (!grouped_nodes.empty()) {
    const auto sub = induced_subgraph(g, grouped_nodes);
    const Partition sub_p(sub.nodes(), grouped_labels);
    row.modularity = modularity(sub, sub_p);
    row.conductance = conductance(sub, sub_p, aggregate);
  }
  return row;
}

void write_internal_metrics_csv(std::ostream& out, const std::vector<InternalMetricsRow>& rows) {
  out << csv::join_row(kInternalMetricsColumns) << '\n';
  for (const auto& r : rows) {
    out << csv::join_row({r.similarity, std::to_string(r.outlets), std::to_string(r.grouped),
                          std::to_string(r.communities), csv::format_real(r.modularity),
                          csv::format_real(r.conductance)})
        << '\n';
  }
}

void write_internal_metrics_text(std::ostream& out, const std::vector<InternalMetricsRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows) {
    cells.push_back({r.similarity, std::to_string(r.outlets), std::to_string(r.grouped),
                     std::to_string(r.communities), fixed(r.modularity, 2), fixed(r.conductance, 2)});
  }
  write_text_table(out, kInternalMetricsColumns, cells);
}

void write_evaluation_csv(std::ostream& out, const std::vector<EvaluationRow>& rows) {
  out << csv::join_row(kEvaluationColumns) << '\n';
  for (const auto& [name, r] : rows) {
    out << csv::join_row({name, std::to_string(r.outlets), std::to_string(r.communities),
                          csv::format_real(r.ari), csv::format_real(r.ami), csv::format_real(r.nmi),
                          csv::format_real(r.hom), csv::format_real(r.com)})
        << '\n';
  }
}

void write_evaluation_text(std::ostream& out, const std::vector<EvaluationRow>& rows) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& [name, r] : rows) {
    cells.push_back({name, std::to_string(r.outlets), std::to_string(r.communities), fixed(r.ari, 4),
                     fixed(r.ami, 4), fixed(r.nmi, 4), fixed(r.hom, 4), fixed(r.com, 4)});
  }
  write_text_table(out, kEvaluationColumns, cells);
}

void write_evaluation_json(std::ostream& out, const std::vector<EvaluationRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [name, r] : rows) {
    nlohmann::ordered_json j;
    j["similarity"] = name;
    j["outlets"] = r.outlets;
    j["communities"] = r.communities;
    j["ari"] = r.ari;
    j["ami"] = r.ami;
    j["nmi"] = r.nmi;
    j["hom"] = r.hom;
    j["com"] = r.com;
    j["contingency"] = {{"cells", r.table.cells},
                        {"row_sums", r.table.row_sums},
                        {"col_sums", r.table.col_sums},
                        {"total", r.table.total}};
    arr.push_back(std::move(j));
  }
  out << arr.dump(2) << '\n';
}

std::vector<CompositionRow> ownership_composition(const Partition& p, const Registry& registry) {
  std::vector<CompositionRow> rows;
  const auto groups = p.groups();
  for (std::size_t id = 0; id < groups.size(); ++id) {
    const auto& members = groups[id];
    if (members.empty()) continue;
    CompositionRow row;
    row.community = static_cast<int>(id);
    row.size = members.size();
    std::map<std::string, std::size_t> counts;
    for (auto i : members) {
      const auto* rec = registry.find(p.outlets()[i]);
      if (rec && rec->resolved_owner) {
        ++counts[*rec->resolved_owner];
      } else {
        ++row.unknown_count;
      }
    }
    const auto size = static_cast<double>(row.size);
    for (const auto& [owner, count] : counts) {
      // Strictly more than 10%, compared in integers.
      if (count * 10 > row.size) row.owners.push_back({owner, 100.0 * static_cast<double>(count) / size, count});
    }
    std::sort(row.owners.begin(), row.owners.end(), [](const auto& a, const auto& b) {
      return a.count != b.count ? a.count > b.count : a.owner < b.owner;
    });
    row.unknown_percent = 100.0 * static_cast<double>(row.unknown_count) / size;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_composition_csv(std::ostream& out, const std::vector<CompositionRow>& rows) {
  out << csv::join_row(kCompositionColumns) << '\n';
  for (const auto& r : rows) {
    std::string names, shares;
    for (std::size_t i = 0; i < r.owners.size(); ++i) {
      if (i) {
        names += "; ";
        shares += "; ";
      }
      names += r.owners[i].owner;
      shares += fixed(r.owners[i].percent, 2) + " [" + std::to_string(r.owners[i].count) + "]";
    }
    out << csv::join_row({std::to_string(r.community), std::to_string(r.size), names, shares,
                          fixed(r.unknown_percent, 2) + " [" + std::to_string(r.unknown_count) + "]"})
        << '\n';
  }
}

std::vector<FlowRecord> flow_export(const Partition& pred, const Partition& truth, const Registry& registry) {
  std::map<std::pair<std::string, int>, std::size_t> counts;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto& outlet = pred.outlets()[i];
    if (!truth.contains(outlet)) throw ContractError("flow_export: '" + outlet + "' missing from ground truth");
    const auto* rec = registry.find(outlet);
    const std::string owner = rec && rec->resolved_owner ? *rec->resolved_owner : kUnknownOwner;
    ++counts[{owner, pred.labels()[i]}];
  }
  std::vector<FlowRecord> out;
  for (const auto& [key, n] : counts) out.push_back({key.first, key.second, n});
  return out;
}

void write_flows_csv(std::ostream& out, const std::vector<FlowRecord>& flows) {
  out << "owner,community_id,outlets\n";
  for (const auto& f : flows) {
    out << csv::join_row({f.owner, std::to_string(f.community), std::to_string(f.outlets)}) << '\n';
  }
}

}  // namespace mediasim
