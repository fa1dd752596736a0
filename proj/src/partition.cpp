#include "mediasim/partition.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "mediasim/csv.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

Partition::Partition(std::vector<std::string> outlets, std::vector<int> labels)
    : outlets_(std::move(outlets)), labels_(std::move(labels)) {
  if (outlets_.size() != labels_.size()) {
    throw ContractError("partition: outlet and label counts differ");
  }
  for (std::size_t i = 0; i < outlets_.size(); ++i) {
    if (labels_[i] < 0) throw ContractError("partition: negative community id");
    if (!index_.emplace(outlets_[i], i).second) {
      throw ContractError("partition: outlet '" + outlets_[i] + "' labeled twice");
    }
  }
}

std::size_t Partition::index_of(const std::string& outlet) const {
  auto it = index_.find(outlet);
  if (it == index_.end()) throw ContractError("partition: unknown outlet '" + outlet + "'");
  return it->second;
}

int Partition::label_of(const std::string& outlet) const { return labels_[index_of(outlet)]; }

int Partition::max_label() const {
  return labels_.empty() ? -1 : *std::max_element(labels_.begin(), labels_.end());
}

std::vector<std::vector<std::size_t>> Partition::groups() const {
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(max_label() + 1));
  for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(i);
  return out;
}

std::size_t Partition::community_count() const {
  std::size_t n = 0;
  auto g = groups();
  for (std::size_t id = 1; id < g.size(); ++id) n += g[id].empty() ? 0 : 1;
  return n;
}

std::size_t Partition::grouped_count() const {
  return static_cast<std::size_t>(
      std::count_if(labels_.begin(), labels_.end(), [](int l) { return l != kUngrouped; }));
}

std::vector<int> canonical_community_labels(const std::vector<int>& raw) {
  std::map<int, std::size_t> sizes;
  for (int l : raw) ++sizes[l];
  std::map<int, int> remap;
  int next = 1;
  std::vector<int> out(raw.size(), kUngrouped);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (sizes[raw[i]] < 2) continue;
    auto [it, inserted] = remap.emplace(raw[i], next);
    if (inserted) ++next;
    out[i] = it->second;
  }
  return out;
}

bool same_grouping(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto [x, fresh_x] = ab.emplace(a[i], b[i]);
    auto [y, fresh_y] = ba.emplace(b[i], a[i]);
    if ((!fresh_x && x->second != b[i]) || (!fresh_y && y->second != a[i])) return false;
  }
  return true;
}

void write_partition_csv(std::ostream& out, const Partition& p) {
  out << "outlet,community_id\n";
  for (std::size_t i = 0; i < p.size(); ++i) {
    out << csv::join_row({p.outlets()[i], std::to_string(p.labels()[i])}) << '\n';
  }
}

Partition read_partition_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> outlets;
  std::vector<int> labels;
  bool first = true;
  while (std::getline(in, line)) {
    if (csv::trim(line).empty()) continue;
    auto cells = csv::split_row(line);
    if (first) {
      first = false;
      if (cells.size() == 2 && cells[0] == "outlet") continue;
    }
    if (cells.size() != 2) throw ParseError("partition: expected outlet,community_id");
    try {
      std::size_t used = 0;
      labels.push_back(std::stoi(cells[1], &used));
      if (used != cells[1].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("partition: bad community id '" + cells[1] + "'");
    }
    outlets.push_back(cells[0]);
  }
  try {
    return Partition(std::move(outlets), std::move(labels));
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace mediasim
