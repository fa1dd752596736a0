#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace mediasim {

/// Community id reserved for outlets the partitioner left un-grouped.
inline constexpr int kUngrouped = 0;

/// Assignment of outlets to integer community ids. Order of outlets is the
/// order they were given in (usually similarity-matrix order).
class Partition {
 public:
  Partition() = default;
  Partition(std::vector<std::string> outlets, std::vector<int> labels);

  std::size_t size() const { return outlets_.size(); }
  const std::vector<std::string>& outlets() const { return outlets_; }
  const std::vector<int>& labels() const { return labels_; }

  bool contains(const std::string& outlet) const { return index_.count(outlet) != 0; }
  int label_of(const std::string& outlet) const;
  std::size_t index_of(const std::string& outlet) const;

  // Members per id; ids with no members map to an empty vector up to max id.
  std::vector<std::vector<std::size_t>> groups() const;
  int max_label() const;

  // Non-empty communities with id != 0.
  std::size_t community_count() const;
  std::size_t grouped_count() const;

  bool operator==(const Partition& other) const {
    return outlets_ == other.outlets_ && labels_ == other.labels_;
  }

 private:
  std::vector<std::string> outlets_;
  std::vector<int> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Relabels so that groups of size >= 2 get ids 1..m in order of their
/// lowest member index; singleton groups become kUngrouped.
std::vector<int> canonical_community_labels(const std::vector<int>& raw);

/// True when two label vectors induce the same grouping.
bool same_grouping(const std::vector<int>& a, const std::vector<int>& b);

// outlet,community_id
void write_partition_csv(std::ostream& out, const Partition& p);
Partition read_partition_csv(std::istream& in);

}  // namespace mediasim
