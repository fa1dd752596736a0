#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "mediasim/corpus.hpp"
#include "mediasim/similarity_matrix.hpp"

namespace mediasim {

struct FrequentTermSet {
  std::vector<std::string> terms;  // sorted
  std::size_t support = 0;         // tweets containing every term

  bool operator==(const FrequentTermSet&) const = default;
};

struct MiningOptions {
  std::size_t min_support = 5;
  std::size_t min_size = 2;
  std::size_t max_size = 5;
};

/// Levelwise (apriori) mining of one day's tweets. Returns the closed sets
/// within the size bounds: a set is dropped when a frequent superset of at
/// most max_size terms has the same support. Sorted by (size, terms).
std::vector<FrequentTermSet> mine_frequent_termsets(const std::vector<TokenDoc>& day_docs,
                                                    const MiningOptions& options = {});

struct Topic {
  std::vector<std::size_t> termsets;     // indices into DailyTopicModel::termsets
  std::vector<std::string> terms;        // union, sorted
  std::vector<std::size_t> matching_docs;  // day_docs indices containing a whole term-set
};

struct DailyTopicModel {
  Date date{};
  std::vector<FrequentTermSet> termsets;
  std::vector<Topic> topics;
};

/// Groups term-sets into topics: two sets join when at least `bridging_min`
/// tweets of the day contain a term of each; grouping is transitive.
DailyTopicModel merge_by_cooccurrence(std::vector<FrequentTermSet> termsets,
                                      const std::vector<TokenDoc>& day_docs,
                                      std::size_t bridging_min = 1, Date date = {});

struct DailyOutletVector {
  std::string outlet;
  Date date{};
  std::map<std::size_t, double> components;  // topic index -> matching tweet count
};

/// Tweets of `outlet` matching a whole term-set of each topic. `day_docs` must
/// be the list the model was built from.
DailyOutletVector daily_vector(const std::string& outlet, const DailyTopicModel& model,
                               const std::vector<TokenDoc>& day_docs);

double cosine(const DailyOutletVector& u, const DailyOutletVector& v);

struct KeywordOptions {
  MiningOptions mining;
  std::size_t bridging_min = 1;
  // Average over days where both outlets have a nonzero vector instead of
  // over every day of the window.
  bool active_days_only = false;
};

/// Mean over the window's days of the daily topic-vector cosine. Days with no
/// tweets, or where an outlet is silent, contribute 0 unless active_days_only.
SimilarityMatrix keyword_topic_similarity(const std::map<Date, std::vector<TokenDoc>>& days,
                                          const std::vector<std::string>& outlets,
                                          const Window& window, const KeywordOptions& options = {},
                                          std::vector<DailyTopicModel>* models = nullptr);

// JSON lines {date, topic_id, termsets, support}.
void write_topic_dump(std::ostream& out, const std::vector<DailyTopicModel>& models);

}  // namespace mediasim
