#include "mediasim/simtopic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iterator>
#include <numeric>
#include <json.hpp>
#include <ostream>
#include <unordered_map>

#include "mediasim/error.hpp"

namespace mediasim {
namespace {

using TermId = std::uint32_t;
using ItemSet = std::vector<TermId>;

class TidSet {
 public:
  TidSet() = default;
  explicit TidSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  TidSet operator&(const TidSet& o) const {
    TidSet r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }

  TidSet& operator|=(const TidSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }

  std::size_t intersection_count(const TidSet& o) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      n += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    }
    return n;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      for (auto bits = words_[w]; bits; bits &= bits - 1) f(w * 64 + std::countr_zero(bits));
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct ItemSetHash {
  std::size_t operator()(const ItemSet& s) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : s) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

/// Vertical view of one day: sorted vocabulary and a tid-set per term.
struct DayIndex {
  std::vector<std::string> terms;
  std::unordered_map<std::string, TermId> ids;
  std::vector<TidSet> tids;

  explicit DayIndex(const std::vector<TokenDoc>& docs) {
    for (const auto& d : docs) {
      for (const auto& t : d.tokens) ids.emplace(t, 0);
    }
    terms.reserve(ids.size());
    for (const auto& [t, _] : ids) terms.push_back(t);
    std::sort(terms.begin(), terms.end());
    for (TermId i = 0; i < terms.size(); ++i) ids[terms[i]] = i;
    tids.assign(terms.size(), TidSet(docs.size()));
    for (std::size_t doc = 0; doc < docs.size(); ++doc) {
      for (const auto& t : docs[doc].tokens) tids[ids[t]].set(doc);
    }
  }

  TidSet support_of(const std::vector<std::string>& set, std::size_t n_docs) const {
    TidSet acc(n_docs);
    bool first = true;
    for (const auto& t : set) {
      auto it = ids.find(t);
      if (it == ids.end()) return TidSet(n_docs);
      acc = first ? tids[it->second] : acc & tids[it->second];
      first = false;
    }
    return acc;
  }
};

// Sorted ids of the tweets containing a set.
using TidList = std::vector<std::uint32_t>;

TidList intersect(const TidList& a, const TidList& b) {
  TidList out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Level {
  std::vector<ItemSet> sets;
  std::vector<TidList> tids;
  std::vector<std::size_t> support;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<FrequentTermSet> mine_frequent_termsets(const std::vector<TokenDoc>& day_docs,
                                                    const MiningOptions& options) {
  if (options.min_support < 2) throw ContractError("mine_frequent_termsets: min_support must be >= 2");
  if (options.min_size < 1 || options.max_size < options.min_size) {
    throw ContractError("mine_frequent_termsets: bad term-set size bounds");
  }
  const DayIndex index(day_docs);

  // levels[k] holds frequent sets of size k + 1, lexicographically sorted.
  std::vector<Level> levels(1);
  for (TermId t = 0; t < index.terms.size(); ++t) {
    const auto s = index.tids[t].count();
    if (s >= options.min_support) {
      TidList list;
      list.reserve(s);
      index.tids[t].for_each([&](std::size_t doc) { list.push_back(static_cast<std::uint32_t>(doc)); });
      levels[0].sets.push_back({t});
      levels[0].tids.push_back(std::move(list));
      levels[0].support.push_back(s);
    }
  }

  std::vector<std::unordered_map<ItemSet, std::size_t, ItemSetHash>> lookup(1);
  for (std::size_t i = 0; i < levels[0].sets.size(); ++i) lookup[0].emplace(levels[0].sets[i], i);

  for (std::size_t k = 1; k < options.max_size && !levels.back().sets.empty(); ++k) {
    const Level& prev = levels.back();
    Level next;
    std::unordered_map<ItemSet, std::size_t, ItemSetHash> next_lookup;
    // Sets sharing their first k-1 items are contiguous in sorted order.
    for (std::size_t i = 0; i < prev.sets.size(); ++i) {
      for (std::size_t j = i + 1; j < prev.sets.size(); ++j) {
        if (!std::equal(prev.sets[i].begin(), prev.sets[i].end() - 1, prev.sets[j].begin())) break;
        ItemSet cand = prev.sets[i];
        cand.push_back(prev.sets[j].back());
        bool all_subsets_frequent = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && all_subsets_frequent; ++drop) {
          ItemSet sub;
          sub.reserve(k);
          for (std::size_t x = 0; x < cand.size(); ++x) {
            if (x != drop) sub.push_back(cand[x]);
          }
          all_subsets_frequent = lookup[k - 1].count(sub) != 0;
        }
        if (!all_subsets_frequent) continue;
        TidList tid = intersect(prev.tids[i], prev.tids[j]);
        const auto s = tid.size();
        if (s < options.min_support) continue;
        next_lookup.emplace(cand, next.sets.size());
        next.sets.push_back(std::move(cand));
        next.tids.push_back(std::move(tid));
        next.support.push_back(s);
      }
    }
    levels.push_back(std::move(next));
    lookup.push_back(std::move(next_lookup));
  }

  // A set is not closed when some one-larger frequent superset has equal support.
  std::vector<std::vector<bool>> closed(levels.size());
  for (std::size_t k = 0; k < levels.size(); ++k) closed[k].assign(levels[k].sets.size(), true);
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (std::size_t y = 0; y < levels[k].sets.size(); ++y) {
      const auto& sup = levels[k].sets[y];
      for (std::size_t drop = 0; drop < sup.size(); ++drop) {
        ItemSet sub;
        for (std::size_t x = 0; x < sup.size(); ++x) {
          if (x != drop) sub.push_back(sup[x]);
        }
        auto it = lookup[k - 1].find(sub);
        if (it != lookup[k - 1].end() && levels[k - 1].support[it->second] == levels[k].support[y]) {
          closed[k - 1][it->second] = false;
        }
      }
    }
  }

  std::vector<FrequentTermSet> out;
  for (std::size_t k = options.min_size - 1; k < levels.size(); ++k) {
    for (std::size_t i = 0; i < levels[k].sets.size(); ++i) {
      if (!closed[k][i]) continue;
      FrequentTermSet fs;
      for (auto id : levels[k].sets[i]) fs.terms.push_back(index.terms[id]);
      fs.support = levels[k].support[i];
      out.push_back(std::move(fs));
    }
  }
  return out;
}

DailyTopicModel merge_by_cooccurrence(std::vector<FrequentTermSet> termsets,
                                      const std::vector<TokenDoc>& day_docs,
                                      std::size_t bridging_min, Date date) {
  if (bridging_min < 1) throw ContractError("merge_by_cooccurrence: bridging_min must be >= 1");
  DailyTopicModel model;
  model.date = date;
  model.termsets = std::move(termsets);
  const auto& sets = model.termsets;
  const std::size_t n_docs = day_docs.size();
  const DayIndex index(day_docs);

  DisjointSets groups(sets.size());
  if (bridging_min == 1) {
    // Single-tweet bridging reduces to term connectivity: join the terms of
    // each set and the terms co-occurring in each tweet.
    std::unordered_map<std::string, std::size_t> term_slot;
    std::vector<std::size_t> first_set_of_term;
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (const auto& t : sets[s].terms) {
        auto [it, fresh] = term_slot.emplace(t, first_set_of_term.size());
        if (fresh) {
          first_set_of_term.push_back(s);
        } else {
          groups.unite(s, first_set_of_term[it->second]);
        }
      }
    }
    for (const auto& doc : day_docs) {
      std::size_t anchor = sets.size();
      for (const auto& t : doc.tokens) {
        auto it = term_slot.find(t);
        if (it == term_slot.end()) continue;
        const auto s = first_set_of_term[it->second];
        if (anchor == sets.size()) {
          anchor = s;
        } else {
          groups.unite(anchor, s);
        }
      }
    }
  } else {
    std::vector<TidSet> touching(sets.size(), TidSet(n_docs));
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (const auto& t : sets[s].terms) {
        auto it = index.ids.find(t);
        if (it != index.ids.end()) touching[s] |= index.tids[it->second];
      }
    }
    for (std::size_t a = 0; a < sets.size(); ++a) {
      for (std::size_t b = a + 1; b < sets.size(); ++b) {
        if (groups.find(a) == groups.find(b)) continue;
        if (touching[a].intersection_count(touching[b]) >= bridging_min) groups.unite(a, b);
      }
    }
  }

  std::unordered_map<std::size_t, std::size_t> topic_of_root;
  std::vector<TidSet> matching;
  for (std::size_t s = 0; s < sets.size(); ++s) {
    auto [it, fresh] = topic_of_root.emplace(groups.find(s), model.topics.size());
    if (fresh) {
      model.topics.emplace_back();
      matching.emplace_back(n_docs);
    }
    auto& topic = model.topics[it->second];
    topic.termsets.push_back(s);
    topic.terms.insert(topic.terms.end(), sets[s].terms.begin(), sets[s].terms.end());
    matching[it->second] |= index.support_of(sets[s].terms, n_docs);
  }
  for (std::size_t t = 0; t < model.topics.size(); ++t) {
    auto& terms = model.topics[t].terms;
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    matching[t].for_each([&](std::size_t doc) { model.topics[t].matching_docs.push_back(doc); });
  }
  return model;
}

DailyOutletVector daily_vector(const std::string& outlet, const DailyTopicModel& model,
                               const std::vector<TokenDoc>& day_docs) {
  DailyOutletVector v{outlet, model.date, {}};
  for (std::size_t t = 0; t < model.topics.size(); ++t) {
    double count = 0.0;
    for (auto doc : model.topics[t].matching_docs) {
      if (day_docs.at(doc).outlet == outlet) count += 1.0;
    }
    if (count > 0.0) v.components.emplace(t, count);
  }
  return v;
}

double cosine(const DailyOutletVector& u, const DailyOutletVector& v) {
  double uu = 0.0, vv = 0.0, uv = 0.0;
  for (const auto& [_, x] : u.components) uu += x * x;
  for (const auto& [t, x] : v.components) {
    vv += x * x;
    if (auto it = u.components.find(t); it != u.components.end()) uv += it->second * x;
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  return std::clamp(uv / std::sqrt(uu * vv), 0.0, 1.0);
}

SimilarityMatrix keyword_topic_similarity(const std::map<Date, std::vector<TokenDoc>>& days,
                                          const std::vector<std::string>& outlets,
                                          const Window& window, const KeywordOptions& options,
                                          std::vector<DailyTopicModel>* models) {
  const std::size_t n = outlets.size();
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < n; ++i) slot.emplace(outlets[i], i);

  std::vector<double> sum(n * n, 0.0);
  std::vector<std::size_t> active(n * n, 0);
  std::vector<bool> ever_active(n, false);

  for (const auto& [date, docs] : days) {
    if (!window.contains(date)) continue;
    auto model = merge_by_cooccurrence(mine_frequent_termsets(docs, options.mining), docs,
                                       options.bridging_min, date);

    // Dense per-day vectors: outlet x topic counts.
    const std::size_t topics = model.topics.size();
    std::vector<double> vec(n * topics, 0.0);
    for (std::size_t t = 0; t < topics; ++t) {
      for (auto doc : model.topics[t].matching_docs) {
        auto it = slot.find(docs[doc].outlet);
        if (it != slot.end()) vec[it->second * topics + t] += 1.0;
      }
    }
    std::vector<double> norm(n, 0.0);
    std::vector<std::size_t> nonzero;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t t = 0; t < topics; ++t) s += vec[i * topics + t] * vec[i * topics + t];
      norm[i] = std::sqrt(s);
      if (s > 0.0) {
        nonzero.push_back(i);
        ever_active[i] = true;
      }
    }
    for (std::size_t a = 0; a < nonzero.size(); ++a) {
      for (std::size_t b = a + 1; b < nonzero.size(); ++b) {
        const auto i = nonzero[a], j = nonzero[b];
        double d = 0.0;
        for (std::size_t t = 0; t < topics; ++t) d += vec[i * topics + t] * vec[j * topics + t];
        sum[i * n + j] += std::clamp(d / (norm[i] * norm[j]), 0.0, 1.0);
        ++active[i * n + j];
      }
    }
    if (models) models->push_back(std::move(model));
  }

  SimilarityMatrix m(outlets);
  const auto window_days = static_cast<double>(window.length_days());
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = ever_active[i] ? 1.0 : 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      if (options.active_days_only) {
        if (active[i * n + j]) s = sum[i * n + j] / static_cast<double>(active[i * n + j]);
      } else {
        s = sum[i * n + j] / window_days;
      }
      m.set_symmetric(i, j, s);
    }
  }
  return m;
}

void write_topic_dump(std::ostream& out, const std::vector<DailyTopicModel>& models) {
  for (const auto& model : models) {
    for (std::size_t t = 0; t < model.topics.size(); ++t) {
      nlohmann::ordered_json j;
      j["date"] = format_date(model.date);
      j["topic_id"] = t;
      auto sets = nlohmann::json::array();
      for (auto s : model.topics[t].termsets) sets.push_back(model.termsets[s].terms);
      j["termsets"] = std::move(sets);
      j["support"] = model.topics[t].matching_docs.size();
      out << j.dump() << '\n';
    }
  }
}

}  // namespace mediasim
