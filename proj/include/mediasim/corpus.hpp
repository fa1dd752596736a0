#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace mediasim {

using Date = std::chrono::sys_days;

Date parse_date(std::string_view iso);  // YYYY-MM-DD
std::string format_date(Date d);

struct Tweet {
  std::string id;
  std::string outlet;
  std::int64_t timestamp = 0;  // UTC seconds since epoch
  std::string text;
  bool is_retweet = false;

  bool operator==(const Tweet&) const = default;
};

/// Inclusive range of calendar days.
struct Window {
  Date start;
  Date end;

  std::int64_t length_days() const { return (end - start).count() + 1; }
  bool contains(Date d) const { return d >= start && d <= end; }
};

struct Corpus {
  std::vector<Tweet> tweets;
  Window window;
  std::set<std::string> outlets;
};

/// One normalized tweet, bucketed by day.
struct TokenDoc {
  std::string tweet_id;
  std::string outlet;
  Date day;
  std::vector<std::string> tokens;
};

using Stopwords = std::unordered_set<std::string>;

struct NormalizeOptions {
  bool strip_mentions = true;
  bool strip_retweet_marker = true;
};

/// Parses one archive line: {"id","outlet","ts","text","rt"?}.
Tweet parse_tweet_record(std::string_view line);

/// Reads a whole archive; blank lines are skipped, repeated ids rejected.
std::vector<Tweet> read_tweet_archive(std::istream& in);
void write_tweet_archive(std::ostream& out, const std::vector<Tweet>& tweets);

std::vector<std::string> normalize_text(std::string_view raw, const Stopwords& stopwords,
                                        const NormalizeOptions& options = {});

const Stopwords& default_spanish_stopwords();
Stopwords read_stopwords(std::istream& in);

/// Tweets outside `window` are dropped with a warning. When `exclude_retweets`
/// is set retweets are dropped too.
Corpus make_corpus(std::vector<Tweet> tweets, Window window, bool exclude_retweets = false,
                   int utc_offset_hours = 0);

/// Smallest window covering every tweet (UTC days).
Window infer_window(const std::vector<Tweet>& tweets, int utc_offset_hours = 0);

struct ActivityFilterResult {
  Corpus corpus;
  std::vector<std::string> removed;  // sorted handles
};

/// Drops outlets posting on average less than one tweet per day of the window.
ActivityFilterResult filter_active_outlets(const Corpus& corpus);

Date day_of(std::int64_t timestamp, int utc_offset_hours = 0);

/// Normalizes every tweet (in corpus order).
std::vector<TokenDoc> tokenize(const Corpus& corpus, const Stopwords& stopwords,
                               const NormalizeOptions& options = {}, int utc_offset_hours = 0);

std::map<Date, std::vector<TokenDoc>> partition_by_day(const std::vector<TokenDoc>& docs);

}  // namespace mediasim
