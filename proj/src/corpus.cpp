#include "mediasim/corpus.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdio>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <unordered_map>

#include "mediasim/csv.hpp"
#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"

namespace mediasim {

Date parse_date(std::string_view iso) {
  int y = 0;
  unsigned m = 0, d = 0;
  char tail = 0;
  const std::string s(iso);
  if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) {
    throw ConfigError("bad date '" + s + "', expected YYYY-MM-DD");
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                        std::chrono::day{d}};
  if (!ymd.ok()) throw ConfigError("bad date '" + s + "'");
  return Date{ymd};
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

Date day_of(std::int64_t timestamp, int utc_offset_hours) {
  const std::int64_t shifted = timestamp + std::int64_t{utc_offset_hours} * 3600;
  std::int64_t days = shifted / 86400;
  if (shifted % 86400 < 0) --days;
  return Date{std::chrono::days{days}};
}

// ---------------------------------------------------------------------------
// Archive records

namespace {

bool starts_with_retweet_marker(std::string_view text) {
  if (text.size() < 2) return false;
  if (!(text[0] == 'R' || text[0] == 'r') || !(text[1] == 'T' || text[1] == 't')) return false;
  return text.size() == 2 || text[2] == ' ' || text[2] == ':' || text[2] == '@';
}

}  // namespace

Tweet parse_tweet_record(std::string_view line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("record is not a JSON object");
  }
  if (!j.is_object()) throw ParseError("record is not a JSON object");

  auto string_field = [&](const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) throw ParseError(std::string(name) + " missing");
    if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
    if (!it->is_string()) throw ParseError(std::string(name) + " is not a string");
    return it->get<std::string>();
  };

  Tweet t;
  t.id = string_field("id");
  if (t.id.empty()) throw ParseError("id empty");
  t.outlet = string_field("outlet");
  if (t.outlet.empty()) throw ParseError("outlet empty");

  auto ts = j.find("ts");
  if (ts == j.end() || ts->is_null()) throw ParseError("ts missing");
  if (!ts->is_number_integer()) throw ParseError("ts is not an integer");
  t.timestamp = ts->get<std::int64_t>();

  auto text = j.find("text");
  if (text == j.end() || text->is_null()) throw ParseError("text missing");
  if (!text->is_string()) throw ParseError("text is not a string");
  t.text = text->get<std::string>();

  bool flagged = false;
  if (auto rt = j.find("rt"); rt != j.end() && !rt->is_null()) {
    if (rt->is_boolean()) {
      flagged = rt->get<bool>();
    } else if (rt->is_number_integer() && (rt->get<int>() == 0 || rt->get<int>() == 1)) {
      flagged = rt->get<int>() == 1;
    } else {
      throw ParseError("rt must be 0 or 1");
    }
  }
  t.is_retweet = flagged || starts_with_retweet_marker(t.text);
  return t;
}

std::vector<Tweet> read_tweet_archive(std::istream& in) {
  std::vector<Tweet> tweets;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    Tweet t;
    try {
      t = parse_tweet_record(line);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    auto [it, fresh] = seen.emplace(t.id, line_no);
    if (!fresh) {
      throw DuplicateIdError("line " + std::to_string(line_no) + ": duplicate id '" + t.id +
                             "' (first seen on line " + std::to_string(it->second) + ")");
    }
    tweets.push_back(std::move(t));
  }
  return tweets;
}

void write_tweet_archive(std::ostream& out, const std::vector<Tweet>& tweets) {
  for (const auto& t : tweets) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["outlet"] = t.outlet;
    j["ts"] = t.timestamp;
    j["text"] = t.text;
    j["rt"] = t.is_retweet ? 1 : 0;
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

void lowercase_utf8(std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = static_cast<unsigned char>(s[i]);
    if (c >= 'A' && c <= 'Z') {
      s[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < s.size()) {
      // Latin-1 supplement capitals U+00C0..U+00DE, except U+00D7 (multiplication sign).
      auto next = static_cast<unsigned char>(s[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97) s[i + 1] = static_cast<char>(next + 0x20);
      ++i;
    }
  }
}

// Multi-byte punctuation commonly found in Spanish news text.
constexpr std::array<std::string_view, 16> kUnicodePunct = {
    "¡", "¿", "«", "»", "\xE2\x80\x93", "\xE2\x80\x94", "‘", "’",
    "“", "”", "…", "·", "•", "\xC2\xA0", "„", "―"};

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_ascii_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_ascii_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Cuts the chunk at the first URL-looking substring; the URL runs to the end
// of the whitespace-delimited chunk.
void strip_url(std::string& chunk) {
  constexpr std::array<std::string_view, 4> markers = {"http://", "https://", "www.", "t.co/"};
  std::size_t cut = std::string::npos;
  for (auto m : markers) cut = std::min(cut, chunk.find(m));
  if (cut != std::string::npos) chunk.resize(cut);
}

bool is_mention(std::string_view chunk) {
  for (char c : chunk) {
    if (c == '@') return true;
    if (static_cast<unsigned char>(c) >= 0x80 || std::isalnum(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return false;
}

std::string blank_punctuation(std::string_view chunk) {
  std::string out;
  out.reserve(chunk.size());
  std::size_t i = 0;
  while (i < chunk.size()) {
    auto c = static_cast<unsigned char>(chunk[i]);
    if (c < 0x80) {
      out.push_back(std::ispunct(c) ? ' ' : static_cast<char>(c));
      ++i;
      continue;
    }
    bool matched = false;
    for (auto p : kUnicodePunct) {
      if (chunk.substr(i, p.size()) == p) {
        out.push_back(' ');
        i += p.size();
        matched = true;
        break;
      }
    }
    if (!matched) out.push_back(chunk[i++]);
  }
  return out;
}

}  // namespace

std::vector<std::string> normalize_text(std::string_view raw, const Stopwords& stopwords,
                                        const NormalizeOptions& options) {
  std::string text(raw);
  lowercase_utf8(text);
  std::vector<std::string> tokens;
  for (auto& chunk : split_ws(text)) {
    strip_url(chunk);
    if (chunk.empty()) continue;
    if (options.strip_mentions && is_mention(chunk)) continue;
    for (auto& tok : split_ws(blank_punctuation(chunk))) {
      if (options.strip_retweet_marker && tok == "rt") continue;
      if (stopwords.count(tok)) continue;
      tokens.push_back(std::move(tok));
    }
  }
  return tokens;
}

Stopwords read_stopwords(std::istream& in) {
  Stopwords out;
  std::string line;
  while (std::getline(in, line)) {
    auto word = csv::trim(line);
    if (word.empty() || word.front() == '#') continue;
    lowercase_utf8(word);
    out.insert(std::move(word));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Corpus-level operations

Corpus make_corpus(std::vector<Tweet> tweets, Window window, bool exclude_retweets,
                   int utc_offset_hours) {
  if (window.end < window.start) throw ConfigError("corpus window ends before it starts");
  Corpus c;
  c.window = window;
  std::size_t outside = 0;
  for (auto& t : tweets) {
    if (!window.contains(day_of(t.timestamp, utc_offset_hours))) {
      ++outside;
      continue;
    }
    if (exclude_retweets && t.is_retweet) continue;
    c.outlets.insert(t.outlet);
    c.tweets.push_back(std::move(t));
  }
  if (outside) {
    warn(std::to_string(outside) + " tweet(s) outside the corpus window were dropped");
  }
  return c;
}

Window infer_window(const std::vector<Tweet>& tweets, int utc_offset_hours) {
  if (tweets.empty()) throw DataError("cannot infer a window from an empty archive");
  auto [lo, hi] = std::minmax_element(tweets.begin(), tweets.end(), [](auto& a, auto& b) {
    return a.timestamp < b.timestamp;
  });
  return {day_of(lo->timestamp, utc_offset_hours), day_of(hi->timestamp, utc_offset_hours)};
}

ActivityFilterResult filter_active_outlets(const Corpus& corpus) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : corpus.tweets) ++counts[t.outlet];

  const auto days = static_cast<double>(corpus.window.length_days());
  std::set<std::string> keep;
  ActivityFilterResult result;
  for (const auto& outlet : corpus.outlets) {
    const double rate = static_cast<double>(counts[outlet]) / days;
    if (rate < 1.0) {
      result.removed.push_back(outlet);
    } else {
      keep.insert(outlet);
    }
  }

  result.corpus.window = corpus.window;
  result.corpus.outlets = keep;
  for (const auto& t : corpus.tweets) {
    if (keep.count(t.outlet)) result.corpus.tweets.push_back(t);
  }
  return result;
}

std::vector<TokenDoc> tokenize(const Corpus& corpus, const Stopwords& stopwords,
                               const NormalizeOptions& options, int utc_offset_hours) {
  std::vector<TokenDoc> docs;
  docs.reserve(corpus.tweets.size());
  for (const auto& t : corpus.tweets) {
    docs.push_back({t.id, t.outlet, day_of(t.timestamp, utc_offset_hours),
                    normalize_text(t.text, stopwords, options)});
  }
  return docs;
}

std::map<Date, std::vector<TokenDoc>> partition_by_day(const std::vector<TokenDoc>& docs) {
  std::map<Date, std::vector<TokenDoc>> buckets;
  for (const auto& d : docs) buckets[d.day].push_back(d);
  return buckets;
}

}  // namespace mediasim
