#include <doctest.h>

#include <sstream>

#include "mediasim/corpus.hpp"
#include "mediasim/diagnostics.hpp"
#include "mediasim/error.hpp"

using namespace mediasim;

namespace {

constexpr std::int64_t kOct25 = 1445731200;  // 2015-10-25T00:00:00Z

Tweet tweet(std::string id, std::string outlet, std::int64_t ts, std::string text = "hola mundo") {
  return Tweet{std::move(id), std::move(outlet), ts, std::move(text), false};
}

std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
  return s;
}

}  // namespace

TEST_CASE("parse_tweet_record maps fields") {
  const auto t = parse_tweet_record(R"({"id":"1","outlet":"emol","ts":1445731200,"text":"Gran gol de Chile"})");
  CHECK(t.id == "1");
  CHECK(t.outlet == "emol");
  CHECK(t.timestamp == kOct25);
  CHECK(t.text == "Gran gol de Chile");
  CHECK_FALSE(t.is_retweet);
}

TEST_CASE("parse_tweet_record flags retweets") {
  CHECK(parse_tweet_record(R"({"id":"1","outlet":"a","ts":1,"text":"x","rt":1})").is_retweet);
  CHECK(parse_tweet_record(R"({"id":"1","outlet":"a","ts":1,"text":"x","rt":true})").is_retweet);
  CHECK(parse_tweet_record(R"({"id":"1","outlet":"a","ts":1,"text":"RT @b: x"})").is_retweet);
}

TEST_CASE("parse_tweet_record rejects bad records") {
  CHECK_THROWS_WITH_AS(parse_tweet_record(R"({"id":"1","ts":1,"text":"x"})"), "outlet missing", ParseError);
  CHECK_THROWS_AS(parse_tweet_record(R"({"id":"1","outlet":"a","ts":"soon","text":"x"})"), ParseError);
  CHECK_THROWS_AS(parse_tweet_record("not json"), ParseError);
  CHECK_THROWS_AS(parse_tweet_record(R"({"id":"1","outlet":"a","ts":1,"text":"x","rt":3})"), ParseError);
}

TEST_CASE("read_tweet_archive rejects duplicate ids and skips blank lines") {
  std::stringstream ok(R"({"id":"1","outlet":"a","ts":1,"text":"x"})"
                       "\n\n"
                       R"({"id":"2","outlet":"a","ts":2,"text":"y"})"
                       "\n");
  CHECK(read_tweet_archive(ok).size() == 2);

  std::stringstream dup(R"({"id":"1","outlet":"a","ts":1,"text":"x"})"
                        "\n"
                        R"({"id":"1","outlet":"b","ts":2,"text":"y"})"
                        "\n");
  CHECK_THROWS_AS(read_tweet_archive(dup), DuplicateIdError);
}

TEST_CASE("archive round trip") {
  std::vector<Tweet> tweets = {tweet("1", "a", 10, "uno \"dos\"\ntres"), tweet("2", "b", 20, "ñandú")};
  tweets[1].is_retweet = true;
  std::stringstream ss;
  write_tweet_archive(ss, tweets);
  CHECK(read_tweet_archive(ss) == tweets);
}

TEST_CASE("normalize_text applies the cleaning rules") {
  const Stopwords sw = {"de"};
  CHECK(normalize_text("RT @user: Gran GOL de Chile!! http://t.co/x #futbol", sw) ==
        std::vector<std::string>{"gran", "gol", "chile", "futbol"});
  CHECK(normalize_text("", sw).empty());
  CHECK(normalize_text("http://a.cl http://b.cl", sw).empty());
  CHECK(normalize_text("ver www.emol.com/x y https://a.b", sw) == std::vector<std::string>{"ver", "y"});
}

TEST_CASE("normalize_text keeps accents and lowercases Latin-1 capitals") {
  CHECK(normalize_text("ÁRBOL Ñandú «canción»", {}) == std::vector<std::string>{"árbol", "ñandú", "canción"});
}

TEST_CASE("normalize_text mention and retweet switches") {
  NormalizeOptions keep;
  keep.strip_mentions = false;
  keep.strip_retweet_marker = false;
  CHECK(normalize_text("RT @user: hola", {}, keep) == std::vector<std::string>{"rt", "user", "hola"});
  CHECK(normalize_text("RT @user: hola", {}) == std::vector<std::string>{"hola"});
}

TEST_CASE("normalization is idempotent") {
  const auto& sw = default_spanish_stopwords();
  for (const char* raw : {"RT @a: El GOL de Chile!!! http://t.co/z", "¿Qué pasó? ¡Nada! ... (ok)",
                          "Precio: $1.000 \xE2\x80\x94 sube 5%", "  tabs\tand\nnewlines  "}) {
    const auto once = normalize_text(raw, sw);
    CHECK(normalize_text(join(once), sw) == once);
  }
}

TEST_CASE("bundled stopwords are Spanish") {
  const auto& sw = default_spanish_stopwords();
  CHECK(sw.count("de"));
  CHECK(sw.count("la"));
  CHECK_FALSE(sw.count("chile"));
}

TEST_CASE("read_stopwords trims and skips blanks") {
  std::stringstream ss("de\n  la \n\nY\n");
  const auto sw = read_stopwords(ss);
  CHECK(sw.size() == 3);
  CHECK(sw.count("la"));
}

TEST_CASE("dates") {
  CHECK(format_date(parse_date("2015-10-25")) == "2015-10-25");
  CHECK_THROWS_AS(parse_date("2015-13-01"), ConfigError);
  CHECK_THROWS_AS(parse_date("yesterday"), ConfigError);
  CHECK(day_of(kOct25 - 1) == parse_date("2015-10-24"));
  CHECK(day_of(kOct25 - 1, 1) == parse_date("2015-10-25"));
  CHECK(day_of(kOct25, -3) == parse_date("2015-10-24"));
}

TEST_CASE("filter_active_outlets threshold") {
  const Window w{parse_date("2015-10-01"), parse_date("2016-01-01")};
  REQUIRE(w.length_days() == 93);
  std::vector<Tweet> tweets;
  const auto start = (w.start.time_since_epoch().count()) * 86400LL;
  for (int i = 0; i < 80; ++i) tweets.push_back(tweet("s" + std::to_string(i), "sparse", start + i * 3600));
  for (int i = 0; i < 93; ++i) tweets.push_back(tweet("d" + std::to_string(i), "daily", start + i * 86400));
  const auto corpus = make_corpus(tweets, w);
  const auto r = filter_active_outlets(corpus);
  CHECK(r.removed == std::vector<std::string>{"sparse"});
  CHECK(r.corpus.outlets == std::set<std::string>{"daily"});
  CHECK(r.corpus.tweets.size() == 93);

  SUBCASE("fixed point") {
    const auto again = filter_active_outlets(r.corpus);
    CHECK(again.removed.empty());
    CHECK(again.corpus.tweets.size() == r.corpus.tweets.size());
  }
}

TEST_CASE("make_corpus drops out-of-window tweets with a warning") {
  WarningCapture cap;
  const Window w{parse_date("2015-10-25"), parse_date("2015-10-25")};
  const auto c = make_corpus({tweet("1", "a", kOct25), tweet("2", "a", kOct25 + 86400)}, w);
  CHECK(c.tweets.size() == 1);
  CHECK(cap.contains("outside"));
}

TEST_CASE("make_corpus can exclude retweets") {
  auto rt = tweet("2", "a", kOct25 + 5);
  rt.is_retweet = true;
  const Window w{parse_date("2015-10-25"), parse_date("2015-10-25")};
  CHECK(make_corpus({tweet("1", "a", kOct25), rt}, w).tweets.size() == 2);
  CHECK(make_corpus({tweet("1", "a", kOct25), rt}, w, true).tweets.size() == 1);
}

TEST_CASE("infer_window covers every tweet") {
  const auto w = infer_window({tweet("1", "a", kOct25 + 100), tweet("2", "a", kOct25 + 3 * 86400)});
  CHECK(format_date(w.start) == "2015-10-25");
  CHECK(format_date(w.end) == "2015-10-28");
  CHECK_THROWS_AS(infer_window({}), DataError);
}

TEST_CASE("partition_by_day buckets by UTC day") {
  const Window w{parse_date("2015-10-25"), parse_date("2015-10-26")};
  const auto c = make_corpus({tweet("1", "a", kOct25 + 23 * 3600 + 59 * 60), tweet("2", "a", kOct25 + 86400 + 60),
                              tweet("3", "b", kOct25 + 86400 + 12 * 3600)},
                             w);
  const auto days = partition_by_day(tokenize(c, {}));
  REQUIRE(days.size() == 2);
  CHECK(days.at(parse_date("2015-10-25")).size() == 1);
  CHECK(days.at(parse_date("2015-10-26")).size() == 2);

  std::size_t total = 0;
  for (const auto& [d, docs] : days) total += docs.size();
  CHECK(total == c.tweets.size());
}

TEST_CASE("partition_by_day edge cases") {
  CHECK(partition_by_day({}).empty());
  const Window w{parse_date("2015-10-25"), parse_date("2015-10-25")};
  const auto c = make_corpus({tweet("1", "a", kOct25), tweet("2", "b", kOct25 + 10), tweet("3", "c", kOct25 + 20)}, w);
  const auto days = partition_by_day(tokenize(c, {}));
  REQUIRE(days.size() == 1);
  CHECK(days.begin()->second.size() == 3);
}
