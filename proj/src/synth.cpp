#include "mediasim/synth.hpp"

#include <cstdio>
#include <random>

#include "mediasim/error.hpp"

namespace mediasim {
namespace {

constexpr std::string_view kConsonants = "bcdfgjklmnprstvz";
constexpr std::string_view kVowels = "aeiou";

// Three consonant-vowel syllables per word: 6 letters, never a stopword.
std::string pseudo_word(std::size_t index) {
  const std::size_t syllables = kConsonants.size() * kVowels.size();
  std::string w;
  for (int s = 0; s < 3; ++s) {
    const auto syl = index % syllables;
    index /= syllables;
    w.push_back(kConsonants[syl / kVowels.size()]);
    w.push_back(kVowels[syl % kVowels.size()]);
  }
  return w;
}

std::string join(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  return s;
}

}  // namespace

std::string synthetic_outlet_name(std::size_t owner, std::size_t outlet) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "outlet_%02zu_%zu", owner, outlet);
  return buf;
}

std::string synthetic_owner_name(std::size_t owner) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "Owner %02zu", owner);
  return buf;
}

SyntheticData generate_synthetic(const SynthConfig& c) {
  if (c.owners == 0 || c.outlets_per_owner == 0 || c.days == 0) {
    throw ConfigError("synth: owners, outlets per owner and days must be positive");
  }
  if (c.noise < 0.0 || c.noise > 1.0) throw ConfigError("synth: noise must be in [0,1]");
  if (c.regions == 0 || c.shared_vocabulary == 0 || c.regional_vocabulary == 0) {
    throw ConfigError("synth: vocabulary sizes and region count must be positive");
  }

  std::mt19937_64 rng(c.seed);
  auto uniform_index = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  std::bernoulli_distribution substitute(c.noise);

  auto shared_word = [&](std::size_t i) { return pseudo_word(i); };
  auto regional_word = [&](std::size_t region, std::size_t i) {
    return pseudo_word(c.shared_vocabulary + region * c.regional_vocabulary + i);
  };

  SyntheticData out;
  const Date start = parse_date(c.start_date);
  out.window = {start, start + std::chrono::days{static_cast<long>(c.days) - 1}};

  std::vector<std::size_t> region(c.owners * c.outlets_per_owner);
  for (auto& r : region) r = uniform_index(c.regions);

  for (std::size_t o = 0; o < c.owners; ++o) {
    for (std::size_t j = 0; j < c.outlets_per_owner; ++j) {
      out.registry.push_back({synthetic_outlet_name(o, j), {{synthetic_owner_name(o), 1.0}}, synthetic_owner_name(o)});
    }
  }

  std::size_t next_id = 0;
  auto emit = [&](std::size_t owner, std::size_t outlet, Date day, std::string text) {
    char id[32];
    std::snprintf(id, sizeof id, "t%08zu", next_id++);
    const auto day_start = static_cast<std::int64_t>(day.time_since_epoch().count()) * 86400;
    const auto offset = static_cast<std::int64_t>(uniform_index(86400));
    out.tweets.push_back({id, synthetic_outlet_name(owner, outlet), day_start + offset, std::move(text), false});
  };

  for (std::size_t d = 0; d < c.days; ++d) {
    const Date day = start + std::chrono::days{static_cast<long>(d)};
    for (std::size_t o = 0; o < c.owners; ++o) {
      for (std::size_t s = 0; s < c.stories_per_owner_per_day; ++s) {
        std::vector<std::string> story(c.story_length);
        for (auto& w : story) w = shared_word(uniform_index(c.shared_vocabulary));
        for (std::size_t j = 0; j < c.outlets_per_owner; ++j) {
          auto variant = story;
          for (auto& w : variant) {
            if (substitute(rng)) w = shared_word(uniform_index(c.shared_vocabulary));
          }
          emit(o, j, day, join(variant));
        }
      }
    }
    for (std::size_t o = 0; o < c.owners; ++o) {
      for (std::size_t j = 0; j < c.outlets_per_owner; ++j) {
        const auto r = region[o * c.outlets_per_owner + j];
        for (std::size_t b = 0; b < c.background_per_outlet_per_day; ++b) {
          std::vector<std::string> words(c.background_length);
          for (auto& w : words) w = regional_word(r, uniform_index(c.regional_vocabulary));
          emit(o, j, day, join(words));
        }
      }
    }
  }
  return out;
}

}  // namespace mediasim
