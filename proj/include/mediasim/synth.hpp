#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mediasim/corpus.hpp"
#include "mediasim/ownership.hpp"

namespace mediasim {

/// Planted-ownership corpus. Every owner has a private pool of daily stories
/// that all of its outlets post as near-duplicates (each token replaced with
/// probability `noise`). Outlets also post background tweets drawn from a
/// regional vocabulary; regions are assigned independently of ownership, so
/// word usage clusters by region while story overlap clusters by owner.
struct SynthConfig {
  std::size_t owners = 8;
  std::size_t outlets_per_owner = 5;
  std::size_t days = 30;
  std::size_t stories_per_owner_per_day = 3;
  double noise = 0.1;
  std::uint64_t seed = 1;

  std::size_t background_per_outlet_per_day = 4;
  std::size_t regions = 4;
  std::size_t story_length = 14;
  std::size_t background_length = 10;
  std::size_t shared_vocabulary = 3000;
  std::size_t regional_vocabulary = 150;
  std::string start_date = "2015-10-25";
};

struct SyntheticData {
  std::vector<Tweet> tweets;
  std::vector<OwnershipRecord> registry;
  Window window;
};

SyntheticData generate_synthetic(const SynthConfig& config);

std::string synthetic_outlet_name(std::size_t owner, std::size_t outlet);
std::string synthetic_owner_name(std::size_t owner);

}  // namespace mediasim
