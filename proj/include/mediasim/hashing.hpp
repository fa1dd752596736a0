#pragma once

#include <cstdint>
#include <string_view>

namespace mediasim {

// MurmurHash64A. Stable across platforms with the same endianness.
std::uint64_t murmur64(std::string_view bytes, std::uint64_t seed);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace mediasim
