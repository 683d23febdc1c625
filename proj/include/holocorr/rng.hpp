#pragma once

#include <cstdint>
#include <random>

namespace holocorr {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (run seed, work item) so results do not depend on
// how work is split across threads.
inline std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t item) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(item + 0x632be59bd9b4e019ULL)));
}

}  // namespace holocorr
