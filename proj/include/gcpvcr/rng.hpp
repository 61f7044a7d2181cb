#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace gcpvcr {

using Rng = std::mt19937_64;

// Tags for independent random streams. Values are part of the output format:
// changing them changes every seeded result.
enum class Stream : std::uint64_t {
  data = 1,
  split = 2,
  calibration = 3,
  test = 4,
  optimizer = 5,
  measure = 6,
  pool = 7,
  trial = 8,
};

// splitmix64 finaliser
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a sub-stream seed from a parent seed and a path of integers, e.g.
// derive_seed(master, {trial, Stream::test, point}).
inline std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(parent);
  for (std::uint64_t p : path) s = mix64(s ^ mix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

inline constexpr std::uint64_t tag(Stream s) { return static_cast<std::uint64_t>(s); }

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace gcpvcr
