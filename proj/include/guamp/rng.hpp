#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace guamp {

// Reproducible random stream.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Streams are keyed by a master seed and a list of indices
// (cell, trial, ...) through SplitMix64 mixing, so independent trials get
// decorrelated streams without sharing state. Uniforms and normals are
// produced here rather than through <random> distributions, whose algorithms
// are implementation-defined; the resulting draws are identical on every
// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  // Stream derived from (master_seed, indices...).
  static Rng for_stream(std::uint64_t master_seed,
                        std::initializer_list<std::uint64_t> indices);

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Standard normal (Marsaglia polar method).
  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace guamp
