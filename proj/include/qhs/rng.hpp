#pragma once

#include <cstdint>
#include <random>

namespace qhs {

std::uint64_t splitmix64(std::uint64_t x);

// Per-trial stream seed. Depends only on (master, index), never on the order
// in which trials are scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Maps 64 random bits to [0, 1) using the top 53 bits.
double to_unit_interval(std::uint64_t bits);

// mt19937_64 has a fully specified output sequence; the std distributions do
// not, so bounded integers and unit doubles are drawn here by hand to keep
// results bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return to_unit_interval(engine_()); }
  // Uniform on [0, bound); bound must be positive.
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace qhs
