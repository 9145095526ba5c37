#pragma once

#include <cstdint>
#include <random>

#include "diffblp/errors.hpp"

namespace diffblp {

// Defined in qmc.cpp (rational approximation + one Newton polish).
double inverse_normal_cdf(double p);

// Stateless 64-bit mix, used to derive independent sub-stream seeds
// (replications, chains, restarts) from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(master ^ splitmix64(stream + 0x51ed2701ULL));
}

// mt19937_64 core (bit-exact across platforms per the standard) with
// explicitly-specified output transforms, so streams reproduce everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform on [0, 1): 53 significand bits
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // inclusive range, unbiased via rejection
  long uniform_int(long lo, long hi) {
    if (hi < lo) throw DomainError("uniform_int: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return lo + static_cast<long>(x % range);
  }

  double normal() {
    // midpoint offset keeps the argument strictly inside (0, 1)
    double u = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    return inverse_normal_cdf(u);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace diffblp
