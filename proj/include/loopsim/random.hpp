#pragma once

#include <cstddef>
#include <cstdint>

#include <boost/random/mersenne_twister.hpp>

namespace loopsim {

/// The per-trial random stream.
///
/// Every random quantity in a trial (interest step size, policy draws, noise,
/// clicks, restarts) is drawn from one of these, in a fixed order per step.
/// The engine and the distributions come from Boost.Random, whose algorithms
/// are fixed by source rather than by the standard library vendor, so a seed
/// reproduces the same trace on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  /// Uniform on [lo, hi).
  double Uniform(double lo, double hi);
  /// Uniform on [0, 1).
  double Uniform01();
  bool Bernoulli(double p);
  double Beta(double alpha, double beta);
  /// Uniform integer in [0, n). Requires n >= 1.
  std::size_t Index(std::size_t n);

 private:
  boost::random::mt19937_64 engine_;
};

/// SplitMix64 finalizer; a bijection on 64-bit words.
std::uint64_t MixBits(std::uint64_t x);

/// Seed for trial `trial_index` of the grid cell identified by `cell_id`.
/// Distinct trial indices always yield distinct seeds for a fixed
/// (master_seed, cell_id).
std::uint64_t DeriveSeed(std::uint64_t master_seed, std::uint64_t cell_id,
                         std::uint64_t trial_index);

}  // namespace loopsim
