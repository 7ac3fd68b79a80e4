#include "loopsim/random.hpp"

#include <stdexcept>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/uniform_01.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

namespace loopsim {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::Uniform(double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::Uniform01() { return boost::random::uniform_01<double>()(engine_); }

bool Rng::Bernoulli(double p) { return Uniform01() < p; }

double Rng::Beta(double alpha, double beta) {
  return boost::random::beta_distribution<double>(alpha, beta)(engine_);
}

std::size_t Rng::Index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("Rng::Index: empty range");
  return boost::random::uniform_int_distribution<std::size_t>(0, n - 1)(
      engine_);
}

std::uint64_t MixBits(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t DeriveSeed(std::uint64_t master_seed, std::uint64_t cell_id,
                         std::uint64_t trial_index) {
  constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  const std::uint64_t base = MixBits(MixBits(master_seed + kGolden) ^ cell_id);
  // base + odd * trial is injective in trial, and MixBits is a bijection.
  return MixBits(base + kGolden * (trial_index + 1));
}

}  // namespace loopsim
