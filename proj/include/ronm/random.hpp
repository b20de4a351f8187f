#ifndef RONM_RANDOM_HPP
#define RONM_RANDOM_HPP

#include "ronm/core.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace ronm {

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Named sub-streams of one run seed. Streams are never shared between
/// the learner and the environment.
enum class Stream : std::uint64_t { Sampling = 1, Noise = 2, MonteCarlo = 3, Probe = 4 };

/// A seeded normal/uniform source. Deterministic given its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}
  Rng(std::uint64_t seed, Stream stream)
      : engine_(mix_seed(mix_seed(seed) ^ static_cast<std::uint64_t>(stream))) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double rademacher() { return uniform() < 0.5 ? -1.0 : 1.0; }

  Vector normal_vector(Eigen::Index d) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = normal();
    return v;
  }

  /// Uniform draw in the Euclidean ball of given center and radius.
  Vector uniform_in_ball(const Vector& center, double radius) {
    const Eigen::Index d = center.size();
    Vector u = normal_vector(d);
    double n = u.norm();
    while (n == 0.0) {
      u = normal_vector(d);
      n = u.norm();
    }
    const double rho = radius * std::pow(uniform(), 1.0 / static_cast<double>(d));
    return center + (rho / n) * u;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace ronm

#endif  // RONM_RANDOM_HPP
