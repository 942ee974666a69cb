#pragma once

#include <cstdint>

#include "wavestab/spectral.hpp"

namespace wavestab {

/// Deterministic splitmix64 generator.  Sequences are reproducible across
/// platforms, which keeps seeded verification runs byte-identical.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform01();
  double uniform(double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Random mean-free function of the given order with coefficients scaled by
/// amplitude * n^{-decay}.
SpectralFunction random_mean_free(Rng& rng, int n_max, double amplitude = 1.0,
                                  double decay = 0.0);

/// Same but even (pure cosine series), the shape branch states live in.
SpectralFunction random_even_mean_free(Rng& rng, int n_max, double amplitude = 1.0,
                                       double decay = 0.0);

}  // namespace wavestab
