#include "wavestab/random.hpp"

#include <cmath>

namespace wavestab {

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Rng::uniform01() { return double(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

SpectralFunction random_mean_free(Rng& rng, int n_max, double amplitude, double decay) {
  SpectralFunction f(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double scale = amplitude * std::pow(double(n), -decay);
    f.set_cos(n, scale * rng.uniform(-1.0, 1.0));
    f.set_sin(n, scale * rng.uniform(-1.0, 1.0));
  }
  return f;
}

SpectralFunction random_even_mean_free(Rng& rng, int n_max, double amplitude,
                                       double decay) {
  SpectralFunction f(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double scale = amplitude * std::pow(double(n), -decay);
    f.set_cos(n, scale * rng.uniform(-1.0, 1.0));
  }
  return f;
}

}  // namespace wavestab
