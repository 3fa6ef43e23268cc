#include "weaklevy/rng.hpp"

#include <cmath>

#include "weaklevy/types.hpp"

namespace weaklevy {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t path,
                     std::uint64_t salt) {
  // Fold the key into a single state word with full avalanche between the
  // components, so neighbouring (seed, path, salt) triples decorrelate.
  std::uint64_t s = seed;
  std::uint64_t acc = splitmix64_next(s);
  s = acc ^ (path + 0x9e3779b97f4a7c15ULL);
  acc = splitmix64_next(s);
  s = acc ^ (salt + 0xbf58476d1ce4e5b9ULL);
  acc = splitmix64_next(s);
  state_ = acc;
}

std::uint64_t RngStream::next_u64() { return splitmix64_next(state_); }

double RngStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double c = std::cos(2.0 * M_PI * u2);
  const double s = std::sin(2.0 * M_PI * u2);
  spare_ = r * s;
  has_spare_ = true;
  return r * c;
}

double RngStream::exponential() { return -std::log(uniform()); }

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw SpecError("gamma variate: shape must be positive");
  if (shape < 1.0) {
    // Boost: Gamma(shape) = Gamma(shape + 1) * U^{1/shape}.
    const double g = gamma(shape + 1.0);
    const double u = uniform();
    return g * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t RngStream::poisson(double mean) {
  if (!(mean >= 0.0)) throw SpecError("poisson variate: mean must be >= 0");
  std::uint64_t total = 0;
  // Split large means into chunks so exp(-chunk) stays well above underflow.
  while (mean > 30.0) {
    constexpr double kChunk = 30.0;
    const double limit = std::exp(-kChunk);
    std::uint64_t k = 0;
    double prod = 1.0;
    do {
      ++k;
      prod *= uniform();
    } while (prod > limit);
    total += k - 1;
    mean -= kChunk;
  }
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = 1.0;
  do {
    ++k;
    prod *= uniform();
  } while (prod > limit);
  return total + k - 1;
}

}  // namespace weaklevy
