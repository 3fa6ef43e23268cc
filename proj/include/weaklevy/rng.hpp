#pragma once

// Deterministic, stream-splittable random number generation.
//
// Every sampler in the library draws from an RngStream keyed by
// (seed, path index, salt).  Streams with distinct keys are statistically
// independent, and the variates produced along one path never depend on how
// many worker threads are running or on the order in which paths complete;
// this is what makes CLI output byte-identical across thread counts.

#include <cstdint>

namespace weaklevy {

// SplitMix64 step: advances the state and returns a mixed 64-bit word.
std::uint64_t splitmix64_next(std::uint64_t& state);

class RngStream {
 public:
  // Key the stream on a user seed, a path index, and a salt that separates
  // the independent sub-streams used within one path (e.g. one per ray).
  RngStream(std::uint64_t seed, std::uint64_t path, std::uint64_t salt);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1): (x >> 11 + 0.5) * 2^-53, so neither
  // endpoint is attainable and logs of uniforms are always finite.
  double uniform();

  // Standard normal via Box-Muller with a cached spare deviate.
  double normal();

  // Exponential with unit mean.
  double exponential();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze, with the standard
  // U^{1/shape} boost for shape < 1.  Scale by 1/rate at the call site.
  double gamma(double shape);

  // Poisson count by Knuth's product-of-uniforms, chunked so that no single
  // product underflows for large means.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace weaklevy
