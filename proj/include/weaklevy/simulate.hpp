#pragma once

// Path samplers for the pair Z = (T, X o T):
//  * superposition: exact increments for any drift + gamma-ray + atom
//    subordinator with a Brownian subordinate (per-ray gamma increment plus
//    a Gaussian mark, per-atom Poisson counts, Gaussian drift part),
//  * marked: marked-point-process scheme -- ray jumps above a truncation
//    epsilon arrive as a Poisson process and are marked with independent
//    Gaussian draws; the omitted small-jump mass is reported, not added,
//  * strong: reference sampler by conditioning for the two classical
//    regimes (one common ray with arbitrary sigma, or axis-only rays with
//    diagonal sigma); it draws T first and then evaluates the Brownian
//    motion at the accumulated componentwise times.
//
// All schemes are deterministic functions of (seed, params, grid, paths):
// path p consumes only streams keyed by (seed, p, salt), so outputs do not
// depend on the number of worker threads.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "weaklevy/types.hpp"

namespace weaklevy {

enum class Scheme { Superposition, Marked, Strong };

const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct PathSample {
  Vector time_grid;  // m+1 points, time_grid[0] == 0, strictly increasing
  Index dim = 0;     // n
  Index n_paths = 0;
  Index n_steps = 0;  // number of stored grid points (excludes t = 0)
  // Accumulated values at time_grid[s+1], flattened as [path][step][coord].
  std::vector<double> t_paths;
  std::vector<double> y_paths;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::Superposition;
  double epsilon = 0.0;  // truncation level (marked scheme only)
  Vector bias;           // expected truncated jump mass per unit time

  double t_at(Index path, Index step, Index k) const {
    return t_paths[static_cast<std::size_t>((path * n_steps + step) * dim + k)];
  }
  double y_at(Index path, Index step, Index k) const {
    return y_paths[static_cast<std::size_t>((path * n_steps + step) * dim + k)];
  }
};

// Uniform grid 0, t_max/steps, ..., t_max.
Vector uniform_grid(double t_max, Index steps);

// Worker count for parallel loops: min(WEAKLEVY_THREADS or hardware
// concurrency, jobs), at least 1.
Index worker_count(Index jobs);

// Runs chunk(begin, end) over a static partition of [0, jobs) using
// worker_count(jobs) threads.  chunk must only write to disjoint slices.
void parallel_chunks(Index jobs,
                     const std::function<void(Index, Index)>& chunk);

// Exact sampler for drift + rays + atoms subordinators.
PathSample sample_superposition(const SubordinatorSpec& t,
                                const BrownianSpec& b, const Vector& grid,
                                Index n_paths, std::uint64_t seed);

// Exact WVaG sampler; delegates to sample_superposition over the common
// alpha ray and the axis rays, so the common component is generated by the
// same per-ray code path as univariate ray subordination.
PathSample sample_wvag(const WVaGParams& p, const Vector& grid, Index n_paths,
                       std::uint64_t seed);

// Marked-point-process sampler with small-jump truncation at epsilon.
PathSample sample_weak_marked(const SubordinatorSpec& t, const BrownianSpec& b,
                              const Vector& grid, Index n_paths,
                              double epsilon, std::uint64_t seed);

// Strong-subordination reference sampler (see file comment for the two
// admissible regimes).
PathSample sample_strong(const SubordinatorSpec& t, const BrownianSpec& b,
                         const Vector& grid, Index n_paths,
                         std::uint64_t seed);

// Expected omitted jump mass per unit time for the marked scheme:
// sum over rays of u * shape * (1 - exp(-rate*epsilon)) / rate.
Vector truncation_bias(const SubordinatorSpec& t, double epsilon);

// Largest epsilon whose per-ray bias norm stays below 1e-6 * ||E T(1)||.
double default_epsilon(const SubordinatorSpec& t);

namespace detail {

// Inverse-CDF sampler for ray jump sizes g > epsilon with Levy density
// shape * exp(-rate*g)/g, normalized by the tail mass shape*E1(rate*eps).
// quantile(v) returns the g solving E1(rate*g) = v * E1(rate*epsilon),
// evaluated on a precomputed monotone cubic Hermite table (relative
// tolerance 1e-10) with a Newton fallback below the tabulated range.
class TruncatedGammaSampler {
 public:
  TruncatedGammaSampler(double shape, double rate, double epsilon);

  double quantile(double v) const;  // v in (0,1)
  double intensity() const { return intensity_; }  // jumps per unit time
  double epsilon() const { return epsilon_; }

 private:
  double rate_ = 1.0;
  double epsilon_ = 0.0;
  double intensity_ = 0.0;
  double tail_at_eps_ = 0.0;      // E1(rate*epsilon)
  std::vector<double> x_;         // ln of tail values, ascending
  std::vector<double> y_;         // ln g at the nodes, descending in x
  std::vector<double> slope_;     // dy/dx at the nodes
};

}  // namespace detail

}  // namespace weaklevy
