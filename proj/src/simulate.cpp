#include "weaklevy/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "weaklevy/levy_measure.hpp"
#include "weaklevy/moments.hpp"
#include "weaklevy/rng.hpp"
#include "weaklevy/special.hpp"
#include "weaklevy/time_algebra.hpp"

namespace weaklevy {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Superposition: return "superposition";
    case Scheme::Marked: return "marked";
    case Scheme::Strong: return "strong";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "superposition") return Scheme::Superposition;
  if (name == "marked") return Scheme::Marked;
  if (name == "strong") return Scheme::Strong;
  throw SpecError("unknown scheme '" + name +
                  "' (expected superposition, marked, or strong)");
}

Vector uniform_grid(double t_max, Index steps) {
  if (!(t_max > 0.0) || steps < 1) {
    throw SpecError("uniform_grid: need t_max > 0 and steps >= 1");
  }
  Vector g(steps + 1);
  for (Index s = 0; s <= steps; ++s) {
    g[s] = t_max * static_cast<double>(s) / static_cast<double>(steps);
  }
  return g;
}

Index worker_count(Index jobs) {
  if (jobs <= 1) return jobs < 1 ? 1 : jobs;
  Index workers = static_cast<Index>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (const char* env = std::getenv("WEAKLEVY_THREADS")) {
    char* end = nullptr;
    const long parsed = std::strtol(env, &end, 10);
    if (end != env && parsed >= 1) workers = static_cast<Index>(parsed);
  }
  return std::min(workers, jobs);
}

void parallel_chunks(Index jobs, const std::function<void(Index, Index)>& chunk) {
  if (jobs <= 0) return;
  const Index workers = worker_count(jobs);
  if (workers <= 1) {
    chunk(0, jobs);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const Index base = jobs / workers;
  const Index extra = jobs % workers;
  Index begin = 0;
  for (Index w = 0; w < workers; ++w) {
    const Index len = base + (w < extra ? 1 : 0);
    const Index end = begin + len;
    pool.emplace_back([&chunk, begin, end] { chunk(begin, end); });
    begin = end;
  }
  for (auto& th : pool) th.join();
}

namespace {

void require_grid(const Vector& grid) {
  if (grid.size() < 2 || grid[0] != 0.0) {
    throw SpecError("time grid must start at 0 and contain at least one step");
  }
  for (Index s = 1; s < grid.size(); ++s) {
    if (!(grid[s] > grid[s - 1]) || !std::isfinite(grid[s])) {
      throw SpecError("time grid must be strictly increasing and finite");
    }
  }
}

// Precomputed Gaussian marking kernel for a fixed jump shape t0: a jump of
// size s*t0 is marked with N(s*(t0 (.) mu), s*(t0 (.) sigma)).  Axis shapes
// draw a single deviate instead of an n-vector.
struct MarkKernel {
  Vector tm;      // t0 (.) mu
  Matrix factor;  // A with A A' = t0 (.) sigma
  int axis = -1;  // coordinate index when t0 is supported on one axis
  double axis_sd = 0.0;

  static MarkKernel make(const Vector& t0, const BrownianSpec& b,
                         const char* what) {
    MarkKernel k;
    k.tm = time_product_drift(t0, b.mu);
    Index nonzero = 0;
    int last = -1;
    for (Index i = 0; i < t0.size(); ++i) {
      if (t0[i] != 0.0) {
        ++nonzero;
        last = static_cast<int>(i);
      }
    }
    if (nonzero == 1) {
      k.axis = last;
      k.axis_sd = std::sqrt(t0[last] * b.sigma(last, last));
    } else {
      k.factor = psd_factor(time_product_cov(t0, b.sigma), what);
    }
    return k;
  }

  // Adds an exact draw of the mark for jump size s to y (s >= 0).
  void add_mark(double s, RngStream& rng, Vector& y, Vector& scratch) const {
    if (s <= 0.0) return;
    const double root = std::sqrt(s);
    if (axis >= 0) {
      y[axis] += s * tm[axis] + root * axis_sd * rng.normal();
      return;
    }
    for (Index i = 0; i < scratch.size(); ++i) scratch[i] = rng.normal();
    y += s * tm + root * (factor * scratch);
  }
};

struct SampleSlabs {
  PathSample out;
  double* t = nullptr;
  double* y = nullptr;

  SampleSlabs(const Vector& grid, Index n, Index n_paths, std::uint64_t seed,
              Scheme scheme) {
    require_grid(grid);
    if (n_paths < 1) throw SpecError("path count must be at least 1");
    out.time_grid = grid;
    out.dim = n;
    out.n_paths = n_paths;
    out.n_steps = grid.size() - 1;
    out.seed = seed;
    out.scheme = scheme;
    out.bias = Vector::Zero(n);
    const std::size_t cells = static_cast<std::size_t>(n_paths) *
                              static_cast<std::size_t>(out.n_steps) *
                              static_cast<std::size_t>(n);
    out.t_paths.assign(cells, 0.0);
    out.y_paths.assign(cells, 0.0);
    t = out.t_paths.data();
    y = out.y_paths.data();
  }

  void store(Index path, Index step, const Vector& tacc, const Vector& yacc) {
    const std::size_t off = static_cast<std::size_t>(
        (path * out.n_steps + step) * out.dim);
    for (Index k = 0; k < out.dim; ++k) {
      t[off + k] = tacc[k];
      y[off + k] = yacc[k];
    }
  }
};

// Stream salts within one path: 0 is the drift Gaussian, 1+r the r-th ray,
// 1+#rays+j the j-th atom.  Keeping the assignment positional makes every
// draw a function of (seed, path, source) only.
constexpr std::uint64_t kDriftSalt = 0;

}  // namespace

PathSample sample_superposition(const SubordinatorSpec& t,
                                const BrownianSpec& b, const Vector& grid,
                                Index n_paths, std::uint64_t seed) {
  const Index n = t.dim();
  if (b.dim() != n) {
    throw SpecError("sample_superposition: spec dimensions differ");
  }
  SampleSlabs slabs(grid, n, n_paths, seed, Scheme::Superposition);

  const bool has_drift = !t.drift.isZero(0.0);
  MarkKernel drift_kernel;
  if (has_drift) drift_kernel = MarkKernel::make(t.drift, b, "drift covariance");
  std::vector<MarkKernel> ray_kernels;
  ray_kernels.reserve(t.rays.size());
  for (const GammaRay& r : t.rays) {
    ray_kernels.push_back(MarkKernel::make(r.direction, b, "ray covariance"));
  }
  std::vector<MarkKernel> atom_kernels;
  atom_kernels.reserve(t.atoms.size());
  for (const JumpAtom& a : t.atoms) {
    atom_kernels.push_back(MarkKernel::make(a.point, b, "atom covariance"));
  }

  const Index n_rays = static_cast<Index>(t.rays.size());
  const Index n_steps = slabs.out.n_steps;
  const Vector& g = slabs.out.time_grid;

  parallel_chunks(n_paths, [&](Index begin, Index end) {
    Vector tacc(n), yacc(n), scratch(n);
    for (Index p = begin; p < end; ++p) {
      RngStream drift_rng(seed, static_cast<std::uint64_t>(p), kDriftSalt);
      std::vector<RngStream> ray_rng;
      ray_rng.reserve(t.rays.size());
      for (Index r = 0; r < n_rays; ++r) {
        ray_rng.emplace_back(seed, static_cast<std::uint64_t>(p),
                             1 + static_cast<std::uint64_t>(r));
      }
      std::vector<RngStream> atom_rng;
      atom_rng.reserve(t.atoms.size());
      for (std::size_t j = 0; j < t.atoms.size(); ++j) {
        atom_rng.emplace_back(seed, static_cast<std::uint64_t>(p),
                              1 + static_cast<std::uint64_t>(n_rays) + j);
      }
      tacc.setZero();
      yacc.setZero();
      for (Index s = 0; s < n_steps; ++s) {
        const double dt = g[s + 1] - g[s];
        if (has_drift) {
          tacc += dt * t.drift;
          drift_kernel.add_mark(dt, drift_rng, yacc, scratch);
        }
        for (Index r = 0; r < n_rays; ++r) {
          const GammaRay& ray = t.rays[static_cast<std::size_t>(r)];
          const double inc =
              ray_rng[static_cast<std::size_t>(r)].gamma(ray.shape * dt) /
              ray.rate;
          if (inc > 0.0) {
            tacc += inc * ray.direction;
            ray_kernels[static_cast<std::size_t>(r)].add_mark(
                inc, ray_rng[static_cast<std::size_t>(r)], yacc, scratch);
          }
        }
        for (std::size_t j = 0; j < t.atoms.size(); ++j) {
          const JumpAtom& atom = t.atoms[j];
          const std::uint64_t count = atom_rng[j].poisson(atom.intensity * dt);
          if (count > 0) {
            const double m = static_cast<double>(count);
            tacc += m * atom.point;
            atom_kernels[j].add_mark(m, atom_rng[j], yacc, scratch);
          }
        }
        slabs.store(p, s, tacc, yacc);
      }
    }
  });
  return slabs.out;
}

PathSample sample_wvag(const WVaGParams& p, const Vector& grid, Index n_paths,
                       std::uint64_t seed) {
  const WVaGParams q = validate_wvag(p);
  PathSample out = sample_superposition(
      alpha_gamma_rays(q), BrownianSpec::make(q.mu, q.sigma), grid, n_paths,
      seed);
  return out;
}

Vector truncation_bias(const SubordinatorSpec& t, double epsilon) {
  if (!(epsilon > 0.0)) throw SpecError("truncation_bias: epsilon must be > 0");
  Vector bias = Vector::Zero(t.dim());
  for (const GammaRay& r : t.rays) {
    bias += (r.shape * -std::expm1(-r.rate * epsilon) / r.rate) * r.direction;
  }
  return bias;
}

double default_epsilon(const SubordinatorSpec& t) {
  if (t.rays.empty()) return 1e-6;
  const double mean_norm = subordinator_moments(t).mean.norm();
  double eps = std::numeric_limits<double>::infinity();
  for (const GammaRay& r : t.rays) {
    // Require ||u|| * a * (1 - e^{-b eps}) / b <= 1e-6 * ||E T(1)||.
    double c = 1e-6 * mean_norm * r.rate / (r.shape * r.direction.norm());
    c = std::min(c, 1.0 - 1e-12);
    eps = std::min(eps, -std::log1p(-c) / r.rate);
  }
  return eps;
}

namespace detail {

namespace {

// Solves e^x = E1(z) for z, working in log space: ln(e^z E1(z)) - z = x.
// Near the root, h is a difference of O(1) terms, so its evaluation noise
// is ~1e-16 and the iterates can jitter; track the best residual seen and
// accept it once it is at rounding level.
double solve_e1_log(double x, double z_init) {
  double z = std::max(z_init, 1e-300);
  double best_z = z;
  double best_h = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100; ++it) {
    const double scaled = exponential_integral_e1_scaled(z);
    const double h = std::log(scaled) - z - x;
    if (std::abs(h) < best_h) {
      best_h = std::abs(h);
      best_z = z;
    }
    // h'(z) = -1/(z * e^z E1(z)); Newton step z <- z + h * z * scaled.
    const double step = h * z * scaled;
    const double znew = std::max(0.5 * z, std::min(2.0 * z, z + step));
    if (std::abs(znew - z) <= 4e-15 * z) return znew;
    z = znew;
  }
  // dz = |h| * z * e^z E1(z); a residual at rounding level keeps the
  // relative error in z far below the 1e-10 quantile-table target.
  if (best_h <= 1e-12 * std::max(1.0, std::abs(x))) return best_z;
  throw NumericError("truncated gamma sampler: inverse-CDF solve stalled");
}

double hermite_eval(double x0, double x1, double y0, double y1, double m0,
                    double m1, double x) {
  const double h = x1 - x0;
  const double u = (x - x0) / h;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2.0 * u3 - 3.0 * u2 + 1.0) * y0 + (u3 - 2.0 * u2 + u) * h * m0 +
         (-2.0 * u3 + 3.0 * u2) * y1 + (u3 - u2) * h * m1;
}

}  // namespace

TruncatedGammaSampler::TruncatedGammaSampler(double shape, double rate,
                                             double epsilon) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw SpecError("truncated gamma sampler: shape and rate must be > 0");
  }
  if (!(epsilon > 0.0)) {
    throw SpecError("truncated gamma sampler: epsilon must be > 0");
  }
  rate_ = rate;
  epsilon_ = epsilon;
  tail_at_eps_ = exponential_integral_e1(rate * epsilon);
  intensity_ = shape * tail_at_eps_;

  // Tail top z_lo = rate*eps; bottom z_hi where E1 drops below 1e-18 of the
  // tail at eps (uniform draws cannot reach below ~5.6e-17 of the tail, so
  // the Newton fallback is a safety net only).
  const double z_lo = rate * epsilon;
  const double target = 1e-18 * tail_at_eps_;
  double z_hi = std::max(2.0 * z_lo, -std::log(target) + 10.0);
  while (exponential_integral_e1(z_hi) > target) z_hi *= 1.5;

  for (Index n_nodes = 129; n_nodes <= 262145; n_nodes = 2 * (n_nodes - 1) + 1) {
    x_.assign(static_cast<std::size_t>(n_nodes), 0.0);
    y_.assign(static_cast<std::size_t>(n_nodes), 0.0);
    slope_.assign(static_cast<std::size_t>(n_nodes), 0.0);
    const double lz_lo = std::log(z_lo);
    const double lz_hi = std::log(z_hi);
    // Nodes descending in z give ascending x = ln E1(z).
    for (Index i = 0; i < n_nodes; ++i) {
      const double lz = lz_hi + (lz_lo - lz_hi) * static_cast<double>(i) /
                                    static_cast<double>(n_nodes - 1);
      const double z = std::exp(lz);
      const std::size_t idx = static_cast<std::size_t>(i);
      const double scaled = exponential_integral_e1_scaled(z);
      x_[idx] = std::log(scaled) - z;
      y_[idx] = lz - std::log(rate);
      // dy/dx = d ln g / d ln E1 = -E1(z) e^z  (z = rate*g).
      slope_[idx] = -scaled;
    }
    // Verify interpolation accuracy at panel midpoints against a direct
    // solve; the table must reproduce g to 1e-10 relative.
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
      const double xm = 0.5 * (x_[i] + x_[i + 1]);
      const double ym = hermite_eval(x_[i], x_[i + 1], y_[i], y_[i + 1],
                                     slope_[i], slope_[i + 1], xm);
      const double z_exact =
          solve_e1_log(xm, rate * std::exp(0.5 * (y_[i] + y_[i + 1])));
      const double g_exact = z_exact / rate;
      worst = std::max(worst, std::abs(std::exp(ym) - g_exact) / g_exact);
    }
    if (worst <= 1e-10) return;
  }
  throw NumericError(
      "truncated gamma sampler: quantile table failed to reach 1e-10");
}

double TruncatedGammaSampler::quantile(double v) const {
  if (!(v > 0.0) || !(v < 1.0)) {
    throw SpecError("truncated gamma sampler: quantile argument outside (0,1)");
  }
  const double x = std::log(v) + std::log(tail_at_eps_);
  if (x >= x_.back()) return epsilon_;
  if (x <= x_.front()) {
    // Below the table: direct solve, started from the asymptotic inverse of
    // ln E1(z) ~ -z - ln z.
    const double z0 = std::max(-x - std::log(std::max(-x, 2.0)), 1.5);
    return solve_e1_log(x, z0) / rate_;
  }
  const std::size_t hi = static_cast<std::size_t>(
      std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
  const std::size_t lo = hi - 1;
  const double y = hermite_eval(x_[lo], x_[hi], y_[lo], y_[hi], slope_[lo],
                                slope_[hi], x);
  return std::max(std::exp(y), epsilon_);
}

}  // namespace detail

PathSample sample_weak_marked(const SubordinatorSpec& t, const BrownianSpec& b,
                              const Vector& grid, Index n_paths,
                              double epsilon, std::uint64_t seed) {
  const Index n = t.dim();
  if (b.dim() != n) {
    throw SpecError("sample_weak_marked: spec dimensions differ");
  }
  if (!(epsilon > 0.0)) {
    throw SpecError("sample_weak_marked: epsilon must be > 0");
  }
  SampleSlabs slabs(grid, n, n_paths, seed, Scheme::Marked);
  slabs.out.epsilon = epsilon;
  slabs.out.bias = truncation_bias(t, epsilon);

  const bool has_drift = !t.drift.isZero(0.0);
  MarkKernel drift_kernel;
  if (has_drift) drift_kernel = MarkKernel::make(t.drift, b, "drift covariance");
  std::vector<MarkKernel> ray_kernels;
  std::vector<detail::TruncatedGammaSampler> ray_samplers;
  ray_kernels.reserve(t.rays.size());
  ray_samplers.reserve(t.rays.size());
  for (const GammaRay& r : t.rays) {
    ray_kernels.push_back(MarkKernel::make(r.direction, b, "ray covariance"));
    ray_samplers.emplace_back(r.shape, r.rate, epsilon);
  }
  std::vector<MarkKernel> atom_kernels;
  atom_kernels.reserve(t.atoms.size());
  for (const JumpAtom& a : t.atoms) {
    atom_kernels.push_back(MarkKernel::make(a.point, b, "atom covariance"));
  }

  const Index n_rays = static_cast<Index>(t.rays.size());
  const Index n_steps = slabs.out.n_steps;
  const Vector& g = slabs.out.time_grid;

  parallel_chunks(n_paths, [&](Index begin, Index end) {
    Vector tacc(n), yacc(n), scratch(n);
    for (Index p = begin; p < end; ++p) {
      RngStream drift_rng(seed, static_cast<std::uint64_t>(p), kDriftSalt);
      std::vector<RngStream> ray_rng;
      for (Index r = 0; r < n_rays; ++r) {
        ray_rng.emplace_back(seed, static_cast<std::uint64_t>(p),
                             1 + static_cast<std::uint64_t>(r));
      }
      std::vector<RngStream> atom_rng;
      for (std::size_t j = 0; j < t.atoms.size(); ++j) {
        atom_rng.emplace_back(seed, static_cast<std::uint64_t>(p),
                              1 + static_cast<std::uint64_t>(n_rays) + j);
      }
      tacc.setZero();
      yacc.setZero();
      for (Index s = 0; s < n_steps; ++s) {
        const double dt = g[s + 1] - g[s];
        if (has_drift) {
          tacc += dt * t.drift;
          drift_kernel.add_mark(dt, drift_rng, yacc, scratch);
        }
        for (Index r = 0; r < n_rays; ++r) {
          const std::size_t ri = static_cast<std::size_t>(r);
          const GammaRay& ray = t.rays[ri];
          RngStream& rng = ray_rng[ri];
          const std::uint64_t jumps =
              rng.poisson(ray_samplers[ri].intensity() * dt);
          for (std::uint64_t i = 0; i < jumps; ++i) {
            const double size = ray_samplers[ri].quantile(rng.uniform());
            tacc += size * ray.direction;
            ray_kernels[ri].add_mark(size, rng, yacc, scratch);
          }
        }
        for (std::size_t j = 0; j < t.atoms.size(); ++j) {
          const JumpAtom& atom = t.atoms[j];
          const std::uint64_t count = atom_rng[j].poisson(atom.intensity * dt);
          if (count > 0) {
            const double m = static_cast<double>(count);
            tacc += m * atom.point;
            atom_kernels[j].add_mark(m, atom_rng[j], yacc, scratch);
          }
        }
        slabs.store(p, s, tacc, yacc);
      }
    }
  });
  return slabs.out;
}

namespace {

enum class StrongRegime { CommonRay, AxisRays };

StrongRegime classify_strong_regime(const SubordinatorSpec& t,
                                    const BrownianSpec& b) {
  if (!t.atoms.empty() || !t.drift.isZero(0.0) || t.rays.empty()) {
    throw SpecError(
        "sample_strong: spec must be drift-less with gamma rays only");
  }
  bool all_common = true;
  bool all_axis = true;
  for (const GammaRay& r : t.rays) {
    const double lo = r.direction.minCoeff();
    const double hi = r.direction.maxCoeff();
    if (!(lo == hi && lo > 0.0)) all_common = false;
    Index nonzero = 0;
    for (Index i = 0; i < r.direction.size(); ++i) {
      if (r.direction[i] != 0.0) ++nonzero;
    }
    if (nonzero != 1) all_axis = false;
  }
  if (all_common) return StrongRegime::CommonRay;
  if (all_axis) {
    for (Index i = 0; i < b.sigma.rows(); ++i) {
      for (Index j = 0; j < b.sigma.cols(); ++j) {
        if (i != j && b.sigma(i, j) != 0.0) {
          throw SpecError(
              "sample_strong: axis-ray regime requires a diagonal sigma");
        }
      }
    }
    return StrongRegime::AxisRays;
  }
  throw SpecError(
      "sample_strong: subordinator outside the traditional regimes (one "
      "common equal-component ray family, or axis-only rays)");
}

}  // namespace

PathSample sample_strong(const SubordinatorSpec& t, const BrownianSpec& b,
                         const Vector& grid, Index n_paths,
                         std::uint64_t seed) {
  const Index n = t.dim();
  if (b.dim() != n) throw SpecError("sample_strong: spec dimensions differ");
  const StrongRegime regime = classify_strong_regime(t, b);
  SampleSlabs slabs(grid, n, n_paths, seed, Scheme::Strong);

  Matrix sigma_factor;
  if (regime == StrongRegime::CommonRay) {
    sigma_factor = psd_factor(b.sigma, "covariance");
  }
  Vector diag_sd;
  if (regime == StrongRegime::AxisRays) {
    diag_sd = b.sigma.diagonal().cwiseMax(0.0).cwiseSqrt();
  }

  const Index n_rays = static_cast<Index>(t.rays.size());
  const Index n_steps = slabs.out.n_steps;
  const Vector& g = slabs.out.time_grid;

  parallel_chunks(n_paths, [&](Index begin, Index end) {
    Vector tacc(n), yacc(n), dT(n), z(n);
    for (Index p = begin; p < end; ++p) {
      RngStream gauss_rng(seed, static_cast<std::uint64_t>(p), kDriftSalt);
      std::vector<RngStream> ray_rng;
      for (Index r = 0; r < n_rays; ++r) {
        ray_rng.emplace_back(seed, static_cast<std::uint64_t>(p),
                             1 + static_cast<std::uint64_t>(r));
      }
      tacc.setZero();
      yacc.setZero();
      for (Index s = 0; s < n_steps; ++s) {
        const double dt = g[s + 1] - g[s];
        dT.setZero();
        for (Index r = 0; r < n_rays; ++r) {
          const GammaRay& ray = t.rays[static_cast<std::size_t>(r)];
          const double inc =
              ray_rng[static_cast<std::size_t>(r)].gamma(ray.shape * dt) /
              ray.rate;
          dT += inc * ray.direction;
        }
        tacc += dT;
        // Given dT, the Brownian evaluation increments are jointly Gaussian
        // with mean mu (.) dT and covariance dT (.) sigma.
        if (regime == StrongRegime::CommonRay) {
          for (Index i = 0; i < n; ++i) z[i] = gauss_rng.normal();
          yacc += dT.cwiseProduct(b.mu) +
                  std::sqrt(dT[0]) * (sigma_factor * z);
        } else {
          for (Index i = 0; i < n; ++i) {
            yacc[i] += dT[i] * b.mu[i] +
                       std::sqrt(dT[i]) * diag_sd[i] * gauss_rng.normal();
          }
        }
        slabs.store(p, s, tacc, yacc);
      }
    }
  });
  return slabs.out;
}

}  // namespace weaklevy
