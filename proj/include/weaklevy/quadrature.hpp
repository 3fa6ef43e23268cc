#pragma once

// Globally adaptive Gauss-Kronrod 7/15 quadrature on finite intervals.
// Works for real- and complex-valued integrands; panels are bisected worst
// error first until the summed Kronrod error estimate meets the tolerance.

#include "weaklevy/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace weaklevy {

namespace gk15 {
// QUADPACK dqk15 abscissae and weights.
inline constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};
}  // namespace gk15

template <class T>
struct QuadPanel {
  double a = 0.0, b = 0.0;
  T value{};
  double error = 0.0;
};

// Single Gauss-Kronrod 7/15 panel; the error estimate is |K15 - G7|.
template <class F, class T = std::invoke_result_t<F, double>>
QuadPanel<T> gk15_panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  T fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[2 * i] = f(c - h * gk15::xgk[i]);
    fv[2 * i + 1] = f(c + h * gk15::xgk[i]);
  }
  fv[14] = f(c);
  T kron = gk15::wgk[7] * fv[14];
  T gauss = gk15::wg[3] * fv[14];
  for (int i = 0; i < 7; ++i) {
    kron += gk15::wgk[i] * (fv[2 * i] + fv[2 * i + 1]);
    if (i % 2 == 1) {  // Gauss nodes are the odd Kronrod abscissae
      gauss += gk15::wg[i / 2] * (fv[2 * i] + fv[2 * i + 1]);
    }
  }
  QuadPanel<T> p;
  p.a = a;
  p.b = b;
  p.value = h * kron;
  p.error = std::abs(h * (kron - gauss));
  return p;
}

// Adaptive integration of f over [a, b] to relative tolerance rel_tol (with
// an absolute floor for integrals near zero).  Throws NumericError with the
// achieved error estimate on non-convergence.
template <class F, class T = std::invoke_result_t<F, double>>
T integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                     double abs_floor = 1e-300, int max_panels = 2000) {
  if (!(b > a)) {
    if (a == b) return T{};
    throw SpecError("integrate_adaptive: bad interval");
  }
  std::vector<QuadPanel<T>> panels;
  panels.push_back(gk15_panel(f, a, b));
  for (;;) {
    T total = panels.front().value;
    double err = panels.front().error;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].error;
      if (panels[i].error > panels[worst].error) worst = i;
    }
    if (err <= std::max(abs_floor, rel_tol * std::abs(total))) return total;
    if (static_cast<int>(panels.size()) >= max_panels) {
      std::ostringstream os;
      os << "integrate_adaptive: no convergence after " << panels.size()
         << " panels, error estimate " << err;
      throw NumericError(os.str());
    }
    const QuadPanel<T> w = panels[worst];
    const double m = 0.5 * (w.a + w.b);
    panels[worst] = gk15_panel(f, w.a, m);
    panels.push_back(gk15_panel(f, m, w.b));
  }
}

// Upper truncation point for integrals against the gamma-ray Levy density
// shape * exp(-rate*g)/g: beyond the returned g the density is below
// 1e-16 * rate, so the exponential tail is negligible at double precision.
double gamma_ray_cutoff(double shape, double rate);

}  // namespace weaklevy
