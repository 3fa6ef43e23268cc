#include "weaklevy/special.hpp"

#include <cmath>
#include <limits>

namespace weaklevy {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_half_integer_grid(double rho, double& two_rho) {
  two_rho = std::round(2.0 * rho);
  return std::abs(2.0 * rho - two_rho) <= 1e-9;
}

// K_{1/2 + m}(r) for m >= 0 via the closed form and upward recurrence,
// which is stable for K.
double bessel_k_half_ladder(int m, double r) {
  const double k_half = std::sqrt(kPi / (2.0 * r)) * std::exp(-r);
  if (m == 0) return k_half;
  double km1 = k_half;                    // K_{1/2}
  double k = k_half * (1.0 + 1.0 / r);    // K_{3/2}
  for (int j = 1; j < m; ++j) {
    const double rho = j + 0.5;
    const double knext = km1 + (2.0 * rho / r) * k;
    km1 = k;
    k = knext;
  }
  return k;
}

}  // namespace

namespace detail {

// Ascending series (valid for all r, used for r < 2 where no cancellation
// beyond a couple of digits occurs):
//   K_0 = -(ln(r/2)+gamma) I_0 + sum_{k>=1} (r^2/4)^k H_k / (k!)^2
//   K_1 = 1/r + ln(r/2) I_1 - (r/4) sum_{k>=0} (H_k + H_{k+1} - 2 gamma)
//                                         (r^2/4)^k / (k! (k+1)!)
std::pair<double, double> bessel_k01_series(double r) {
  const double x2 = 0.25 * r * r;
  const double lg = std::log(0.5 * r);

  double i0 = 1.0, i0_term = 1.0;
  double s0 = 0.0;
  double i1_sum = 1.0, i1_term = 1.0;  // sum (r^2/4)^k/(k!(k+1)!)
  double s1 = -2.0 * kEulerGamma + 1.0;  // k = 0 term of the K_1 sum
  double hk = 0.0, hk1 = 1.0;
  double s1_term = 1.0;
  for (int k = 1; k < 200; ++k) {
    i0_term *= x2 / (static_cast<double>(k) * k);
    i0 += i0_term;
    hk += 1.0 / k;
    s0 += i0_term * hk;
    i1_term *= x2 / (static_cast<double>(k) * (k + 1));
    i1_sum += i1_term;
    hk1 += 1.0 / (k + 1);
    s1_term = i1_term;
    s1 += s1_term * (hk + hk1 - 2.0 * kEulerGamma);
    if (i0_term < kEps * i0 && i1_term < kEps * i1_sum) break;
  }
  const double i1 = 0.5 * r * i1_sum;
  const double k0 = -(lg + kEulerGamma) * i0 + s0;
  const double k1 = 1.0 / r + lg * i1 - 0.25 * r * s1;
  return {k0, k1};
}

// Steed continued fraction for the exponentially decaying pair, accurate to
// machine precision for r >= 2 (the large-argument regime).
std::pair<double, double> bessel_k01_cf(double r) {
  const double a1 = 0.25;  // 0.25 - mu^2 with mu = 0
  double b = 2.0 * (1.0 + r);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 60000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels) < std::abs(s) * kEps) {
      h = a1 * h;
      const double k0 = std::sqrt(kPi / (2.0 * r)) * std::exp(-r) / s;
      const double k1 = k0 * (r + 0.5 - h) / r;
      return {k0, k1};
    }
  }
  throw NumericError("bessel_k: continued fraction failed to converge");
}

}  // namespace detail

double bessel_k(double rho, double r) {
  if (!(r > 0.0)) throw SpecError("bessel_k: argument must be positive");
  rho = std::abs(rho);  // K_{-rho} = K_rho
  double two_rho;
  if (!is_half_integer_grid(rho, two_rho)) {
    throw SpecError("bessel_k: order must be a multiple of 1/2");
  }
  const long tr = static_cast<long>(two_rho);
  if (tr % 2 == 1) {
    return bessel_k_half_ladder(static_cast<int>((tr - 1) / 2), r);
  }
  const int n = static_cast<int>(tr / 2);
  auto [k0, k1] = (r < 2.0) ? detail::bessel_k01_series(r)
                            : detail::bessel_k01_cf(r);
  if (n == 0) return k0;
  if (n == 1) return k1;
  double km1 = k0, k = k1;
  for (int j = 1; j < n; ++j) {
    const double knext = km1 + (2.0 * j / r) * k;
    km1 = k;
    k = knext;
  }
  return k;
}

double bessel_k_scaled(double rho, double r) {
  if (!(r > 0.0)) throw SpecError("bessel_k_scaled: argument must be positive");
  rho = std::abs(rho);
  double two_rho;
  if (!is_half_integer_grid(rho, two_rho)) {
    throw SpecError("bessel_k_scaled: order must be a multiple of 1/2");
  }
  const long tr = static_cast<long>(two_rho);
  if (tr % 2 == 1) {
    // Ladder directly on S_rho = r^rho K_rho: S_{1/2} = sqrt(pi/2) e^{-r},
    // S_{3/2} = S_{1/2} (1 + r), S_{rho+1} = r^2 S_{rho-1} + 2 rho S_rho.
    const int m = static_cast<int>((tr - 1) / 2);
    const double s_half = std::sqrt(kPi / 2.0) * std::exp(-r);
    if (m == 0) return s_half;
    double sm1 = s_half;
    double s = s_half * (1.0 + r);
    for (int j = 1; j < m; ++j) {
      const double rho_j = j + 0.5;
      const double snext = r * r * sm1 + 2.0 * rho_j * s;
      sm1 = s;
      s = snext;
    }
    return s;
  }
  const int n = static_cast<int>(tr / 2);
  auto [k0, k1] = (r < 2.0) ? detail::bessel_k01_series(r)
                            : detail::bessel_k01_cf(r);
  if (n == 0) return k0;
  double sm1 = k0;      // r^0 K_0
  double s = r * k1;    // r^1 K_1
  for (int j = 1; j < n; ++j) {
    const double snext = r * r * sm1 + 2.0 * j * s;
    sm1 = s;
    s = snext;
  }
  return s;
}

namespace {

// Ascending series E1 = -gamma - ln x + sum (-1)^{k+1} x^k / (k k!), x <= 1.
double e1_series(double x) {
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 60; ++k) {
    term *= -x / k;
    const double del = -term / k;
    sum += del;
    if (std::abs(del) < kEps * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) + sum;
}

// Modified Lentz continued fraction for e^x E1(x) = 1/(x+1- 1/(x+3- ...)),
// accurate for x > 1.
double e1_cf_scaled(double x) {
  const double fpmin = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NumericError("exponential_integral_e1: continued fraction failed to converge");
}

}  // namespace

double exponential_integral_e1(double x) {
  if (!(x > 0.0)) throw SpecError("exponential_integral_e1: argument must be positive");
  if (x <= 1.0) return e1_series(x);
  return e1_cf_scaled(x) * std::exp(-x);
}

double exponential_integral_e1_scaled(double x) {
  if (!(x > 0.0)) throw SpecError("exponential_integral_e1_scaled: argument must be positive");
  if (x <= 1.0) return e1_series(x) * std::exp(x);
  return e1_cf_scaled(x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw SpecError("normal_quantile: p must lie in (0,1)");
  }
  // Acklam's rational approximation (~1e-9), then one Halley step.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

}  // namespace weaklevy
