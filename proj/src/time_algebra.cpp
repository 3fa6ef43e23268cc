#include "weaklevy/time_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace weaklevy {

namespace {

void require_time(const Vector& t) {
  require_finite(t, "time vector");
  for (Index i = 0; i < t.size(); ++i) {
    if (!(t[i] >= 0.0)) throw SpecError("time vector: components must be >= 0");
  }
}

}  // namespace

TimeOrdering ascending_spacings(const Vector& t, TieBreak tie) {
  require_time(t);
  const Index n = t.size();
  TimeOrdering out;
  out.order.resize(static_cast<std::size_t>(n));
  std::iota(out.order.begin(), out.order.end(), Index{0});
  std::stable_sort(out.order.begin(), out.order.end(), [&](Index a, Index b) {
    if (t[a] != t[b]) return t[a] < t[b];
    return tie == TieBreak::IndexAscending ? a < b : a > b;
  });
  out.spacings.resize(n);
  double prev = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double cur = t[out.order[static_cast<std::size_t>(k)]];
    out.spacings[k] = cur - prev;
    prev = cur;
  }
  return out;
}

Vector time_product_drift(const Vector& t, const Vector& mu) {
  require_time(t);
  if (mu.size() != t.size()) throw SpecError("time_product_drift: dimension mismatch");
  return t.cwiseProduct(mu);
}

Matrix time_product_cov(const Vector& t, const Matrix& sigma) {
  require_time(t);
  if (sigma.rows() != t.size() || sigma.cols() != t.size()) {
    throw SpecError("time_product_cov: dimension mismatch");
  }
  const Index n = t.size();
  Matrix out(n, n);
  for (Index k = 0; k < n; ++k) {
    for (Index l = 0; l < n; ++l) {
      out(k, l) = sigma(k, l) * std::min(t[k], t[l]);
    }
  }
  return out;
}

FiniteAtomicMeasure time_product_measure(const Vector& t,
                                         const FiniteAtomicMeasure& x,
                                         TieBreak tie) {
  if (x.dim != t.size()) throw SpecError("time_product_measure: dimension mismatch");
  const TimeOrdering ord = ascending_spacings(t, tie);
  const Index n = t.size();
  std::vector<MassAtom> atoms;
  for (Index k = 0; k < n; ++k) {
    const double dt = ord.spacings[k];
    if (dt == 0.0) continue;
    // pi_{(k)..(n)} keeps the coordinates holding the k-th smallest
    // component onwards and zeroes the rest.
    for (const MassAtom& a : x.atoms) {
      if (a.mass == 0.0) continue;
      Vector p = Vector::Zero(n);
      for (Index j = k; j < n; ++j) {
        const Index c = ord.order[static_cast<std::size_t>(j)];
        p[c] = a.point[c];
      }
      if ((p.array() == 0.0).all()) continue;
      atoms.push_back(MassAtom{std::move(p), a.mass * dt});
    }
  }
  return FiniteAtomicMeasure{n, std::move(atoms)}.canonical();
}

Vector compensation_vector(const Vector& t, const FiniteAtomicMeasure& x,
                           TieBreak tie) {
  if (x.dim != t.size()) throw SpecError("compensation_vector: dimension mismatch");
  const TimeOrdering ord = ascending_spacings(t, tie);
  const Index n = t.size();
  Vector c = Vector::Zero(n);
  // The k = 1 term vanishes identically: the full projection of a point
  // outside the closed unit ball never lands inside it.
  for (Index k = 1; k < n; ++k) {
    const double dt = ord.spacings[k];
    if (dt == 0.0) continue;
    for (const MassAtom& a : x.atoms) {
      if (a.mass == 0.0) continue;
      if (a.point.norm() <= 1.0) continue;  // closed ball counts as inside
      Vector p = Vector::Zero(n);
      for (Index j = k; j < n; ++j) {
        const Index cidx = ord.order[static_cast<std::size_t>(j)];
        p[cidx] = a.point[cidx];
      }
      if (p.norm() <= 1.0) c += (dt * a.mass) * p;
    }
  }
  return c;
}

}  // namespace weaklevy
