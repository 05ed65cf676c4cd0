#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "hankelwave/errors.hpp"

namespace hankelwave {

/// Power-basis polynomial, ascending coefficients.
using Poly = std::vector<double>;

namespace poly {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

template <class Real = double>
Real horner(std::span<const double> c, Real t) {
  Real acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + Real(*it);
  return acc;
}

/// Coefficients of q(u) = p(u + delta).
template <class Real = double>
std::vector<Real> taylor_shift(std::span<const double> p, Real delta) {
  const auto n = p.size();
  std::vector<Real> q(n, Real(0));
  for (std::size_t i = 0; i < n; ++i) {
    // p_i (u + delta)^i = sum_l C(i,l) delta^(i-l) u^l
    Real dpow = 1;
    for (std::size_t l = i + 1; l-- > 0;) {
      q[l] += Real(p[i]) * Real(binomial(int(i), int(l))) * dpow;
      dpow *= delta;
    }
  }
  return q;
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

inline Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace poly

/// Compactly supported piecewise polynomial.
///
/// Piece `i` lives on [breakpoints[i], breakpoints[i+1]) and is stored in the
/// power basis about its left endpoint. Evaluation is right-continuous and the
/// function is zero outside [front, back).
struct PiecewisePoly {
  std::vector<double> breakpoints;
  std::vector<Poly> pieces;

  bool empty() const { return pieces.empty(); }
  double lower() const { return breakpoints.empty() ? 0.0 : breakpoints.front(); }
  double upper() const { return breakpoints.empty() ? 0.0 : breakpoints.back(); }

  int degree() const {
    std::size_t d = 0;
    for (const auto& p : pieces) d = std::max(d, p.size());
    return d == 0 ? 0 : int(d) - 1;
  }

  double operator()(double x) const {
    if (pieces.empty() || !(x >= breakpoints.front()) || x >= breakpoints.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    const auto i = std::size_t(it - breakpoints.begin()) - 1;
    return poly::horner<double>(pieces[i], x - breakpoints[i]);
  }

  /// Derivative of order `order` of piece `i`, evaluated at local coordinate `t`.
  double piece_derivative(std::size_t i, int order, double t) const {
    Poly d = pieces[i];
    for (int o = 0; o < order; ++o) {
      if (d.size() <= 1) return 0.0;
      Poly nd(d.size() - 1);
      for (std::size_t k = 1; k < d.size(); ++k) nd[k - 1] = d[k] * double(k);
      d = std::move(nd);
    }
    return poly::horner<double>(d, t);
  }

  void validate() const {
    if (breakpoints.size() != pieces.size() + 1 && !(breakpoints.empty() && pieces.empty()))
      throw config_error("PiecewisePoly: piece count must equal breakpoint count - 1");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > breakpoints[i - 1]))
        throw config_error("PiecewisePoly: breakpoints must be strictly increasing");
  }
};

/// g(r) = f(scale * r - shift), scale > 0.
inline PiecewisePoly affine(const PiecewisePoly& f, double scale, double shift) {
  PiecewisePoly g;
  g.breakpoints.reserve(f.breakpoints.size());
  for (double b : f.breakpoints) g.breakpoints.push_back((b + shift) / scale);
  g.pieces = f.pieces;
  for (auto& p : g.pieces) {
    double s = 1.0;
    for (auto& c : p) {
      c *= s;
      s *= scale;
    }
  }
  return g;
}

inline PiecewisePoly scaled(PiecewisePoly f, double factor) {
  for (auto& p : f.pieces)
    for (auto& c : p) c *= factor;
  return f;
}

/// Re-expresses `f` on a refined breakpoint set containing all of f's breakpoints.
/// Intervals outside f's support get the zero polynomial.
inline std::vector<Poly> refine(const PiecewisePoly& f, std::span<const double> grid) {
  std::vector<Poly> out;
  out.reserve(grid.size() ? grid.size() - 1 : 0);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double left = grid[i];
    const double mid = 0.5 * (grid[i] + grid[i + 1]);
    if (f.empty() || mid < f.lower() || mid > f.upper()) {
      out.push_back({0.0});
      continue;
    }
    const auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), mid);
    const auto piece = std::size_t(it - f.breakpoints.begin()) - 1;
    out.push_back(poly::taylor_shift<double>(f.pieces[piece], left - f.breakpoints[piece]));
  }
  return out;
}

inline std::vector<double> merge_breakpoints(std::span<const double> a, std::span<const double> b) {
  std::vector<double> grid;
  grid.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(grid));
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

inline PiecewisePoly add(const PiecewisePoly& a, const PiecewisePoly& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  PiecewisePoly r;
  r.breakpoints = merge_breakpoints(a.breakpoints, b.breakpoints);
  auto pa = refine(a, r.breakpoints);
  auto pb = refine(b, r.breakpoints);
  r.pieces.resize(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) r.pieces[i] = poly::add(pa[i], pb[i]);
  return r;
}

/// Restriction of f to [lo, hi]; zero pieces are kept so the result stays contiguous.
inline PiecewisePoly restrict_to(const PiecewisePoly& f, double lo, double hi) {
  PiecewisePoly r;
  if (f.empty()) return r;
  lo = std::max(lo, f.lower());
  hi = std::min(hi, f.upper());
  if (!(hi > lo)) return r;
  std::vector<double> grid{lo};
  for (double b : f.breakpoints)
    if (b > lo && b < hi) grid.push_back(b);
  grid.push_back(hi);
  r.pieces = refine(f, grid);
  r.breakpoints = std::move(grid);
  return r;
}

/// Exact integral of r^power * f(r) over the support.
inline double moment(const PiecewisePoly& f, int power) {
  long double total = 0;
  for (std::size_t i = 0; i < f.pieces.size(); ++i) {
    const double a = f.breakpoints[i];
    const double b = f.breakpoints[i + 1];
    // Expand about zero and integrate monomials exactly.
    const auto q = poly::taylor_shift<long double>(f.pieces[i], -(long double)a);
    for (std::size_t g = 0; g < q.size(); ++g) {
      const int e = int(g) + power + 1;
      total += q[g] * (std::pow((long double)b, e) - std::pow((long double)a, e)) / e;
    }
  }
  return double(total);
}

}  // namespace hankelwave
