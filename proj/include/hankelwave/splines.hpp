#pragma once

// Cardinal B-splines on integer knots and the semi-orthogonal spline wavelets
// built from them.
//
//   N_1 = indicator of [0, 1),  N_m = N_{m-1} * N_1      (support [0, m])
//   psi_m(x) = sum_{n=0}^{3m-2} q_n N_m(2x - n)          (support [0, 2m-1])
//   q_n = (-1)^n / 2^(m-1) * sum_{l=0}^{m} C(m,l) N_{2m}(n + 1 - l)
//
// Level-j, shift-k atoms are the unnormalized dilates psi_m(2^j r - k) and
// N_m(2^j r - k).

#include <cmath>
#include <string>
#include <vector>

#include "hankelwave/errors.hpp"
#include "hankelwave/piecewise_poly.hpp"

namespace hankelwave {

/// Spline order m (degree m - 1). m = 1 is the Haar system.
class SplineOrder {
 public:
  explicit SplineOrder(int m) : m_(m) {
    if (m < 1) throw config_error("spline order m must be >= 1, got " + std::to_string(m));
  }
  int value() const { return m_; }
  int degree() const { return m_ - 1; }
  double scaling_support() const { return m_; }
  double wavelet_support() const { return 2 * m_ - 1; }
  friend bool operator==(SplineOrder, SplineOrder) = default;

 private:
  int m_;
};

/// Dyadic level j >= 0 and integer shift k.
///
/// Shifts may be negative: on a truncated domain [0, R] the atoms whose support
/// straddles r = 0 are part of the retained set.
struct WaveletIndex {
  int j = 0;
  int k = 0;

  WaveletIndex() = default;
  WaveletIndex(int level, int shift) : j(level), k(shift) {
    if (level < 0) throw config_error("wavelet level j must be >= 0, got " + std::to_string(level));
  }
  double dilation() const { return std::ldexp(1.0, j); }
  friend bool operator==(const WaveletIndex&, const WaveletIndex&) = default;
};

enum class AtomKind { scaling, wavelet };

/// N_m(x) by the Cox-de Boor recurrence on the knots 0, 1, ..., m.
inline double bspline_eval(SplineOrder order, double x) {
  const int m = order.value();
  if (!(x >= 0.0) || x >= m) return 0.0;
  // vals[i] holds N_o(x - i) for the current order o.
  std::vector<double> vals(m, 0.0);
  for (int i = 0; i < m; ++i) vals[i] = (x >= i && x < i + 1) ? 1.0 : 0.0;
  for (int o = 2; o <= m; ++o) {
    for (int i = 0; i + o <= m; ++i) {
      const double next = i + 1 < m ? vals[i + 1] : 0.0;
      vals[i] = ((x - i) * vals[i] + (i + o - x) * next) / (o - 1);
    }
  }
  return vals[0];
}

/// N_m as m polynomial pieces on [i, i+1], built from the order recurrence
///   N_m(x) = (x N_{m-1}(x) + (m - x) N_{m-1}(x - 1)) / (m - 1).
inline PiecewisePoly bspline_piecewise(SplineOrder order) {
  std::vector<Poly> prev{{1.0}};
  for (int o = 2; o <= order.value(); ++o) {
    std::vector<Poly> cur(o);
    for (int i = 0; i < o; ++i) {
      Poly acc{0.0};
      if (i <= o - 2) acc = poly::add(acc, poly::multiply({double(i), 1.0}, prev[i]));
      if (i >= 1) acc = poly::add(acc, poly::multiply({double(o - i), -1.0}, prev[i - 1]));
      for (auto& c : acc) c /= (o - 1);
      acc.resize(o, 0.0);
      cur[i] = std::move(acc);
    }
    prev = std::move(cur);
  }
  PiecewisePoly pp;
  for (int i = 0; i <= order.value(); ++i) pp.breakpoints.push_back(i);
  pp.pieces = std::move(prev);
  return pp;
}

/// Two-scale wavelet coefficients (q_0, ..., q_{3m-2}).
inline std::vector<double> wavelet_coeffs(SplineOrder order) {
  const int m = order.value();
  const SplineOrder doubled{2 * m};
  std::vector<double> q(3 * m - 1);
  const double norm = std::ldexp(1.0, -(m - 1));
  for (int n = 0; n <= 3 * m - 2; ++n) {
    double s = 0.0;
    for (int l = 0; l <= m; ++l) s += poly::binomial(m, l) * bspline_eval(doubled, n + 1 - l);
    q[n] = (n % 2 == 0 ? 1.0 : -1.0) * norm * s;
  }
  return q;
}

/// The mother wavelet psi_m on [0, 2m-1] with pieces on half-integer cells.
inline PiecewisePoly mother_wavelet(SplineOrder order) {
  const auto base = bspline_piecewise(order);
  const auto q = wavelet_coeffs(order);
  PiecewisePoly psi;
  for (std::size_t n = 0; n < q.size(); ++n)
    psi = add(psi, scaled(affine(base, 2.0, double(n)), q[n]));
  return psi;
}

/// psi_m(2^j r - k).
inline PiecewisePoly wavelet_piecewise(SplineOrder order, WaveletIndex idx) {
  return affine(mother_wavelet(order), idx.dilation(), double(idx.k));
}

/// N_m(2^j r - k); the level-0 case N_m(r - k) spans the coarse space.
inline PiecewisePoly scaling_piecewise(SplineOrder order, WaveletIndex idx) {
  return affine(bspline_piecewise(order), idx.dilation(), double(idx.k));
}

inline PiecewisePoly scaling_piecewise(SplineOrder order, int k) {
  return scaling_piecewise(order, WaveletIndex{0, k});
}

inline PiecewisePoly atom_piecewise(SplineOrder order, AtomKind kind, WaveletIndex idx) {
  return kind == AtomKind::scaling ? scaling_piecewise(order, idx) : wavelet_piecewise(order, idx);
}

/// Bernstein coefficients a_l of N_m restricted to [alpha-1, alpha]:
///   N_m(alpha - 1 + t) = sum_l a_l C(m-1, l) (1-t)^(m-1-l) t^l,  t in [0, 1].
inline std::vector<double> bernstein_coeffs(SplineOrder order, int alpha) {
  const int m = order.value();
  if (alpha < 1 || alpha > m)
    throw config_error("bernstein_coeffs: alpha must lie in 1.." + std::to_string(m) + ", got " +
                       std::to_string(alpha));
  const auto piece = bspline_piecewise(order).pieces[alpha - 1];
  const int d = m - 1;
  std::vector<double> a(m, 0.0);
  for (int l = 0; l <= d; ++l)
    for (int i = 0; i <= l; ++i)
      a[l] += poly::binomial(l, i) / poly::binomial(d, i) * (i < int(piece.size()) ? piece[i] : 0.0);
  return a;
}

}  // namespace hankelwave
