#pragma once

// Special functions used by the monomial Hankel integral: Gamma, integer-order
// Bessel J, and the hypergeometric series 1F2 / 0F1.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "hankelwave/errors.hpp"

namespace hankelwave {

using quad = __float128;

template <class Real>
constexpr Real working_epsilon() {
  if constexpr (std::is_same_v<Real, quad>) {
    return quad(1.925929944387235853055977942584927319e-34L);
  } else {
    return std::numeric_limits<Real>::epsilon();
  }
}

template <class Real>
Real abs_value(Real x) {
  return x < Real(0) ? -x : x;
}

/// Gamma function. Poles at non-positive integers are rejected.
inline double gamma_fn(double x) {
  if (!std::isfinite(x)) throw config_error("gamma_fn: non-finite argument");
  if (x <= 0.0 && x == std::floor(x))
    throw config_error("gamma_fn: pole at non-positive integer " + std::to_string(x));
  return std::tgamma(x);
}

/// Outcome of a hypergeometric series summation.
template <class Real>
struct SeriesSum {
  Real value = 0;
  Real abs_sum = 0;  // sum of |terms|, drives the cancellation estimate
  int terms = 0;

  /// Absolute rounding-error estimate of `value`.
  Real error_estimate() const { return Real(4) * working_epsilon<Real>() * abs_sum; }
};

/// Generalized hypergeometric series pFq(a; b; z) summed in working precision
/// `Real` with the term-ratio recurrence
///   t_{k+1} = t_k * prod(a_i + k) / prod(b_i + k) * z / (k + 1).
template <class Real, std::size_t P, std::size_t Q>
SeriesSum<Real> hypergeometric_series(const std::array<double, P>& a, const std::array<double, Q>& b,
                                      double z, int max_terms = 20000) {
  for (double bi : b)
    if (bi <= 0.0 && bi == std::floor(bi))
      throw config_error("hypergeometric series: denominator parameter is a non-positive integer");
  const Real eps = working_epsilon<Real>();
  const Real zz = Real(z);
  SeriesSum<Real> s;
  Real term = 1;
  Real comp = 0;  // Kahan compensation
  for (int k = 0; k < max_terms; ++k) {
    const Real y = term - comp;
    const Real t = s.value + y;
    comp = (t - s.value) - y;
    s.value = t;
    s.abs_sum += abs_value(term);
    s.terms = k + 1;

    Real ratio = zz / Real(k + 1);
    for (double ai : a) ratio *= Real(ai) + Real(k);
    for (double bi : b) ratio /= Real(bi) + Real(k);
    term *= ratio;
    if (term == Real(0)) return s;
    const Real scale = std::max(abs_value(s.value), eps * s.abs_sum);
    if (abs_value(ratio) < Real(0.5) && abs_value(term) <= eps * scale) return s;
  }
  throw numerical_error("hypergeometric series did not converge in " + std::to_string(max_terms) +
                        " terms");
}

/// Parameters of 1F2(a1; b1, b2; z).
struct Hyp1F2Params {
  double a1 = 0;
  double b1 = 1;
  double b2 = 1;
  double z = 0;
};

/// Relative error budget past which hyp1f2 reports precision loss.
inline constexpr double kHypRelativeBudget = 1e-10;
/// The series is O(1)-scaled at z = 0; absolute errors below this are never reported.
inline constexpr double kHypAbsoluteFloor = 1e-14;

namespace detail {

struct ExtendedValue {
  long double value;
  long double error;
};

/// 1F2 in extended working precision. Small |z| uses long double, larger |z|
/// switches to binary128 because the alternating terms grow like exp(2 sqrt|z|).
inline ExtendedValue hyp1f2_extended(const Hyp1F2Params& p) {
  const std::array<double, 1> a{p.a1};
  const std::array<double, 2> b{p.b1, p.b2};
  ExtendedValue out{};
  if (std::abs(p.z) <= 16.0) {
    const auto s = hypergeometric_series<long double>(a, b, p.z);
    out = {s.value, s.error_estimate()};
  } else {
    const auto s = hypergeometric_series<quad>(a, b, p.z);
    out = {static_cast<long double>(s.value), static_cast<long double>(s.error_estimate())};
  }
  if (out.error > kHypRelativeBudget * std::abs(out.value) && out.error > kHypAbsoluteFloor)
    throw precision_loss("hyp1f2: cancellation at z = " + std::to_string(p.z) +
                         " exceeds the error budget");
  return out;
}

}  // namespace detail

/// 1F2(a1; b1, b2; z) = sum_k (a1)_k / ((b1)_k (b2)_k) z^k / k!.
///
/// Throws precision_loss when the running cancellation estimate exceeds the
/// error budget; callers then fall back to quadrature.
inline double hyp1f2(const Hyp1F2Params& p) { return double(detail::hyp1f2_extended(p).value); }

/// 0F1(; b; z), summed by the same engine as hyp1f2.
inline double hyp0f1(double b, double z) {
  const std::array<double, 0> a{};
  const std::array<double, 1> bb{b};
  if (std::abs(z) <= 16.0) return double(hypergeometric_series<long double>(a, bb, z).value);
  return double(hypergeometric_series<quad>(a, bb, z).value);
}

/// First `n` terms of the 1F2 series produced by the ratio recurrence.
inline std::vector<double> hyp1f2_terms(const Hyp1F2Params& p, int n) {
  std::vector<double> terms;
  long double t = 1;
  for (int k = 0; k < n; ++k) {
    terms.push_back(double(t));
    t *= (p.a1 + k) / ((p.b1 + k) * (p.b2 + k)) * p.z / (k + 1);
  }
  return terms;
}

namespace detail {

inline long double bessel_j_series(int nu, long double x) {
  const long double half = x / 2;
  long double term = 1;
  for (int i = 1; i <= nu; ++i) term *= half / i;
  long double sum = 0;
  const long double h2 = half * half;
  for (int k = 0; k < 500; ++k) {
    sum += term;
    term *= -h2 / ((k + 1.0L) * (k + 1.0L + nu));
    if (k > half && std::abs(term) <= 1e-21L * std::abs(sum)) break;
  }
  return sum;
}

/// Miller's downward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
inline long double bessel_j_miller(int nu, long double x) {
  const double top = std::max<double>(x, nu);
  int start = int(std::ceil(top + 40.0 + 25.0 * std::cbrt(top)));
  start += start % 2;
  long double next = 0;       // J_{n+1}
  long double cur = 1e-300L;  // J_n
  long double norm = 0;
  long double wanted = 0;
  for (int n = start; n > 0; --n) {
    const long double prev = (2.0L * n / x) * cur - next;  // J_{n-1}
    next = cur;
    cur = prev;
    if (n - 1 == nu) wanted = cur;
    if (n - 1 > 0 && (n - 1) % 2 == 0) norm += 2 * cur;
    if (std::abs(cur) > 1e2000L) {
      cur *= 1e-2000L;
      next *= 1e-2000L;
      norm *= 1e-2000L;
      wanted *= 1e-2000L;
    }
  }
  norm += cur;  // J_0
  if (nu == 0) wanted = cur;
  return wanted / norm;
}

inline constexpr double kBesselSeriesLimit = 12.0;

}  // namespace detail

/// Bessel function of the first kind J_nu(x), integer order.
///
/// Ascending series for |x| <= 12, Miller's downward recurrence beyond.
inline double bessel_j(int nu, double x) {
  if (nu < 0) return (nu % 2 == 0 ? 1.0 : -1.0) * bessel_j(-nu, x);
  if (x < 0) return (nu % 2 == 0 ? 1.0 : -1.0) * bessel_j(nu, -x);
  if (x == 0) return nu == 0 ? 1.0 : 0.0;
  if (x <= detail::kBesselSeriesLimit) return double(detail::bessel_j_series(nu, x));
  return double(detail::bessel_j_miller(nu, x));
}

}  // namespace hankelwave
