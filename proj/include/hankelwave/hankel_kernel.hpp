#pragma once

// Closed-form Hankel transforms of monomials and spline atoms.
//
// The building block is
//
//   int_0^zeta r^(g+1) J_nu(p r) dr
//     = p^nu zeta^(g+2+nu) / (2^nu (g+2+nu) nu!)
//       * 1F2((g+2+nu)/2; (g+4+nu)/2, nu+1; -p^2 zeta^2 / 4),
//
// and an atom's transform is the sum of these over its polynomial pieces.
// Once p^2 zeta^2 / 4 exceeds the switch point the series is abandoned for
// panel quadrature with panels no wider than pi / p.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "hankelwave/errors.hpp"
#include "hankelwave/piecewise_poly.hpp"
#include "hankelwave/quadrature.hpp"
#include "hankelwave/specfun.hpp"
#include "hankelwave/splines.hpp"

namespace hankelwave {

/// Largest |z| = p^2 zeta^2 / 4 served by the 1F2 series (p zeta <= 40).
inline constexpr double kDefaultZSwitch = 400.0;

struct KernelConfig {
  double z_switch = kDefaultZSwitch;
};

struct MonomialIntegralQuery {
  int gamma = 0;
  int nu = 0;
  double zeta = 1.0;
  double p = 0.0;

  void validate() const {
    if (gamma < 0) throw config_error("monomial power gamma must be >= 0");
    if (nu < 0) throw config_error("transform order nu must be >= 0");
    if (!(zeta > 0.0) || !std::isfinite(zeta)) throw config_error("upper limit zeta must be > 0");
    if (!(p >= 0.0) || !std::isfinite(p)) throw config_error("frequency p must be >= 0");
  }
};

struct BasisTransform {
  SplineOrder order{1};
  int nu = 0;
  AtomKind kind = AtomKind::wavelet;
  WaveletIndex index{};
};

namespace detail {

inline bool in_series_range(double p, double zeta, const KernelConfig& cfg) {
  const double half = 0.5 * p * zeta;
  return half * half <= cfg.z_switch;
}

inline long double factorial(int n) {
  long double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// int_0^zeta r^(g+1) J_nu(p r) dr through 1F2, extended precision.
inline long double monomial_closed(int gamma, int nu, long double zeta, long double p) {
  if (zeta == 0) return 0;
  const int e = gamma + 2 + nu;
  const long double pref = std::pow(p, nu) * std::pow(zeta, e) /
                           (std::ldexp(1.0L, nu) * e * factorial(nu));
  if (pref == 0) return 0;
  const Hyp1F2Params params{0.5 * e, 0.5 * (e + 2), double(nu + 1), double(-p * p * zeta * zeta / 4)};
  return pref * hyp1f2_extended(params).value;
}

/// int_a^b g(r) J_nu(p r) r dr with 16-point Gauss-Legendre panels no wider than pi / p.
template <class F>
double panel_hankel(F&& g, int nu, double a, double b, double p) {
  if (!(b > a)) return 0.0;
  const auto& rule = GaussLegendre::get(16);
  const double width = p > 0 ? std::numbers::pi / p : b - a;
  const auto panels = std::max<long>(1, long(std::ceil((b - a) / width)));
  const double h = (b - a) / double(panels);
  long double total = 0;
  for (long i = 0; i < panels; ++i) {
    const double lo = a + h * double(i);
    const double hi = i + 1 == panels ? b : lo + h;
    total += rule.integrate([&](double r) { return g(r) * bessel_j(nu, p * r) * r; }, lo, hi);
  }
  return double(total);
}

}  // namespace detail

/// int_0^zeta r^gamma J_nu(p r) r dr.
inline double monomial_hankel(const MonomialIntegralQuery& q, const KernelConfig& cfg = {}) {
  q.validate();
  if (q.p == 0.0) return q.nu == 0 ? std::pow(q.zeta, q.gamma + 2) / (q.gamma + 2) : 0.0;
  if (detail::in_series_range(q.p, q.zeta, cfg)) {
    try {
      return double(detail::monomial_closed(q.gamma, q.nu, q.zeta, q.p));
    } catch (const precision_loss&) {
      // fall through to quadrature
    }
  }
  return detail::panel_hankel([&](double r) { return std::pow(r, q.gamma); }, q.nu, 0.0, q.zeta, q.p);
}

/// int f(r) J_nu(p r) r dr over supp(f) intersected with [max(lo, 0), hi].
inline double piecewise_hankel(const PiecewisePoly& f, int nu, double p, const KernelConfig& cfg = {},
                               double lo = 0.0, double hi = std::numeric_limits<double>::infinity()) {
  if (nu < 0) throw config_error("transform order nu must be >= 0");
  if (!(p >= 0.0) || !std::isfinite(p)) throw config_error("frequency p must be >= 0");
  const auto clipped = restrict_to(f, std::max(lo, 0.0), hi);
  long double total = 0;
  for (std::size_t i = 0; i < clipped.pieces.size(); ++i) {
    const auto& piece = clipped.pieces[i];
    const double a = clipped.breakpoints[i];
    const double b = clipped.breakpoints[i + 1];
    bool done = false;
    if (p == 0.0 || detail::in_series_range(p, b, cfg)) {
      try {
        const auto mono = poly::taylor_shift<long double>(piece, -(long double)a);
        long double part = 0;
        for (std::size_t g = 0; g < mono.size(); ++g) {
          if (mono[g] == 0) continue;
          part += mono[g] * (detail::monomial_closed(int(g), nu, b, p) -
                             detail::monomial_closed(int(g), nu, a, p));
        }
        total += part;
        done = true;
      } catch (const precision_loss&) {
      }
    }
    if (!done)
      total += detail::panel_hankel([&](double r) { return poly::horner<double>(piece, r - a); }, nu, a, b, p);
  }
  return double(total);
}

/// Hankel transform of a scaling or wavelet atom; optionally clipped to [lo, hi].
inline double atom_hankel(const BasisTransform& bt, double p, const KernelConfig& cfg = {}, double lo = 0.0,
                          double hi = std::numeric_limits<double>::infinity()) {
  return piecewise_hankel(atom_piecewise(bt.order, bt.kind, bt.index), bt.nu, p, cfg, lo, hi);
}

/// Wavelet transform as the literal quintuple sum over (alpha, n, l, beta, gamma)
/// of binomially weighted 1F2 differences at consecutive breakpoints.
///
/// Kept as an independent second route to atom_hankel; it never falls back to
/// quadrature and refuses arguments outside the series range.
inline double eq4_direct(SplineOrder order, int nu, WaveletIndex idx, double p, const KernelConfig& cfg = {}) {
  const int m = order.value();
  const int j = idx.j;
  const int k = idx.k;
  if (nu < 0) throw config_error("transform order nu must be >= 0");
  if (k < 0) throw config_error("eq4_direct requires a non-negative shift k");
  if (!(p >= 0.0)) throw config_error("frequency p must be >= 0");
  const double support_end = std::ldexp(2.0 * m - 1 + k, -j);
  if (!detail::in_series_range(p, support_end, cfg))
    throw out_of_range_error("eq4_direct: p * zeta = " + std::to_string(p * support_end) +
                             " is outside the 1F2 range");

  const auto q = wavelet_coeffs(order);
  std::vector<std::vector<double>> bern(m);
  for (int alpha = 1; alpha <= m; ++alpha) bern[alpha - 1] = bernstein_coeffs(order, alpha);

  const long double pl = p;
  const long double scale4 = std::ldexp(1.0L, 2 * (j + 2));  // 2^(2(j+2))
  const long double pref_base = std::pow(pl, nu) / (std::ldexp(1.0L, (j + 2) * nu + 2 * (j + 1)) *
                                                     detail::factorial(nu));

  auto bracket = [&](int gamma, long double upper) -> long double {
    if (upper == 0) return 0;
    const int e = gamma + 2 + nu;
    const Hyp1F2Params params{0.5 * e, 0.5 * (e + 2), double(nu + 1), double(-pl * pl * upper * upper / scale4)};
    return std::pow(upper, e) * detail::hyp1f2_extended(params).value;
  };

  long double total = 0;
  for (int alpha = 1; alpha <= m; ++alpha) {
    for (int n = 0; n <= 3 * m - 2; ++n) {
      const long double c = 1 - 2 * k - n - alpha;
      const long double upper = alpha + 2 * k + n;
      for (int l = 0; l <= m - 1; ++l) {
        for (int beta = 0; beta <= m - l - 1; ++beta) {
          for (int gamma = 0; gamma <= beta + l; ++gamma) {
            const long double weight = (beta % 2 == 0 ? 1.0L : -1.0L) * poly::binomial(m - 1, l) *
                                       poly::binomial(m - l - 1, beta) * poly::binomial(beta + l, gamma) *
                                       q[n] * bern[alpha - 1][l] * std::pow(c, beta + l - gamma);
            if (weight == 0) continue;
            const long double pref = pref_base / (gamma + 2 + nu);
            total += weight * pref * (bracket(gamma, upper) - bracket(gamma, upper - 1));
          }
        }
      }
    }
  }
  return double(total);
}

namespace detail {

/// Small-p expansion int atom(r) J_0(p r) r dr ~ M1 - p^2/4 M3 + p^4/64 M5,
/// with M_q the exact moments of a piecewise-constant atom.
template <class Moment>
double small_p_series(Moment&& moment_of, double p) {
  const double p2 = p * p;
  return moment_of(1) - p2 / 4 * moment_of(3) + p2 * p2 / 64 * moment_of(5);
}

inline constexpr double kSmallArgument = 1e-3;

}  // namespace detail

/// Hankel transform (nu = 0) of the Haar atom psi_1(2^j r - k), in terms of J_1.
inline double haar_closed_form(WaveletIndex idx, double p) {
  if (idx.k < 0) throw config_error("haar_closed_form requires k >= 0");
  if (!(p >= 0.0)) throw config_error("frequency p must be >= 0");
  const double h = std::ldexp(1.0, -idx.j);
  const double k = idx.k;
  const double a = h * k, c = h * (k + 0.5), b = h * (k + 1);
  if (p * b < detail::kSmallArgument) {
    return detail::small_p_series(
        [&](int q) {
          const int e = q + 1;
          return (2 * std::pow(c, e) - std::pow(a, e) - std::pow(b, e)) / e;
        },
        p);
  }
  return h / p *
         (2 * (k + 0.5) * bessel_j(1, h * p * (k + 0.5)) - (k + 1) * bessel_j(1, h * p * (k + 1)) -
          k * bessel_j(1, h * p * k));
}

/// int_k^{k+1} r J_0(p r) dr for the Haar scaling atom.
inline double haar_scaling_closed_form(int k, double p) {
  if (k < 0) throw config_error("haar_scaling_closed_form requires k >= 0");
  if (!(p >= 0.0)) throw config_error("frequency p must be >= 0");
  const double a = k, b = k + 1.0;
  if (p * b < detail::kSmallArgument) {
    return detail::small_p_series(
        [&](int q) {
          const int e = q + 1;
          return (std::pow(b, e) - std::pow(a, e)) / e;
        },
        p);
  }
  return ((k + 1) * bessel_j(1, p * (k + 1)) - k * bessel_j(1, p * k)) / p;
}

}  // namespace hankelwave
