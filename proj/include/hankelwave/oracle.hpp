#pragma once

// Reference Hankel transforms by brute-force panel quadrature.
//
// Deliberately shares nothing with the series path: Bessel values come from
// the standard library's std::cyl_bessel_j, and the only ingredient in common
// is the Gauss-Legendre node table.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hankelwave/errors.hpp"
#include "hankelwave/function_spec.hpp"
#include "hankelwave/quadrature.hpp"

namespace hankelwave {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  long max_panels = 1'000'000;
  int points_per_panel = 16;

  void validate() const {
    if (!(abs_tol > 0.0)) throw config_error("quadrature abs_tol must be > 0");
    if (max_panels < 1) throw config_error("quadrature max_panels must be >= 1");
    if (points_per_panel < 1 || points_per_panel > GaussLegendre::kMaxPoints)
      throw config_error("quadrature points_per_panel must lie in 1..128");
  }
};

/// int_0^R f(r) J_nu(p r) r dr.
///
/// Panels are no wider than min(pi / max(p, 1), R / 8) and never straddle a
/// breakpoint of f; the panel count is doubled until two successive estimates
/// differ by less than abs_tol.
inline double quadrature_hankel(const FunctionSpec& f, int nu, double R, double p, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (nu < 0) throw config_error("transform order nu must be >= 0");
  if (!(R > 0.0)) throw config_error("truncation radius R must be > 0");
  if (!(p >= 0.0) || !std::isfinite(p)) throw config_error("frequency p must be >= 0");
  const auto& rule = GaussLegendre::get(cfg.points_per_panel);
  const double max_width = std::min(std::numbers::pi / std::max(p, 1.0), R / 8);

  std::vector<double> cuts{0.0};
  for (double x : f.breakpoints_in(0.0, R)) cuts.push_back(x);
  cuts.push_back(R);
  std::vector<long> base(cuts.size() - 1);
  long base_total = 0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    base[s] = std::max<long>(1, long(std::ceil((cuts[s + 1] - cuts[s]) / max_width)));
    base_total += base[s];
  }

  auto integrand = [&](double r) {
    const double v = f(r);
    if (!std::isfinite(v)) throw input_error("function '" + f.name() + "' is not finite at r = " + std::to_string(r));
    return v * std::cyl_bessel_j(double(nu), p * r) * r;
  };
  auto estimate = [&](long refine) {
    long double total = 0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const long panels = base[s] * refine;
      const double h = (cuts[s + 1] - cuts[s]) / double(panels);
      for (long i = 0; i < panels; ++i) {
        const double a = cuts[s] + h * double(i);
        const double b = i + 1 == panels ? cuts[s + 1] : a + h;
        total += rule.integrate(integrand, a, b);
      }
    }
    return double(total);
  };

  long refine = 1;
  double prev = estimate(refine);
  while (true) {
    refine *= 2;
    if (base_total * refine > cfg.max_panels)
      throw numerical_error("quadrature_hankel did not reach abs_tol within max_panels");
    const double cur = estimate(refine);
    if (std::abs(cur - prev) < cfg.abs_tol) return cur;
    prev = cur;
  }
}

/// int_0^inf exp(-(r/a)^2) J_0(p r) r dr = (a^2 / 2) exp(-p^2 a^2 / 4).
inline double gaussian_exact(double a, double p) {
  if (!(a > 0.0)) throw config_error("gaussian width a must be > 0");
  return 0.5 * a * a * std::exp(-0.25 * p * p * a * a);
}

}  // namespace hankelwave
