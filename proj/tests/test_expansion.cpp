#include <cmath>
#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "hankelwave/expansion.hpp"

using namespace hankelwave;
using Catch::Matchers::WithinAbs;

namespace {

// Random function that is constant on every dyadic cell of width 2^-J in [0, R).
FunctionSpec dyadic_step(std::mt19937& rng, double R, int J) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const int cells = int(std::ldexp(R, J));
  std::vector<double> values(cells);
  for (auto& v : values) v = u(rng);
  std::vector<double> breaks;
  for (int i = 0; i <= cells; ++i) breaks.push_back(std::ldexp(double(i), -J));
  return FunctionSpec::custom(
      "dyadic-step",
      [values, J](double r) {
        const long i = long(std::floor(std::ldexp(r, J)));
        return (i >= 0 && i < long(values.size())) ? values[std::size_t(i)] : 0.0;
      },
      breaks);
}

// Brute-force cell average of r over the level-J cell containing x.
double cell_average_of_r(double x, int J) {
  const double h = std::ldexp(1.0, -J);
  const double a = std::floor(x / h) * h;
  return a + h / 2;
}

}  // namespace

TEST_CASE("haar coefficients of a constant", "[expansion]") {
  const auto c = haar_coefficients(FunctionSpec::constant(1.0), 4.0, 2);
  REQUIRE(c.c0.size() == 4);
  for (double v : c.c0) CHECK_THAT(v, WithinAbs(1.0, 1e-14));
  REQUIRE(c.d.size() == 2);
  for (const auto& level : c.d)
    for (double v : level) CHECK_THAT(v, WithinAbs(0.0, 1e-14));
  CHECK(c.normalization == Normalization::unnormalized_atoms);
}

TEST_CASE("haar coefficients of a ramp", "[expansion]") {
  const auto c = haar_coefficients(FunctionSpec::ramp(1.0), 1.0, 1);
  CHECK_THAT(c.c0[0], WithinAbs(0.5, 1e-14));
  // int_0^1/2 r - int_1/2^1 r = -1/4; reconstruction: 1/2 - 1/4 = 1/4 on the left, 3/4 on the right
  CHECK_THAT(c.d[0][0], WithinAbs(-0.25, 1e-14));
  CHECK_THAT(reconstruct(c, 0.2), WithinAbs(0.25, 1e-14));
  CHECK_THAT(reconstruct(c, 0.7), WithinAbs(0.75, 1e-14));
}

TEST_CASE("haar reconstruction is the dyadic cell average", "[expansion]") {
  const auto c = haar_coefficients(FunctionSpec::ramp(1.0), 2.0, 3);
  CHECK_THAT(reconstruct(c, 0.3), WithinAbs(cell_average_of_r(0.3, 3), 1e-13));
  CHECK_THAT(reconstruct(c, 0.3), WithinAbs(0.3125, 1e-13));
  for (double x = 0.01; x < 2.0; x += 0.037) CHECK_THAT(reconstruct(c, x), WithinAbs(cell_average_of_r(x, 3), 1e-13));
}

TEST_CASE("haar round-trip pins the normalization", "[expansion][invariant]") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const double R = 3.0 + trial;
    const auto f = dyadic_step(rng, R, 4);
    const auto c = haar_coefficients(f, R, 4);
    for (double x = 1.0 / 64; x < R; x += 1.0 / 32) CHECK_THAT(reconstruct(c, x), WithinAbs(f(x), 1e-12));
  }
}

TEST_CASE("reconstruction vanishes outside [0, R]", "[expansion]") {
  const auto c = gram_coefficients(FunctionSpec::constant(2.0), SplineOrder{3}, 2.0, 1);
  CHECK(reconstruct(c, -0.1) == 0.0);
  CHECK(reconstruct(c, 2.1) == 0.0);
  CHECK_THAT(reconstruct(c, 1.0), WithinAbs(2.0, 1e-10));
}

TEST_CASE("gram projection with m = 1 equals the haar coefficients", "[expansion]") {
  const auto f = FunctionSpec::gaussian(1.3);
  const auto h = haar_coefficients(f, 5.0, 3);
  const auto g = gram_coefficients(f, SplineOrder{1}, 5.0, 3);
  const auto hv = h.flat(), gv = g.flat();
  REQUIRE(hv.size() == gv.size());
  for (std::size_t i = 0; i < hv.size(); ++i) CHECK_THAT(gv[i], WithinAbs(hv[i], 1e-10));
}

TEST_CASE("gram rank matches the dimension of the restricted space", "[expansion]") {
  for (int m = 1; m <= 4; ++m)
    for (int J = 0; J <= 3; ++J) {
      GramReport report;
      const double R = 3.0;
      gram_coefficients(FunctionSpec::gaussian(1.0), SplineOrder{m}, R, J, &report);
      CHECK(report.rank == std::size_t(std::ceil(std::ldexp(R, J))) + m - 1);
      CHECK(report.condition < kGramConditionLimit);
      CHECK(report.null_eigen_ratio < 1e-12);
    }
}

TEST_CASE("polynomial reproduction", "[expansion]") {
  for (int m = 1; m <= 4; ++m) {
    std::vector<double> coeffs(m);
    for (int i = 0; i < m; ++i) coeffs[i] = 0.3 * (i + 1) * (i % 2 ? -1 : 1);
    const auto f = FunctionSpec::polynomial(coeffs);
    const double R = 10.0;
    for (int J : {0, 2}) {
      const auto c = gram_coefficients(f, SplineOrder{m}, R, J);
      const Reconstruction rec(c);
      for (double r = m; r <= R - m; r += 0.173) CHECK_THAT(rec(r), WithinAbs(f(r), 1e-9));
    }
  }
}

TEST_CASE("smoother splines approximate the gaussian better", "[expansion]") {
  const auto f = FunctionSpec::gaussian(1.0);
  const double e1 = l2_error(f, haar_coefficients(f, 8.0, 3));
  const double e2 = l2_error(f, gram_coefficients(f, SplineOrder{2}, 8.0, 3));
  CHECK(e2 < e1);
}

TEST_CASE("convergence in the level", "[expansion][invariant]") {
  const auto f = FunctionSpec::gaussian(1.0);
  for (int m : {1, 2}) {
    double prev = INFINITY;
    for (int J = 1; J <= 5; ++J) {
      const auto c = m == 1 ? haar_coefficients(f, 8.0, J) : gram_coefficients(f, SplineOrder{m}, 8.0, J);
      const double e = l2_error(f, c);
      CHECK(e <= prev);
      prev = e;
    }
  }
}

TEST_CASE("gram projection is optimal", "[expansion][invariant]") {
  const auto f = FunctionSpec::gaussian(1.0);
  const auto c = gram_coefficients(f, SplineOrder{2}, 6.0, 2);
  const double best = l2_error(f, c);
  std::mt19937 rng(9);
  const std::size_t total = c.size();
  for (int trial = 0; trial < 10; ++trial) {
    auto perturbed = c;
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, total - 1)(rng);
    double* slot = nullptr;
    if (pick < perturbed.c0.size()) {
      slot = &perturbed.c0[pick];
    } else {
      pick -= perturbed.c0.size();
      for (auto& level : perturbed.d) {
        if (pick < level.size()) {
          slot = &level[pick];
          break;
        }
        pick -= level.size();
      }
    }
    REQUIRE(slot != nullptr);
    // every atom in the layout meets (0, R), so no single perturbation lies in the null space
    *slot += (trial % 2 ? 1e-3 : -1e-3);
    CHECK(l2_error(f, perturbed) > best);
  }
}

TEST_CASE("coefficients are linear in f", "[expansion][invariant]") {
  const auto f = FunctionSpec::gaussian(0.8);
  const auto g = FunctionSpec::ramp(0.25);
  const double alpha = 1.7, beta = -0.6;
  const auto h = combine(alpha, f, beta, g);
  for (int m : {1, 2, 3}) {
    const auto cf = m == 1 ? haar_coefficients(f, 4.0, 2) : gram_coefficients(f, SplineOrder{m}, 4.0, 2);
    const auto cg = m == 1 ? haar_coefficients(g, 4.0, 2) : gram_coefficients(g, SplineOrder{m}, 4.0, 2);
    const auto ch = m == 1 ? haar_coefficients(h, 4.0, 2) : gram_coefficients(h, SplineOrder{m}, 4.0, 2);
    const auto vf = cf.flat(), vg = cg.flat(), vh = ch.flat();
    for (std::size_t i = 0; i < vh.size(); ++i) CHECK_THAT(vh[i], WithinAbs(alpha * vf[i] + beta * vg[i], 1e-10));
  }
}

TEST_CASE("gram projection is idempotent", "[expansion][invariant]") {
  const auto f = FunctionSpec::gaussian(1.0);
  for (int m : {2, 3}) {
    const auto c = gram_coefficients(f, SplineOrder{m}, 8.0, 3);
    const auto again = gram_coefficients(Reconstruction(c).as_function(), SplineOrder{m}, 8.0, 3);
    const auto a = c.flat(), b = again.flat();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK_THAT(b[i], WithinAbs(a[i], 1e-9));
  }
}

TEST_CASE("non-finite input is rejected", "[expansion]") {
  const auto bad = FunctionSpec::custom("bad", [](double r) { return r > 1.0 ? std::nan("") : 1.0; });
  CHECK_THROWS_AS(haar_coefficients(bad, 2.0, 1), input_error);
  CHECK_THROWS_AS(gram_coefficients(bad, SplineOrder{2}, 2.0, 1), input_error);
}

TEST_CASE("domain validation", "[expansion]") {
  CHECK_THROWS_AS(haar_coefficients(FunctionSpec::constant(1.0), 0.0, 1), config_error);
  CHECK_THROWS_AS(haar_coefficients(FunctionSpec::constant(1.0), 1.0, -1), config_error);
}

TEST_CASE("sampled inputs", "[expansion]") {
  std::vector<double> r, v;
  for (int i = 0; i <= 40; ++i) {
    r.push_back(0.1 * i);
    v.push_back(std::exp(-r.back() * r.back()));
  }
  const auto lin = FunctionSpec::sampled(r, v, Interpolation::linear);
  const auto cub = FunctionSpec::sampled(r, v, Interpolation::cubic);
  CHECK_THAT(lin(0.15), WithinAbs(0.5 * (v[1] + v[2]), 1e-15));
  const double exact = std::exp(-0.0225);
  CHECK(std::abs(cub(0.15) - exact) < 0.2 * std::abs(lin(0.15) - exact));
  CHECK_THAT(cub(0.2), WithinAbs(v[2], 1e-15));
  CHECK(lin(4.5) == 0.0);
  CHECK(cub(-0.1) == 0.0);
  CHECK_THROWS_AS(FunctionSpec::sampled({0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}, Interpolation::linear), input_error);
  CHECK_THROWS_AS(FunctionSpec::sampled({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0}, Interpolation::cubic), input_error);
  const auto c = haar_coefficients(lin, 4.0, 2);
  CHECK_THAT(c.c0[0], WithinAbs(0.7468, 2e-3));
}
