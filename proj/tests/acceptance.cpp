// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hankelwave/hankelwave.hpp"

using namespace hankelwave;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return out;
}

std::vector<double> uniform(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

Verdict haar_equivalence() {
  double worst = 0;
  for (int j = 0; j <= 4; ++j)
    for (int k = 0; k <= 8; ++k)
      for (double p : log_space(0.01, 50.0, 200)) {
        const double a = atom_hankel({SplineOrder{1}, 0, AtomKind::wavelet, {j, k}}, p);
        worst = std::max(worst, std::abs(a - haar_closed_form({j, k}, p)));
      }
  return {worst <= 1e-10, "max |atom_hankel - haar_closed_form| = " + sci(worst)};
}

Verdict two_path() {
  const KernelConfig cfg{};
  const double pz_max = 2 * std::sqrt(cfg.z_switch);
  double worst = 0;
  int count = 0;
  for (int m = 1; m <= 3; ++m)
    for (int nu = 0; nu <= 2; ++nu)
      for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 6; ++k) {
          const double zeta = std::ldexp(2.0 * m - 1 + k, -j);
          std::vector<double> grid{0.0};
          for (double t : log_space(1e-3, 1.0, 12)) grid.push_back(t * pz_max / zeta);
          for (double p : grid) {
            const double fast = atom_hankel({SplineOrder{m}, nu, AtomKind::wavelet, {j, k}}, p, cfg);
            const double direct = eq4_direct(SplineOrder{m}, nu, {j, k}, p, cfg);
            worst = std::max(worst, std::abs(fast - direct) / std::max(1.0, std::abs(fast)));
            ++count;
          }
        }
  return {worst <= 1e-9, std::to_string(count) + " cases, max |diff| / max(1, |ref|) = " + sci(worst)};
}

Verdict monomial_certification() {
  double worst = 0;
  for (int gamma = 0; gamma <= 6; ++gamma) {
    std::vector<double> coeffs(gamma + 1, 0.0);
    coeffs[gamma] = 1.0;
    const auto f = FunctionSpec::polynomial(coeffs);
    for (int nu = 0; nu <= 3; ++nu)
      for (double zeta : {0.5, 1.0, 3.0})
        for (double p : {0.0, 0.5, 2.0, 10.0, 40.0}) {
          const double closed = monomial_hankel({gamma, nu, zeta, p});
          worst = std::max(worst, std::abs(closed - quadrature_hankel(f, nu, zeta, p)));
        }
  }
  return {worst <= 1e-8, "max |monomial_hankel - quadrature| = " + sci(worst)};
}

TransformRequest gaussian_request(int J) {
  TransformRequest req;
  req.f = FunctionSpec::gaussian(1.0);
  req.nu = 0;
  req.m = SplineOrder{1};
  req.R = 8.0;
  req.J = J;
  req.p_grid = uniform(0.0, 20.0, 201);
  return req;
}

double max_exact_error(const TransformResult& res) {
  double worst = 0;
  for (std::size_t i = 0; i < res.p_grid.size(); ++i)
    worst = std::max(worst, std::abs(res.values[i] - gaussian_exact(1.0, res.p_grid[i])));
  return worst;
}

Verdict gaussian_experiment() {
  const auto j3 = transform_with_oracle(gaussian_request(3));
  const auto j5 = transform(gaussian_request(5));
  const double e3 = max_exact_error(j3), e5 = max_exact_error(j5);
  return {e3 <= 2e-2 && e5 < e3, "J=3 max error " + sci(e3) + " (oracle " + sci(j3.diagnostics.max_oracle_error) +
                                     "), J=5 max error " + sci(e5)};
}

Verdict spline_invariants() {
  double unity = 0, outside = 0, moments = 0, bern = 0;
  for (int m = 1; m <= 5; ++m) {
    const SplineOrder order{m};
    for (double x = m - 1; x <= m + 10; x += 0.01) {
      double s = 0;
      for (int k = -m; k <= int(std::ceil(x)); ++k) s += bspline_eval(order, x - k);
      unity = std::max(unity, std::abs(s - 1));
    }
    std::mt19937 rng(m);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    const auto w = wavelet_piecewise(order, {1, 2});
    for (int i = 0; i < 1000; ++i) {
      const double x = u(rng);
      if (x < 0 || x > m) outside = std::max(outside, std::abs(bspline_eval(order, x)));
      if (x < w.lower() || x > w.upper()) outside = std::max(outside, std::abs(w(x)));
    }
    for (int alpha = 1; alpha <= m; ++alpha) {
      const auto a = bernstein_coeffs(order, alpha);
      for (double t = 0; t < 1; t += 1.0 / 128) {
        double v = 0;
        for (int l = 0; l < m; ++l) v += a[l] * poly::binomial(m - 1, l) * std::pow(1 - t, m - 1 - l) * std::pow(t, l);
        bern = std::max(bern, std::abs(v - bspline_eval(order, alpha - 1 + t)));
      }
    }
  }
  for (int m = 1; m <= 4; ++m) {
    const auto psi = mother_wavelet(SplineOrder{m});
    for (int l = 0; l < m; ++l) moments = std::max(moments, std::abs(moment(psi, l)));
  }
  const bool pass = unity <= 1e-12 && outside == 0.0 && moments <= 1e-10 && bern <= 1e-12;
  return {pass, "unity " + sci(unity) + ", outside-support " + sci(outside) + ", moments " + sci(moments) +
                    ", bernstein " + sci(bern)};
}

Verdict round_trip() {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const int J = 4;
  const double R = 6.0;
  std::vector<double> values(std::size_t(std::ldexp(R, J)));
  for (auto& v : values) v = u(rng);
  std::vector<double> breaks;
  for (std::size_t i = 0; i <= values.size(); ++i) breaks.push_back(std::ldexp(double(i), -J));
  const auto f = FunctionSpec::custom(
      "dyadic-step",
      [&values](double r) {
        const long i = long(std::floor(std::ldexp(r, J)));
        return (i >= 0 && i < long(values.size())) ? values[std::size_t(i)] : 0.0;
      },
      breaks);
  const Reconstruction haar(haar_coefficients(f, R, J));
  double haar_err = 0;
  for (double x = 1.0 / 128; x < R; x += 1.0 / 64) haar_err = std::max(haar_err, std::abs(haar(x) - f(x)));

  const auto g = FunctionSpec::gaussian(1.0);
  const auto c = gram_coefficients(g, SplineOrder{2}, 8.0, 3);
  const auto again = gram_coefficients(Reconstruction(c).as_function(), SplineOrder{2}, 8.0, 3);
  const auto a = c.flat(), b = again.flat();
  double idem = 0;
  for (std::size_t i = 0; i < a.size(); ++i) idem = std::max(idem, std::abs(a[i] - b[i]));
  return {haar_err <= 1e-12 && idem <= 1e-9, "haar round-trip " + sci(haar_err) + ", gram idempotence " + sci(idem)};
}

Verdict exactness() {
  const auto grid = uniform(0.0, 25.0, 50);
  double worst = 0;
  for (int m : {1, 2}) {
    const auto coeffs = expand(FunctionSpec::gaussian(1.0), SplineOrder{m}, 6.0, 3);
    TransformRequest req;
    req.f = Reconstruction(coeffs).as_function();
    req.m = SplineOrder{m};
    req.R = 6.0;
    req.J = 3;
    req.p_grid = grid;
    const auto res = transform(req);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      long double direct = 0;
      for (const auto& atom : coeffs.atoms())
        direct += atom.coefficient * atom_hankel({SplineOrder{m}, 0, atom.kind, atom.index}, grid[i], {}, 0.0, 6.0);
      worst = std::max(worst, std::abs(res.values[i] - double(direct)));
    }
  }
  return {worst <= 1e-9, "max |transform(reconstruction) - atom sum| = " + sci(worst)};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path();
  const auto first = dir / "hankelwave_acceptance_1.csv";
  const auto second = dir / "hankelwave_acceptance_2.csv";
  const std::string base = std::string(HANKELWAVE_CLI_PATH) +
                           " transform --builtin gaussian --a 1 --nu 0 --m 1 --R 8 --J 3 --p 0:20:201 --oracle";
  const int s1 = std::system((base + " --output " + first.string() + " 2>/dev/null").c_str());
  const int s2 = std::system((base + " --output " + second.string() + " 2>/dev/null").c_str());
  const std::string a = slurp(first), b = slurp(second);
  std::filesystem::remove(first);
  std::filesystem::remove(second);
  const bool pass = s1 == 0 && s2 == 0 && !a.empty() && a == b;
  return {pass, std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different") + " output"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Haar equivalence", 5, haar_equivalence},
      {2, "Two-path agreement", 30, two_path},
      {3, "Monomial-integral certification", 60, monomial_certification},
      {4, "Gaussian experiment", 60, gaussian_experiment},
      {5, "Spline invariant suite", 5, spline_invariants},
      {6, "Round-trip normalization", 10, round_trip},
      {7, "Pipeline exactness", 10, exactness},
      {8, "Determinism", 120, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = v.pass && in_time;
    failures += pass ? 0 : 1;
    std::printf("[%s] %d %s: %s; %.2f s (budget %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                seconds, c.budget_seconds, in_time ? "" : " OVER BUDGET");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
