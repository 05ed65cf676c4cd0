#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "hankelwave/errors.hpp"

namespace hankelwave {

/// n-point Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
class GaussLegendre {
 public:
  static constexpr int kMaxPoints = 128;

  explicit GaussLegendre(int n) : nodes_(n), weights_(n) {
    if (n < 1 || n > kMaxPoints) throw config_error("Gauss-Legendre point count must lie in 1..128");
    for (int i = 0; i < (n + 1) / 2; ++i) {
      long double x = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (n + 0.5L));
      long double dp = 1;
      for (int it = 0; it < 100; ++it) {
        const auto [pn, dpn] = legendre(n, x);
        dp = dpn;
        const long double dx = pn / dpn;
        x -= dx;
        if (std::abs(dx) < 1e-19L) break;
      }
      dp = legendre(n, x).second;
      const double w = double(2 / ((1 - x * x) * dp * dp));
      nodes_[i] = -double(x);
      nodes_[n - 1 - i] = double(x);
      weights_[i] = weights_[n - 1 - i] = w;
    }
  }

  /// Shared rule for `n` points, built on first use.
  static const GaussLegendre& get(int n) {
    if (n < 1 || n > kMaxPoints) throw config_error("Gauss-Legendre point count must lie in 1..128");
    static std::array<std::unique_ptr<GaussLegendre>, kMaxPoints + 1> cache;
    static std::array<std::once_flag, kMaxPoints + 1> flags;
    std::call_once(flags[n], [n] { cache[n] = std::make_unique<GaussLegendre>(n); });
    return *cache[n];
  }

  int size() const { return int(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// Integral of f over [a, b].
  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    long double sum = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return double(sum * half);
  }

 private:
  // (P_n(x), P_n'(x))
  static std::pair<long double, long double> legendre(int n, long double x) {
    long double p0 = 1, p1 = x;
    if (n == 0) return {1, 0};
    for (int k = 2; k <= n; ++k) {
      const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return {p1, n * (x * p1 - p0) / (x * x - 1)};
  }

  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace hankelwave
