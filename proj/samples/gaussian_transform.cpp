// Transforms a truncated Gaussian with Haar and linear-spline expansions and
// compares both against the closed-form semi-infinite transform.

#include <cmath>
#include <cstdio>

#include "hankelwave/hankelwave.hpp"

int main() {
  using namespace hankelwave;

  TransformRequest req;
  req.f = FunctionSpec::gaussian(1.0);
  req.R = 8.0;
  req.J = 3;
  for (int i = 0; i <= 20; ++i) req.p_grid.push_back(i);

  for (int m : {1, 2}) {
    req.m = SplineOrder{m};
    const auto res = transform(req);
    double worst = 0;
    for (std::size_t i = 0; i < res.p_grid.size(); ++i)
      worst = std::max(worst, std::abs(res.values[i] - gaussian_exact(1.0, res.p_grid[i])));
    std::printf("m = %d, J = %d: %zu atoms, max |F - exact| = %.3e\n", m, req.J,
                res.diagnostics.coefficient_count, worst);
  }
  return 0;
}
