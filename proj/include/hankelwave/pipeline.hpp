#pragma once

// F_nu(p) = sum_k c0_k Phi_k(p) + sum_jk d_jk Psi_jk(p), the coefficient-weighted
// sum of closed-form atom transforms, each clipped to [0, R].

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hankelwave/compensated_sum.hpp"
#include "hankelwave/errors.hpp"
#include "hankelwave/expansion.hpp"
#include "hankelwave/function_spec.hpp"
#include "hankelwave/hankel_kernel.hpp"
#include "hankelwave/oracle.hpp"
#include "hankelwave/splines.hpp"

namespace hankelwave {

enum class ExpansionMethod {
  automatic,  // haar for m = 1, gram otherwise
  haar,
  gram,
};

struct TransformRequest {
  FunctionSpec f = FunctionSpec::constant(0.0);
  int nu = 0;
  SplineOrder m{1};
  double R = 1.0;
  int J = 0;
  std::vector<double> p_grid;
  ExpansionMethod method = ExpansionMethod::automatic;
  KernelConfig kernel{};
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (nu < 0) throw config_error("transform order nu must be >= 0");
    if (!(R > 0.0) || !std::isfinite(R)) throw config_error("truncation radius R must be > 0");
    if (J < 0) throw config_error("maximum level J must be >= 0");
    if (p_grid.empty()) throw config_error("p grid must not be empty");
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      if (!(p_grid[i] >= 0.0) || !std::isfinite(p_grid[i]))
        throw config_error("p grid values must be finite and >= 0");
      if (i > 0 && !(p_grid[i] > p_grid[i - 1])) throw config_error("p grid must be strictly increasing");
    }
    if (method == ExpansionMethod::haar && m.value() != 1)
      throw config_error("haar expansion requires spline order m = 1");
  }
};

struct TransformDiagnostics {
  std::size_t coefficient_count = 0;
  std::size_t terms_used = 0;
  double largest_dropped = 0;  // magnitude of the largest skipped coefficient
  double f_at_R = 0;           // truncation indicator
  std::vector<double> oracle_values;
  std::vector<double> oracle_abs_error;
  double max_oracle_error = 0;
};

struct TransformResult {
  std::vector<double> p_grid;
  std::vector<double> values;
  TransformDiagnostics diagnostics;
};

/// Terms with |coefficient| below this fraction of the largest are skipped.
inline constexpr double kDropThreshold = 1e-14;

inline ExpansionCoefficients expand(const FunctionSpec& f, SplineOrder m, double R, int J,
                                    ExpansionMethod method = ExpansionMethod::automatic) {
  if (method == ExpansionMethod::haar || (method == ExpansionMethod::automatic && m.value() == 1)) {
    if (m.value() != 1) throw config_error("haar expansion requires spline order m = 1");
    return haar_coefficients(f, R, J);
  }
  return gram_coefficients(f, m, R, J);
}

/// Evaluates the series for a fixed coefficient set at any p.
class SeriesEvaluator {
 public:
  SeriesEvaluator(const ExpansionCoefficients& coeffs, int nu, KernelConfig kernel = {})
      : nu_(nu), kernel_(kernel), radius_(coeffs.radius), count_(coeffs.size()) {
    if (nu < 0) throw config_error("transform order nu must be >= 0");
    auto atoms = coeffs.atoms();
    double largest = 0;
    for (const auto& a : atoms) largest = std::max(largest, std::abs(a.coefficient));
    std::stable_sort(atoms.begin(), atoms.end(), [](const ExpansionAtom& x, const ExpansionAtom& y) {
      return std::abs(x.coefficient) > std::abs(y.coefficient);
    });
    for (const auto& a : atoms) {
      if (a.coefficient == 0.0 || std::abs(a.coefficient) < kDropThreshold * largest) {
        largest_dropped_ = std::max(largest_dropped_, std::abs(a.coefficient));
        continue;
      }
      auto shape = restrict_to(atom_piecewise(coeffs.order, a.kind, a.index), 0.0, radius_);
      if (shape.empty()) continue;
      terms_.push_back({a, std::move(shape)});
    }
  }

  double operator()(double p) const {
    CompensatedSum<double> acc;
    for (const auto& t : terms_) {
      const double v = t.atom.coefficient * piecewise_hankel(t.shape, nu_, p, kernel_);
      if (!std::isfinite(v))
        throw numerical_error("non-finite series term at j = " + std::to_string(t.atom.index.j) +
                              ", k = " + std::to_string(t.atom.index.k) + ", p = " + std::to_string(p));
      acc += v;
    }
    return acc.value();
  }

  std::size_t coefficient_count() const { return count_; }
  std::size_t terms_used() const { return terms_.size(); }
  double largest_dropped() const { return largest_dropped_; }

 private:
  struct Term {
    ExpansionAtom atom;
    PiecewisePoly shape;
  };
  int nu_;
  KernelConfig kernel_;
  double radius_;
  std::size_t count_;
  double largest_dropped_ = 0;
  std::vector<Term> terms_;
};

namespace detail {

/// Applies fn(i) for i in [0, n) on up to `threads` workers; rethrows the first failure.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = unsigned(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < n; i += threads) fn(i);
        } catch (...) {
          std::lock_guard lock(guard);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

inline TransformResult transform(const TransformRequest& req) {
  req.validate();
  const auto coeffs = expand(req.f, req.m, req.R, req.J, req.method);
  const SeriesEvaluator series(coeffs, req.nu, req.kernel);

  TransformResult out;
  out.p_grid = req.p_grid;
  out.values.assign(req.p_grid.size(), 0.0);
  detail::parallel_for(req.p_grid.size(), req.threads, [&](std::size_t i) { out.values[i] = series(req.p_grid[i]); });
  out.diagnostics.coefficient_count = series.coefficient_count();
  out.diagnostics.terms_used = series.terms_used();
  out.diagnostics.largest_dropped = series.largest_dropped();
  out.diagnostics.f_at_R = req.f(req.R);
  return out;
}

/// transform() plus |series - quadrature oracle| per grid point.
inline TransformResult transform_with_oracle(const TransformRequest& req, const QuadratureConfig& quad_cfg = {}) {
  auto out = transform(req);
  auto& diag = out.diagnostics;
  diag.oracle_values.assign(out.p_grid.size(), 0.0);
  detail::parallel_for(out.p_grid.size(), req.threads, [&](std::size_t i) {
    diag.oracle_values[i] = quadrature_hankel(req.f, req.nu, req.R, out.p_grid[i], quad_cfg);
  });
  diag.oracle_abs_error.resize(out.p_grid.size());
  diag.max_oracle_error = 0;
  for (std::size_t i = 0; i < out.p_grid.size(); ++i) {
    diag.oracle_abs_error[i] = std::abs(out.values[i] - diag.oracle_values[i]);
    diag.max_oracle_error = std::max(diag.max_oracle_error, diag.oracle_abs_error[i]);
  }
  return out;
}

}  // namespace hankelwave
