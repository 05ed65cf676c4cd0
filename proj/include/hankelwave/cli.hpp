#pragma once

// Command implementations behind the `hankelwave` executable. Argument parsing
// lives in tools/; everything here takes an already-populated RunConfig.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hankelwave/csv.hpp"
#include "hankelwave/errors.hpp"
#include "hankelwave/expansion.hpp"
#include "hankelwave/function_spec.hpp"
#include "hankelwave/hankel_kernel.hpp"
#include "hankelwave/oracle.hpp"
#include "hankelwave/pipeline.hpp"
#include "hankelwave/splines.hpp"

namespace hankelwave::cli {

enum class Command { transform, basis, coeffs, validate };

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kConfigError = 2,
  kInputError = 3,
  kNumericalError = 4,
};

struct RunConfig {
  Command command = Command::transform;

  // input function
  std::string builtin = "gaussian";
  double a = 1.0;      // gaussian width
  double c = 1.0;      // constant value
  double slope = 1.0;  // ramp slope
  std::string csv_path;
  Interpolation interp = Interpolation::linear;

  int nu = 0;
  int m = 1;
  double R = 8.0;
  int J = 3;

  double p_min = 0.0;
  double p_max = 20.0;
  int p_count = 201;

  std::string output;  // empty: standard output
  bool oracle = false;

  // basis
  AtomKind kind = AtomKind::wavelet;
  int j = 0;
  int k = 0;

  double z_switch = kDefaultZSwitch;
  double tolerance = 2e-2;  // validate: series vs oracle bound
  unsigned threads = 0;
};

/// "min:max:count", inclusive endpoints, uniform spacing.
inline void parse_grid(const std::string& text, RunConfig& cfg) {
  std::vector<std::string_view> parts;
  {
    std::string_view rest = text;
    while (true) {
      const auto colon = rest.find(':');
      parts.push_back(rest.substr(0, colon));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
  }
  double lo = 0, hi = 0, count = 0;
  if (parts.size() != 3 || !csv::parse_double(parts[0], lo) || !csv::parse_double(parts[1], hi) ||
      !csv::parse_double(parts[2], count))
    throw config_error("--p: expected min:max:count, got '" + text + "'");
  if (count != std::floor(count)) throw config_error("--p: count must be an integer");
  cfg.p_min = lo;
  cfg.p_max = hi;
  cfg.p_count = int(count);
}

inline std::vector<double> make_grid(const RunConfig& cfg) {
  if (!(cfg.p_min >= 0.0) || !std::isfinite(cfg.p_max)) throw config_error("--p: min must be >= 0 and max finite");
  if (!(cfg.p_min < cfg.p_max)) throw config_error("--p: min must be < max");
  if (cfg.p_count < 2) throw config_error("--p: count must be >= 2");
  std::vector<double> grid(std::size_t(cfg.p_count));
  const double step = (cfg.p_max - cfg.p_min) / (cfg.p_count - 1);
  for (int i = 0; i < cfg.p_count; ++i) grid[i] = i + 1 == cfg.p_count ? cfg.p_max : cfg.p_min + step * i;
  return grid;
}

inline FunctionSpec make_function(const RunConfig& cfg) {
  if (!cfg.csv_path.empty()) {
    std::ifstream in(cfg.csv_path);
    if (!in) throw input_error("cannot open input CSV '" + cfg.csv_path + "'");
    return csv::read_sampled(in, cfg.interp);
  }
  if (cfg.builtin == "gaussian") return FunctionSpec::gaussian(cfg.a);
  if (cfg.builtin == "constant") return FunctionSpec::constant(cfg.c);
  if (cfg.builtin == "ramp") return FunctionSpec::ramp(cfg.slope);
  throw config_error("--builtin: unknown function '" + cfg.builtin + "' (gaussian, constant, ramp)");
}

inline void check_common(const RunConfig& cfg) {
  if (cfg.nu < 0) throw config_error("--nu must be >= 0");
  if (cfg.m < 1 || cfg.m > 8) throw config_error("--m must lie in 1..8");
  if (!(cfg.R > 0.0) || !std::isfinite(cfg.R)) throw config_error("--R must be > 0");
  if (cfg.J < 0 || cfg.J > 16) throw config_error("--J must lie in 0..16");
  if (!(cfg.z_switch > 0.0)) throw config_error("--z-switch must be > 0");
}

inline TransformRequest make_request(const RunConfig& cfg) {
  check_common(cfg);
  TransformRequest req;
  req.f = make_function(cfg);
  req.nu = cfg.nu;
  req.m = SplineOrder{cfg.m};
  req.R = cfg.R;
  req.J = cfg.J;
  req.p_grid = make_grid(cfg);
  req.kernel.z_switch = cfg.z_switch;
  req.threads = cfg.threads;
  return req;
}

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

namespace detail {

inline std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

inline CheckResult check_partition_of_unity(SplineOrder order) {
  const int m = order.value();
  double worst = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = (m - 1) + 11.0 * i / 1000;
    double s = 0;
    for (int k = -m; k <= int(std::ceil(x)); ++k) s += bspline_eval(order, x - k);
    worst = std::max(worst, std::abs(s - 1));
  }
  return {"partition_of_unity", worst <= 1e-12, "max |sum - 1| = " + sci(worst)};
}

inline CheckResult check_vanishing_moments(SplineOrder order) {
  const auto psi = mother_wavelet(order);
  double worst = 0;
  for (int l = 0; l < order.value(); ++l) worst = std::max(worst, std::abs(moment(psi, l)));
  return {"vanishing_moments", worst <= 1e-10, "max |moment| = " + sci(worst)};
}

inline CheckResult check_two_path(SplineOrder order, int nu, const KernelConfig& kernel) {
  double worst = 0;
  int evaluated = 0;
  for (int j = 0; j <= 2; ++j)
    for (int k = 0; k <= 3; ++k)
      for (double p : {0.1, 1.0, 5.0}) {
        const double end = std::ldexp(2.0 * order.value() - 1 + k, -j);
        if (0.25 * p * p * end * end > kernel.z_switch) continue;
        const double a = atom_hankel({order, nu, AtomKind::wavelet, {j, k}}, p, kernel);
        const double b = eq4_direct(order, nu, {j, k}, p, kernel);
        worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
        ++evaluated;
      }
  return {"two_path", worst <= 1e-9, std::to_string(evaluated) + " atoms, max scaled diff = " + sci(worst)};
}

inline CheckResult check_atom_oracle(SplineOrder order, int nu, const KernelConfig& kernel) {
  double worst = 0;
  for (int k = 0; k <= 2; ++k)
    for (double p : {0.1, 1.0, 5.0, 20.0}) {
      const WaveletIndex idx{1, k};
      const auto shape = wavelet_piecewise(order, idx);
      const double series = atom_hankel({order, nu, AtomKind::wavelet, idx}, p, kernel);
      const double ref = quadrature_hankel(FunctionSpec::piecewise(shape), nu, shape.upper(), p);
      worst = std::max(worst, std::abs(series - ref));
    }
  return {"atom_vs_oracle", worst <= 1e-8, "max abs diff = " + sci(worst)};
}

inline CheckResult check_haar(const KernelConfig& kernel) {
  double worst = 0;
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; k <= 4; ++k)
      for (double p : {0.01, 0.3, 2.0, 11.0, 50.0})
        worst = std::max(worst, std::abs(haar_closed_form({j, k}, p) -
                                         atom_hankel({SplineOrder{1}, 0, AtomKind::wavelet, {j, k}}, p, kernel)));
  return {"haar_closed_form", worst <= 1e-10, "max abs diff = " + sci(worst)};
}

inline CheckResult check_idempotence(const TransformRequest& req) {
  const auto coeffs = expand(req.f, req.m, req.R, req.J);
  const auto again = expand(Reconstruction(coeffs).as_function(), req.m, req.R, req.J);
  const auto a = coeffs.flat(), b = again.flat();
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return {"projection_idempotence", worst <= 1e-9, "max coefficient change = " + sci(worst)};
}

}  // namespace detail

/// Invariant suite for one configuration.
inline std::vector<CheckResult> validate(const RunConfig& cfg) {
  const auto req = make_request(cfg);
  std::vector<CheckResult> out;
  out.push_back(detail::check_partition_of_unity(req.m));
  out.push_back(detail::check_vanishing_moments(req.m));
  out.push_back(detail::check_two_path(req.m, req.nu, req.kernel));
  out.push_back(detail::check_atom_oracle(req.m, req.nu, req.kernel));
  if (req.m.value() == 1 && req.nu == 0) out.push_back(detail::check_haar(req.kernel));
  out.push_back(detail::check_idempotence(req));

  const auto first = transform_with_oracle(req);
  const auto second = transform(req);
  out.push_back({"series_vs_oracle", first.diagnostics.max_oracle_error <= cfg.tolerance,
                 "max |F - F_oracle| = " + detail::sci(first.diagnostics.max_oracle_error) +
                     " (tolerance " + detail::sci(cfg.tolerance) + ")"});
  out.push_back({"determinism", first.values == second.values, "repeated transform is bitwise identical"});
  out.push_back({"truncation", true, "f(R) = " + detail::sci(first.diagnostics.f_at_R)});
  return out;
}

namespace detail {

inline csv::Table transform_table(const RunConfig& cfg, std::ostream& err) {
  const auto req = make_request(cfg);
  const auto res = cfg.oracle ? transform_with_oracle(req) : transform(req);
  csv::Table t;
  t.header = {"p", "F"};
  if (cfg.oracle) {
    t.header.push_back("F_oracle");
    t.header.push_back("abs_err");
  }
  for (std::size_t i = 0; i < res.p_grid.size(); ++i) {
    std::vector<double> row{res.p_grid[i], res.values[i]};
    if (cfg.oracle) {
      row.push_back(res.diagnostics.oracle_values[i]);
      row.push_back(res.diagnostics.oracle_abs_error[i]);
    }
    t.rows.push_back(std::move(row));
  }
  err << "# f(R) = " << csv::format_double(res.diagnostics.f_at_R) << '\n'
      << "# coefficients = " << res.diagnostics.coefficient_count << ", terms used = " << res.diagnostics.terms_used
      << ", largest dropped = " << csv::format_double(res.diagnostics.largest_dropped) << '\n';
  if (cfg.oracle) err << "# max abs_err = " << csv::format_double(res.diagnostics.max_oracle_error) << '\n';
  return t;
}

inline csv::Table basis_table(const RunConfig& cfg) {
  check_common(cfg);
  const KernelConfig kernel{cfg.z_switch};
  const BasisTransform bt{SplineOrder{cfg.m}, cfg.nu, cfg.kind, WaveletIndex{cfg.j, cfg.k}};
  csv::Table t;
  t.header = {"p", cfg.kind == AtomKind::wavelet ? "Psi" : "Phi"};
  for (double p : make_grid(cfg)) t.rows.push_back({p, atom_hankel(bt, p, kernel)});
  return t;
}

inline csv::Table coeffs_table(const RunConfig& cfg) {
  check_common(cfg);
  const auto coeffs = expand(make_function(cfg), SplineOrder{cfg.m}, cfg.R, cfg.J);
  csv::Table t;
  t.header = {"level", "k", "value"};
  for (const auto& a : coeffs.atoms())
    t.rows.push_back({a.kind == AtomKind::scaling ? -1.0 : double(a.index.j), double(a.index.k), a.coefficient});
  return t;
}

}  // namespace detail

/// Executes one command; returns a process exit status.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::optional<std::ofstream> file;
    if (!cfg.output.empty()) {
      file.emplace(cfg.output, std::ios::binary);
      if (!*file) throw config_error("--output: cannot open '" + cfg.output + "' for writing");
    }
    std::ostream& sink = file ? static_cast<std::ostream&>(*file) : out;
    switch (cfg.command) {
      case Command::transform:
        csv::write(sink, detail::transform_table(cfg, err));
        break;
      case Command::basis:
        csv::write(sink, detail::basis_table(cfg));
        break;
      case Command::coeffs:
        csv::write(sink, detail::coeffs_table(cfg));
        break;
      case Command::validate: {
        bool all = true;
        for (const auto& c : validate(cfg)) {
          sink << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
          all = all && c.pass;
        }
        return all ? kOk : kChecksFailed;
      }
    }
    return kOk;
  } catch (const config_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const numerical_error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace hankelwave::cli
