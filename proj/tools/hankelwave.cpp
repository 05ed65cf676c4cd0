// hankelwave: Hankel transforms through B-spline wavelet expansions.
//
//   hankelwave transform --builtin gaussian --a 1 --nu 0 --m 1 --R 8 --J 3 --p 0:20:201 --oracle
//   hankelwave basis --m 1 --nu 0 --j 0 --k 0 --p 0.01:50:500
//   hankelwave coeffs --builtin constant --c 1 --m 1 --R 4 --J 2
//   hankelwave validate --builtin gaussian --m 2 --R 8 --J 3

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "hankelwave/cli.hpp"

namespace {

using hankelwave::cli::RunConfig;

void add_function_options(CLI::App& cmd, RunConfig& cfg) {
  auto* builtin = cmd.add_option("--builtin", cfg.builtin, "Built-in input: gaussian, constant, ramp");
  cmd.add_option("--a", cfg.a, "Gaussian width: f(r) = exp(-(r/a)^2)");
  cmd.add_option("--c", cfg.c, "Constant value");
  cmd.add_option("--slope", cfg.slope, "Ramp slope: f(r) = slope * r");
  auto* csv = cmd.add_option("--csv", cfg.csv_path, "Two-column (r, f) CSV input");
  cmd.add_option("--interp", cfg.interp, "Interpolation of CSV samples: linear or cubic")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, hankelwave::Interpolation>{{"linear", hankelwave::Interpolation::linear},
                                                           {"cubic", hankelwave::Interpolation::cubic}},
          CLI::ignore_case));
  builtin->excludes(csv);
}

void add_expansion_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--m", cfg.m, "Spline order (1 = Haar)");
  cmd.add_option("--R", cfg.R, "Truncation radius");
  cmd.add_option("--J", cfg.J, "Number of wavelet levels");
}

void add_grid_option(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option_function<std::string>(
      "--p", [&cfg](const std::string& text) { hankelwave::cli::parse_grid(text, cfg); },
      "Frequency grid min:max:count (inclusive, uniform)");
}

void add_kernel_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--nu", cfg.nu, "Transform order");
  cmd.add_option("--z-switch", cfg.z_switch, "Largest |p^2 zeta^2 / 4| evaluated by the 1F2 series");
  cmd.add_option("--threads", cfg.threads, "Worker threads over the p grid (0 = all cores)");
  cmd.add_option("-o,--output", cfg.output, "Output CSV path (default: standard output)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hankel transforms through B-spline wavelet expansions"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* transform = app.add_subcommand("transform", "Transform a function on a p grid");
  add_function_options(*transform, cfg);
  add_expansion_options(*transform, cfg);
  add_grid_option(*transform, cfg);
  add_kernel_options(*transform, cfg);
  transform->add_flag("--oracle", cfg.oracle, "Add quadrature reference and absolute error columns");

  auto* basis = app.add_subcommand("basis", "Transform of a single scaling or wavelet atom");
  basis->add_option("--m", cfg.m, "Spline order (1 = Haar)");
  basis->add_option("--j", cfg.j, "Level");
  basis->add_option("--k", cfg.k, "Shift");
  basis->add_option("--kind", cfg.kind, "wavelet or scaling")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, hankelwave::AtomKind>{{"wavelet", hankelwave::AtomKind::wavelet},
                                                      {"scaling", hankelwave::AtomKind::scaling}},
          CLI::ignore_case));
  add_grid_option(*basis, cfg);
  add_kernel_options(*basis, cfg);

  auto* coeffs = app.add_subcommand("coeffs", "Expansion coefficients (level -1 rows are scaling coefficients)");
  add_function_options(*coeffs, cfg);
  add_expansion_options(*coeffs, cfg);
  coeffs->add_option("-o,--output", cfg.output, "Output CSV path (default: standard output)");

  auto* validate = app.add_subcommand("validate", "Run the invariant checks for a configuration");
  add_function_options(*validate, cfg);
  add_expansion_options(*validate, cfg);
  add_grid_option(*validate, cfg);
  add_kernel_options(*validate, cfg);
  validate->add_option("--tol", cfg.tolerance, "Bound on max |series - oracle|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return hankelwave::cli::kConfigError;
  } catch (const hankelwave::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return hankelwave::cli::kConfigError;
  }

  if (transform->parsed()) cfg.command = hankelwave::cli::Command::transform;
  if (basis->parsed()) cfg.command = hankelwave::cli::Command::basis;
  if (coeffs->parsed()) cfg.command = hankelwave::cli::Command::coeffs;
  if (validate->parsed()) cfg.command = hankelwave::cli::Command::validate;
  return hankelwave::cli::run(cfg, std::cout, std::cerr);
}
