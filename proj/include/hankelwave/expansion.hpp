#pragma once

// Wavelet expansion of f on [0, R]:
//
//   f(r) ~ sum_k c0_k N_m(r - k) + sum_{j<J} sum_k d_jk psi_m(2^j r - k)
//
// Atoms are unnormalized (no 2^(j/2) factor), so the coefficients carry the
// compensating scale. Every atom whose support meets (0, R) is retained,
// including those straddling r = 0 (negative k) and r = R; f is treated as
// zero beyond R.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hankelwave/errors.hpp"
#include "hankelwave/function_spec.hpp"
#include "hankelwave/piecewise_poly.hpp"
#include "hankelwave/quadrature.hpp"
#include "hankelwave/splines.hpp"

namespace hankelwave {

enum class Normalization {
  /// psi_jk(r) = psi(2^j r - k), phi_k(r) = N_m(r - k)
  unnormalized_atoms,
};

struct ExpansionAtom {
  AtomKind kind;
  WaveletIndex index;
  double coefficient;
};

struct ExpansionCoefficients {
  SplineOrder order{1};
  int max_level = 0;
  double radius = 1.0;
  int c0_first = 0;  // shift k of c0[0]
  std::vector<double> c0;
  int d_first = 0;  // shift k of d[j][0], the same on every level
  std::vector<std::vector<double>> d;
  Normalization normalization = Normalization::unnormalized_atoms;

  std::size_t size() const {
    std::size_t n = c0.size();
    for (const auto& level : d) n += level.size();
    return n;
  }

  /// Flattened view: scaling atoms first, then wavelets level by level.
  std::vector<ExpansionAtom> atoms() const {
    std::vector<ExpansionAtom> out;
    out.reserve(size());
    for (std::size_t i = 0; i < c0.size(); ++i)
      out.push_back({AtomKind::scaling, WaveletIndex{0, c0_first + int(i)}, c0[i]});
    for (std::size_t j = 0; j < d.size(); ++j)
      for (std::size_t i = 0; i < d[j].size(); ++i)
        out.push_back({AtomKind::wavelet, WaveletIndex{int(j), d_first + int(i)}, d[j][i]});
    return out;
  }

  std::vector<double> flat() const {
    std::vector<double> v(c0);
    for (const auto& level : d) v.insert(v.end(), level.begin(), level.end());
    return v;
  }
};

namespace detail {

inline void check_domain(double R, int J) {
  if (!(R > 0.0) || !std::isfinite(R)) throw config_error("truncation radius R must be > 0");
  if (J < 0) throw config_error("maximum level J must be >= 0");
  if (J > 24) throw config_error("maximum level J must be <= 24");
}

/// Shapes an empty coefficient set covering every atom whose support meets (0, R).
inline ExpansionCoefficients layout(SplineOrder order, double R, int J) {
  check_domain(R, J);
  const int m = order.value();
  ExpansionCoefficients c;
  c.order = order;
  c.max_level = J;
  c.radius = R;
  c.c0_first = -(m - 1);
  c.c0.assign(std::size_t(int(std::ceil(R)) - c.c0_first), 0.0);
  c.d_first = -(2 * m - 2);
  for (int j = 0; j < J; ++j) c.d.emplace_back(std::size_t(int(std::ceil(std::ldexp(R, j))) - c.d_first), 0.0);
  return c;
}

inline double checked(const FunctionSpec& f, double r) {
  const double v = f(r);
  if (!std::isfinite(v))
    throw input_error("function '" + f.name() + "' is not finite at r = " + std::to_string(r));
  return v;
}

/// Differences below this fraction of int_0^R |f| are rounding noise.
inline constexpr double kAbsoluteFloorFraction = 1e-15;

/// kAbsoluteFloorFraction * int_0^R |f|, on cells of width 2^-J.
inline double absolute_floor(const FunctionSpec& f, double R, int J) {
  const auto& rule = GaussLegendre::get(8);
  const double h = std::ldexp(1.0, -J);
  long double total = 0;
  for (double a = 0; a < R; a += h)
    total += rule.integrate([&](double r) { return std::abs(checked(f, r)); }, a, std::min(a + h, R));
  return kAbsoluteFloorFraction * double(total);
}

/// int_a^b f(r) w(r) dr, composite 8-point Gauss-Legendre split at f's
/// breakpoints, doubling the panel count until successive estimates agree to
/// 1e-11 relative or to `abs_floor`.
template <class W>
double integrate_weighted(const FunctionSpec& f, W&& w, double a, double b, double abs_floor) {
  if (!(b > a)) return 0.0;
  const auto& rule = GaussLegendre::get(8);
  std::vector<double> cuts{a};
  for (double x : f.breakpoints_in(a, b)) cuts.push_back(x);
  cuts.push_back(b);
  long double total = 0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double lo = cuts[s], hi = cuts[s + 1];
    auto composite = [&](int panels, double& magnitude) {
      const double h = (hi - lo) / panels;
      long double sum = 0, mag = 0;
      for (int i = 0; i < panels; ++i) {
        const double pa = lo + h * i, pb = i + 1 == panels ? hi : pa + h;
        sum += rule.integrate([&](double r) { return checked(f, r) * w(r); }, pa, pb);
        mag += rule.integrate([&](double r) { return std::abs(f(r) * w(r)); }, pa, pb);
      }
      magnitude = double(mag);
      return double(sum);
    };
    double mag = 0;
    double prev = composite(1, mag);
    for (int panels = 2; panels <= (1 << 14); panels *= 2) {
      const double cur = composite(panels, mag);
      const bool done = std::abs(cur - prev) <= std::max(1e-11 * std::max(std::abs(cur), 1e-3 * mag), abs_floor);
      prev = cur;
      if (done) break;
    }
    total += prev;
  }
  return double(total);
}

}  // namespace detail

/// Haar (m = 1) coefficients from cell integrals of f:
///   c0_k = int_k^{k+1} f,
///   d_jk = 2^j (int over the left half of the cell - int over the right half).
/// The 2^j factor makes reconstruct() reproduce f exactly on piecewise
/// constants at level J.
inline ExpansionCoefficients haar_coefficients(const FunctionSpec& f, double R, int J) {
  auto c = detail::layout(SplineOrder{1}, R, J);
  const int cells_per_unit = 1 << J;
  const int units = int(c.c0.size());
  const double h = std::ldexp(1.0, -J);
  std::vector<double> fine(std::size_t(units) * cells_per_unit);
  const double abs_floor = detail::absolute_floor(f, R, J);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double a = h * double(i);
    const double b = std::min(a + h, R);
    fine[i] = a < R ? detail::integrate_weighted(f, [](double) { return 1.0; }, a, b, abs_floor) : 0.0;
  }
  for (int k = 0; k < units; ++k) {
    long double s = 0;
    for (int i = 0; i < cells_per_unit; ++i) s += fine[std::size_t(k) * cells_per_unit + i];
    c.c0[k] = double(s);
  }
  for (int j = 0; j < J; ++j) {
    const int width = cells_per_unit >> j;  // fine cells per level-j cell
    for (std::size_t k = 0; k < c.d[j].size(); ++k) {
      long double left = 0, right = 0;
      for (int i = 0; i < width / 2; ++i) left += fine[k * width + i];
      for (int i = width / 2; i < width; ++i) right += fine[k * width + i];
      c.d[j][k] = double(std::ldexp(left - right, j));
    }
  }
  return c;
}

/// Point evaluation of an expansion.
class Reconstruction {
 public:
  explicit Reconstruction(ExpansionCoefficients coeffs)
      : coeffs_(std::move(coeffs)),
        scaling_(bspline_piecewise(coeffs_.order)),
        wavelet_(mother_wavelet(coeffs_.order)) {}

  /// Value of the truncated expansion; zero outside [0, R].
  double operator()(double r) const {
    if (r < 0.0 || r > coeffs_.radius) return 0.0;
    const int m = coeffs_.order.value();
    long double sum = 0;
    const int base = int(std::floor(r));
    for (int k = base - m + 1; k <= base; ++k) {
      const int i = k - coeffs_.c0_first;
      if (i >= 0 && i < int(coeffs_.c0.size())) sum += coeffs_.c0[i] * scaling_(r - k);
    }
    for (std::size_t j = 0; j < coeffs_.d.size(); ++j) {
      const double x = std::ldexp(r, int(j));
      const int top = int(std::floor(x));
      for (int k = top - 2 * m + 1; k <= top; ++k) {
        const int i = k - coeffs_.d_first;
        if (i >= 0 && i < int(coeffs_.d[j].size())) sum += coeffs_.d[j][i] * wavelet_(x - k);
      }
    }
    return double(sum);
  }

  const ExpansionCoefficients& coefficients() const { return coeffs_; }

  FunctionSpec as_function() const {
    auto self = std::make_shared<const Reconstruction>(*this);
    std::vector<double> breaks;
    const int J = coeffs_.max_level;
    const double step = std::ldexp(0.5, -std::max(J - 1, 0));
    for (double x = 0; x < coeffs_.radius; x += step) breaks.push_back(x);
    breaks.push_back(coeffs_.radius);
    return FunctionSpec::custom("reconstruction", [self](double r) { return (*self)(r); }, std::move(breaks));
  }

 private:
  ExpansionCoefficients coeffs_;
  PiecewisePoly scaling_;
  PiecewisePoly wavelet_;
};

inline double reconstruct(const ExpansionCoefficients& coeffs, double r) { return Reconstruction(coeffs)(r); }

/// Diagnostics of the Gram solve.
struct GramReport {
  std::size_t atoms = 0;
  std::size_t rank = 0;            // dimension of the spline space restricted to [0, R]
  double condition = 0;            // on the retained eigenspace
  double null_eigen_ratio = 0;     // largest discarded / largest eigenvalue
};

inline constexpr double kGramConditionLimit = 1e12;

/// L2([0, R]) best approximation of f from the retained atoms.
///
/// Retained atoms overlap the boundaries, so their restrictions to [0, R] are
/// linearly dependent: the Gram matrix has rank ceil(2^J R) + m - 1. The
/// minimum-norm solution (in Jacobi-equilibrated coordinates) on that rank is
/// returned; it is a pure function of f|[0, R].
inline ExpansionCoefficients gram_coefficients(const FunctionSpec& f, SplineOrder order, double R, int J,
                                               GramReport* report = nullptr) {
  auto c = detail::layout(order, R, J);
  const auto atoms = c.atoms();
  const auto n = atoms.size();
  std::vector<PiecewisePoly> pieces;
  pieces.reserve(n);
  for (const auto& a : atoms) pieces.push_back(restrict_to(atom_piecewise(order, a.kind, a.index), 0.0, R));

  const auto& rule = GaussLegendre::get(std::max(8, order.value()));
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(Eigen::Index(n));
  const double abs_floor = detail::absolute_floor(f, R, J);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      const auto& A = pieces[a];
      const auto& B = pieces[b];
      if (A.empty() || B.empty() || A.upper() <= B.lower() || B.upper() <= A.lower()) continue;
      const auto grid = merge_breakpoints(A.breakpoints, B.breakpoints);
      const auto pa = refine(A, grid);
      const auto pb = refine(B, grid);
      long double s = 0;
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const auto prod = poly::multiply(pa[i], pb[i]);
        s += rule.integrate([&](double r) { return poly::horner<double>(prod, r - grid[i]); }, grid[i], grid[i + 1]);
      }
      G(Eigen::Index(a), Eigen::Index(b)) = G(Eigen::Index(b), Eigen::Index(a)) = double(s);
    }
    long double s = 0;
    const auto& A = pieces[a];
    for (std::size_t i = 0; i < A.pieces.size(); ++i) {
      const auto& piece = A.pieces[i];
      const double left = A.breakpoints[i];
      s += detail::integrate_weighted(f, [&](double r) { return poly::horner<double>(piece, r - left); }, left,
                                      A.breakpoints[i + 1], abs_floor);
    }
    rhs(Eigen::Index(a)) = double(s);
  }

  Eigen::VectorXd scale = G.diagonal().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd Gs = scale.asDiagonal() * G * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Gs);
  if (eig.info() != Eigen::Success) throw numerical_error("Gram eigen-decomposition failed");
  const auto& lambda = eig.eigenvalues();  // ascending
  const auto rank = std::min<std::size_t>(n, std::size_t(std::ceil(std::ldexp(R, J))) + order.value() - 1);
  const auto first = Eigen::Index(n - rank);
  const double lmax = lambda(Eigen::Index(n) - 1);
  const double cond = lmax / lambda(first);
  if (report) {
    report->atoms = n;
    report->rank = rank;
    report->condition = cond;
    report->null_eigen_ratio = first > 0 ? std::abs(lambda(first - 1)) / lmax : 0.0;
  }
  if (!(lambda(first) > 0.0) || cond > kGramConditionLimit)
    throw numerical_error("ill-conditioned Gram system (condition estimate " + std::to_string(cond) + ")");

  const Eigen::MatrixXd U = eig.eigenvectors().rightCols(Eigen::Index(rank));
  const Eigen::VectorXd proj = U.transpose() * scale.asDiagonal() * rhs;
  const Eigen::VectorXd y = U * proj.cwiseQuotient(lambda.tail(Eigen::Index(rank)));
  const Eigen::VectorXd x = scale.asDiagonal() * y;

  std::size_t pos = 0;
  for (auto& v : c.c0) v = x(Eigen::Index(pos++));
  for (auto& level : c.d)
    for (auto& v : level) v = x(Eigen::Index(pos++));
  return c;
}

/// L2([0, R]) distance between f and the expansion, by Gauss-Legendre
/// on the finest dyadic cells.
inline double l2_error(const FunctionSpec& f, const ExpansionCoefficients& coeffs) {
  const Reconstruction rec(coeffs);
  const double h = std::ldexp(0.5, -std::max(coeffs.max_level - 1, 0));
  const auto& rule = GaussLegendre::get(16);
  long double total = 0;
  for (double a = 0; a < coeffs.radius; a += h) {
    const double b = std::min(a + h, coeffs.radius);
    std::vector<double> cuts{a};
    for (double x : f.breakpoints_in(a, b)) cuts.push_back(x);
    cuts.push_back(b);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s)
      total += rule.integrate(
          [&](double r) {
            const double e = f(r) - rec(r);
            return e * e;
          },
          cuts[s], cuts[s + 1]);
  }
  return std::sqrt(double(total));
}

}  // namespace hankelwave
