#pragma once

// Accuracy measures for a series solution u_N.
//
//   E_N(x)  = |u(x) - u_N(x)|, ME_N = max over [0,1]     (needs exact u)
//   TE_N    = M/(N+1)! + max_k |c_k|,                     (needs exact u)
//             M = max_{[0,1]} |u^(N+1)|, c_k = u^(k)(0)/k! - U(k)
//   ER_N(x) = |u_N'' + (alpha/x) u_N' - f(u_N)|, MER_N = max over (0,1]
//
// TE_N is an upper bound for ME_N. M is taken from the Taylor polynomial of
// the exact solution extended by a guard of extra terms; the guard grows
// until the (N+1)-th derivative series has converged on [0,1].

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "idtm/errors.hpp"
#include "idtm/nonlinearity.hpp"
#include "idtm/powerseries.hpp"
#include "idtm/solver.hpp"

namespace idtm {

class ExactSolution {
 public:
  enum class Kind {
    IsothermalGasSphere,    // sqrt(3/(3+x^2))
    ThermalExplosionExact,  // 2 ln((C+1)/(C x^2+1)), C = 3 - 2 sqrt(2)
  };

  explicit ExactSolution(Kind kind) : kind_(kind) {}

  static ExactSolution from_name(const std::string& name) {
    if (name == "isothermal_gas_sphere") return ExactSolution(Kind::IsothermalGasSphere);
    if (name == "thermal_explosion") return ExactSolution(Kind::ThermalExplosionExact);
    throw UsageError("unknown exact solution '" + name + "'");
  }

  Kind kind() const noexcept { return kind_; }

  std::string name() const {
    return kind_ == Kind::IsothermalGasSphere ? "isothermal_gas_sphere" : "thermal_explosion";
  }

  static double thermal_explosion_constant() { return 3.0 - 2.0 * std::sqrt(2.0); }

  double eval(double x) const {
    if (kind_ == Kind::IsothermalGasSphere) return std::sqrt(3.0 / (3.0 + x * x));
    const double c = thermal_explosion_constant();
    return 2.0 * std::log((c + 1.0) / (c * x * x + 1.0));
  }

  /// Taylor coefficients u^(k)(0)/k!, k = 0..order.
  TruncatedSeries taylor(std::size_t order) const {
    std::vector<double> q(order + 1, 0.0);
    q[0] = 1.0;
    if (kind_ == Kind::IsothermalGasSphere) {
      if (order >= 2) q[2] = 1.0 / 3.0;
      return ps_pow(TruncatedSeries(std::move(q)), -0.5);
    }
    const double c = thermal_explosion_constant();
    if (order >= 2) q[2] = c;
    return ps_add_scalar(ps_scale(ps_ln(TruncatedSeries(std::move(q))), -2.0),
                         2.0 * std::log(c + 1.0));
  }

 private:
  Kind kind_;
};

/// [0,1] with `points` nodes (endpoints included).
inline std::vector<double> closed_unit_grid(std::size_t points) {
  if (points < 2) throw UsageError("closed_unit_grid: need at least 2 points");
  return uniform_grid(0.0, 1.0, points);
}

/// (0,1] with `points` nodes x_i = i/points.
inline std::vector<double> open_unit_grid(std::size_t points) {
  if (points < 1) throw UsageError("open_unit_grid: need at least 1 point");
  std::vector<double> x(points);
  for (std::size_t i = 0; i < points; ++i) {
    x[i] = static_cast<double>(i + 1) / static_cast<double>(points);
  }
  return x;
}

struct ErrorTable {
  std::vector<double> grid;
  std::vector<double> E;
  double ME = 0.0;
  std::optional<double> TE;
  std::optional<double> c_max;
  std::optional<double> M_over_fact;
};

inline ErrorTable abs_error(const SeriesSolution& s, const ExactSolution& exact,
                            const std::vector<double>& grid) {
  ErrorTable t;
  t.grid = grid;
  t.E.reserve(grid.size());
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) throw UsageError("abs_error: grid must lie in [0,1]");
    const double e = std::abs(exact.eval(x) - ps_eval(s.coeffs, x));
    t.E.push_back(e);
    t.ME = std::max(t.ME, e);
  }
  return t;
}

struct Lemma1Bound {
  double TE;
  double c_max;
  double M_over_fact;  // max_{[0,1]} |u^(N+1)| / (N+1)!
  std::size_t guard;   // extra Taylor terms actually used
};

struct BoundOptions {
  std::size_t guard = 30;
  std::size_t max_guard = 480;
  std::size_t grid_points = 1001;
  /// Guard is accepted once the last quarter of the derivative series
  /// contributes at most this fraction of the maximum.
  double tail_rtol = 1e-8;
};

inline Lemma1Bound lemma1_bound(const SeriesSolution& s, const ExactSolution& exact,
                                const BoundOptions& opt = {}) {
  const std::size_t n = s.order;
  const std::vector<double> grid = closed_unit_grid(opt.grid_points);

  for (std::size_t guard = std::max<std::size_t>(opt.guard, 4); guard <= opt.max_guard;
       guard *= 2) {
    const std::size_t deg = n + 1 + guard;
    const TruncatedSeries u = exact.taylor(deg);

    // Root test on the tail: radius of convergence must exceed 1.
    double root = 0.0;
    for (std::size_t j = deg - 3; j <= deg; ++j) {
      if (u[j] != 0.0) root = std::max(root, std::pow(std::abs(u[j]), 1.0 / static_cast<double>(j)));
    }
    if (root >= 1.0) {
      throw BoundUnavailableError("lemma1_bound: exact Taylor series does not converge on [0,1]");
    }

    // d_i = binom(i+N+1, N+1) u_{i+N+1}: coefficients of u^(N+1)(x)/(N+1)!.
    std::vector<double> d(guard + 1);
    double binom = 1.0;
    for (std::size_t i = 0; i <= guard; ++i) {
      if (i > 0) binom = binom * static_cast<double>(i + n + 1) / static_cast<double>(i);
      d[i] = binom * u[i + n + 1];
    }
    double m = 0.0;
    for (double x : grid) m = std::max(m, std::abs(ps_eval(std::span<const double>(d), x)));
    double tail = 0.0;
    for (std::size_t i = guard - guard / 4; i <= guard; ++i) tail += std::abs(d[i]);
    if (tail > opt.tail_rtol * m) continue;

    double c_max = 0.0;
    for (std::size_t k = 0; k <= n; ++k) c_max = std::max(c_max, std::abs(u[k] - s.coeffs[k]));
    return Lemma1Bound{m + c_max, c_max, m, guard};
  }
  throw BoundUnavailableError("lemma1_bound: derivative series not converged within max guard " +
                              std::to_string(opt.max_guard));
}

struct ResidualTable {
  std::vector<double> grid;
  std::vector<double> ER;
  /// true where u_N(x) left the domain of f; ER is +inf there.
  std::vector<bool> flagged;
  double MER = 0.0;
  std::size_t excluded = 0;
};

/// |u_N''(x) + (alpha/x) u_N'(x) - f(u_N(x))| using exact polynomial
/// derivatives of the stored series.
inline double residual_at(const SeriesSolution& s, const TruncatedSeries& d1,
                          const TruncatedSeries& d2, double x) {
  const double u = ps_eval(s.coeffs, x);
  const double du = ps_eval(d1, x);
  const double ddu = ps_eval(d2, x);
  return std::abs(ddu + s.problem.alpha / x * du - nl_eval(s.problem.f, u));
}

inline ResidualTable residual(const SeriesSolution& s, const std::vector<double>& grid) {
  const TruncatedSeries d1 = ps_deriv(s.coeffs);
  const TruncatedSeries d2 = ps_deriv(d1);
  ResidualTable t;
  t.grid = grid;
  t.ER.reserve(grid.size());
  t.flagged.reserve(grid.size());
  for (double x : grid) {
    if (!(x > 0.0 && x <= 1.0)) throw UsageError("residual: grid must lie in (0,1]");
    try {
      const double er = residual_at(s, d1, d2, x);
      t.ER.push_back(er);
      t.flagged.push_back(false);
      t.MER = std::max(t.MER, er);
    } catch (const DomainError&) {
      t.ER.push_back(std::numeric_limits<double>::infinity());
      t.flagged.push_back(true);
      ++t.excluded;
    }
  }
  return t;
}

/// Coefficients of x u'' + alpha u' - x f(u) for the stored series, as a
/// formal power series of order N-1. The recurrence makes every entry
/// vanish up to rounding.
inline TruncatedSeries ode_defect(const SeriesSolution& s) {
  const std::size_t n = s.order;
  const TruncatedSeries d1 = ps_deriv(s.coeffs);  // order N-1
  const TruncatedSeries d2 = ps_deriv(d1);        // order N-2
  const TruncatedSeries fu = nl_lift(s.problem.f, s.coeffs.with_order(n - 1));
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double x_upp = k >= 1 && k - 1 <= d2.order() ? d2[k - 1] : 0.0;
    const double x_f = k >= 1 ? fu[k - 1] : 0.0;
    out[k] = x_upp + s.problem.alpha * d1[k] - x_f;
  }
  return TruncatedSeries(std::move(out));
}

}  // namespace idtm
