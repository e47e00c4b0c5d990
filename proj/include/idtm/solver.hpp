#pragma once

// Series solution of the singular boundary value problem
//
//   u'' + (alpha/x) u' = f(u),  0 < x <= 1,
//   u'(0) = 0,  a u(1) + b u'(1) = c,
//
// by the improved differential transform method. Multiplying by x and
// transforming gives, with U(0) = beta and U(1) = 0,
//
//   U(k+1) = A_{k-1} / ((k+1)(k+alpha)),   k = 1..N-1,
//
// where A_m are the Adomian polynomials of f in the components U(0..m).
// The unknown beta is fixed numerically: g(beta) = a u_N(1) + b u_N'(1) - c
// is scanned on a grid, sign changes are bisected, and among the roots the
// one that stays put as N grows is selected.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "idtm/adomian.hpp"
#include "idtm/errors.hpp"
#include "idtm/nonlinearity.hpp"
#include "idtm/powerseries.hpp"

namespace idtm {

struct SbvpProblem {
  double alpha;
  Nonlinearity f;
  double a;
  double b;
  double c;

  SbvpProblem(double alpha_, Nonlinearity f_, double a_, double b_, double c_)
      : alpha(alpha_), f(std::move(f_)), a(a_), b(b_), c(c_) {
    if (!std::isfinite(alpha) || alpha < 1.0) throw UsageError("SbvpProblem: alpha must be >= 1");
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
      throw UsageError("SbvpProblem: boundary constants must be finite");
    }
    if (a == 0.0 && b == 0.0) throw UsageError("SbvpProblem: a and b cannot both be zero");
  }
};

struct SeriesSolution {
  double beta;
  TruncatedSeries coeffs;
  std::size_t order;
  SbvpProblem problem;
};

inline SeriesSolution build_series(const SbvpProblem& p, double beta, std::size_t order) {
  if (order < 2) throw UsageError("build_series: order must be >= 2");
  if (!std::isfinite(beta)) throw InadmissibleBetaError("build_series: beta must be finite");

  std::vector<double> u(order + 1, 0.0);
  u[0] = beta;
  u[1] = 0.0;
  std::optional<AdomianGenerator> gen;
  try {
    gen.emplace(p.f, beta, order - 2);
  } catch (const DomainError& e) {
    throw InadmissibleBetaError(std::string("beta outside the domain of f: ") + e.what());
  } catch (const RangeError& e) {
    throw NumericalBlowupError(std::string("derivatives of f overflow at beta: ") + e.what());
  }
  double a_prev = gen->polys()[0];
  for (std::size_t k = 1; k + 1 <= order; ++k) {
    if (k >= 2) a_prev = gen->push(u[k - 1]);
    const double kk = static_cast<double>(k);
    u[k + 1] = a_prev / ((kk + 1.0) * (kk + p.alpha));
    if (!std::isfinite(u[k + 1])) {
      throw NumericalBlowupError("build_series: U(" + std::to_string(k + 1) + ") is not finite");
    }
  }
  return SeriesSolution{beta, TruncatedSeries(std::move(u)), order, p};
}

/// g(beta) = a u_N(1) + b u_N'(1) - c.
inline double boundary_residual(const SeriesSolution& s) {
  const double u1 = ps_eval(s.coeffs, 1.0);
  const double du1 = ps_eval(ps_deriv(s.coeffs), 1.0);
  return s.problem.a * u1 + s.problem.b * du1 - s.problem.c;
}

struct ScanRange {
  double lo = 0.1;
  double hi = 3.0;
  std::size_t steps = 291;
};

struct RootCandidate {
  double beta;
  double residual;  // |g(beta)|
};

struct RootOptions {
  /// Bisection stops once the bracket is this narrow.
  double beta_tol = 1e-13;
  /// Grid points with |g| below this count as roots without bisection.
  double grid_atol = 1e-12;
  /// Refined points with |g| above this are brackets of a pole, not roots.
  double max_root_residual = 1e-8;
  /// Roots closer than this are merged.
  double dedupe_tol = 1e-9;
  bool parallel = false;
};

namespace detail {

inline std::optional<double> try_residual(const SbvpProblem& p, double beta, std::size_t order) {
  try {
    return boundary_residual(build_series(p, beta, order));
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const RangeError&) {
    return std::nullopt;
  }
}

inline std::vector<std::optional<double>> scan_residuals(const SbvpProblem& p, std::size_t order,
                                                         const std::vector<double>& grid,
                                                         bool parallel) {
  std::vector<std::optional<double>> g(grid.size());
  auto fill = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) g[i] = try_residual(p, grid[i], order);
  };
  const std::size_t workers =
      parallel ? std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 8))
               : 1;
  if (workers <= 1 || grid.size() < 2 * workers) {
    fill(0, grid.size());
    return g;
  }
  // Each worker writes a disjoint index range, so the merged result does not
  // depend on scheduling.
  std::vector<std::future<void>> jobs;
  const std::size_t chunk = (grid.size() + workers - 1) / workers;
  for (std::size_t begin = 0; begin < grid.size(); begin += chunk) {
    jobs.push_back(std::async(std::launch::async, fill, begin, std::min(grid.size(), begin + chunk)));
  }
  for (auto& j : jobs) j.get();
  return g;
}

// Bisection on [lo, hi] with g(lo), g(hi) of opposite sign. Returns nullopt
// if an interior point is inadmissible.
inline std::optional<RootCandidate> bisect(const SbvpProblem& p, std::size_t order, double lo,
                                           double glo, double hi, double ghi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const auto gm = try_residual(p, mid, order);
    if (!gm) return std::nullopt;
    if (*gm == 0.0) return RootCandidate{mid, 0.0};
    if ((*gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = *gm;
    } else {
      hi = mid;
      ghi = *gm;
    }
  }
  return std::abs(glo) <= std::abs(ghi) ? RootCandidate{lo, std::abs(glo)}
                                        : RootCandidate{hi, std::abs(ghi)};
}

}  // namespace detail

inline std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  std::vector<double> x(points);
  if (points == 1) {
    x[0] = lo;
    return x;
  }
  for (std::size_t i = 0; i < points; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  x.back() = hi;
  return x;
}

/// All roots of g in [scan.lo, scan.hi], sorted by beta. Grid points where
/// f is not defined at beta are skipped.
inline std::vector<RootCandidate> find_roots(const SbvpProblem& p, std::size_t order,
                                             const ScanRange& scan, const RootOptions& opt = {}) {
  if (!(scan.lo < scan.hi)) throw UsageError("find_roots: scan requires lo < hi");
  if (scan.steps < 2) throw UsageError("find_roots: scan requires at least 2 steps");
  if (order < 2) throw UsageError("find_roots: order must be >= 2");

  const std::vector<double> grid = uniform_grid(scan.lo, scan.hi, scan.steps);
  const auto g = detail::scan_residuals(p, order, grid, opt.parallel);
  if (std::none_of(g.begin(), g.end(), [](const auto& v) { return v.has_value(); })) {
    throw DomainError("find_roots: every scan point is outside the domain of f");
  }

  std::vector<RootCandidate> roots;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (g[i] && std::abs(*g[i]) < opt.grid_atol) roots.push_back({grid[i], std::abs(*g[i])});
  }
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!g[i] || !g[i + 1]) continue;
    const double g0 = *g[i];
    const double g1 = *g[i + 1];
    if (g0 == 0.0 || g1 == 0.0 || (g0 < 0.0) == (g1 < 0.0)) continue;
    auto r = detail::bisect(p, order, grid[i], g0, grid[i + 1], g1, opt.beta_tol);
    if (r && r->residual <= opt.max_root_residual) roots.push_back(*r);
  }

  std::sort(roots.begin(), roots.end(),
            [](const RootCandidate& l, const RootCandidate& r) { return l.beta < r.beta; });
  std::vector<RootCandidate> unique;
  for (const auto& r : roots) {
    if (!unique.empty() && r.beta - unique.back().beta <= opt.dedupe_tol) {
      if (r.residual < unique.back().residual) unique.back() = r;
      continue;
    }
    unique.push_back(r);
  }
  return unique;
}

struct LadderPoint {
  std::size_t order;
  double beta;
};

struct RootReport {
  /// Roots at the largest order of the ladder.
  std::vector<RootCandidate> candidates;
  /// The selected chain, ordered by increasing N. Shorter than the ladder
  /// when no chain spans every order.
  std::vector<LadderPoint> ladder;
  double selected = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  /// max |beta_{N_i} - beta_{N_{i+1}}| along the chain.
  double spread = std::numeric_limits<double>::infinity();
  /// Roots found at every order of the ladder, same order as the ladder.
  std::vector<std::vector<RootCandidate>> roots_per_order;
};

struct SelectOptions {
  double association_radius = 0.05;
  double ladder_tol = 1e-6;
  RootOptions roots{};
};

/// (N/2, 3N/4, N) rounded to even orders >= 2, duplicates removed.
inline std::vector<std::size_t> default_ladder(std::size_t order) {
  auto even = [](double v) {
    return static_cast<std::size_t>(2 * std::llround(std::floor(v / 2.0 + 0.5)));
  };
  std::vector<std::size_t> l{even(order / 2.0), even(0.75 * order), order};
  std::erase_if(l, [&](std::size_t n) { return n < 2 || n > order; });
  std::sort(l.begin(), l.end());
  l.erase(std::unique(l.begin(), l.end()), l.end());
  return l;
}

inline RootReport select_root(const SbvpProblem& p, const std::vector<std::size_t>& ladder,
                              const ScanRange& scan, const SelectOptions& opt = {}) {
  if (ladder.size() < 2) throw UsageError("select_root: ladder needs at least two orders");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 2) throw UsageError("select_root: ladder orders must be >= 2");
    if (i > 0 && ladder[i] <= ladder[i - 1]) {
      throw UsageError("select_root: ladder orders must be strictly increasing");
    }
  }

  RootReport report;
  for (std::size_t n : ladder) report.roots_per_order.push_back(find_roots(p, n, scan, opt.roots));
  report.candidates = report.roots_per_order.back();
  if (report.candidates.empty()) {
    throw NoRootError("select_root: no root of the boundary residual at N = " +
                      std::to_string(ladder.back()) + " in the scan range");
  }

  // Chains start at each root of the largest order and walk down the ladder,
  // attaching the nearest root within the association radius.
  struct Chain {
    std::vector<LadderPoint> points;  // descending N while building
    double spread = 0.0;
  };
  std::vector<Chain> chains;
  for (const auto& top : report.candidates) {
    Chain ch;
    ch.points.push_back({ladder.back(), top.beta});
    for (std::size_t i = ladder.size() - 1; i-- > 0;) {
      const double cur = ch.points.back().beta;
      const RootCandidate* best = nullptr;
      for (const auto& r : report.roots_per_order[i]) {
        const double d = std::abs(r.beta - cur);
        if (d <= opt.association_radius && (!best || d < std::abs(best->beta - cur))) best = &r;
      }
      if (!best) break;
      ch.spread = std::max(ch.spread, std::abs(best->beta - cur));
      ch.points.push_back({ladder[i], best->beta});
    }
    chains.push_back(std::move(ch));
  }

  auto better = [](const Chain& l, const Chain& r) {
    if (l.points.size() != r.points.size()) return l.points.size() > r.points.size();
    return l.spread < r.spread;
  };
  const Chain& best = *std::min_element(chains.begin(), chains.end(), better);
  const bool complete = best.points.size() == ladder.size();

  report.ladder.assign(best.points.rbegin(), best.points.rend());
  report.selected = best.points.front().beta;
  report.spread = best.points.size() > 1 ? best.spread : std::numeric_limits<double>::infinity();
  report.converged = complete && report.spread <= opt.ladder_tol;
  return report;
}

}  // namespace idtm
