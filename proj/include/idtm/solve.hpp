#pragma once

// One-call driver: root selection, final series, and its diagnostics.

#include <cstddef>
#include <optional>
#include <vector>

#include "idtm/diagnostics.hpp"
#include "idtm/solver.hpp"

namespace idtm {

struct SolveOptions {
  ScanRange scan{};
  /// Orders used to separate the good root; default_ladder(order) if unset.
  std::optional<std::vector<std::size_t>> ladder;
  SelectOptions select{};
  std::optional<ExactSolution> exact;
  /// Points of the max-norm grids ([0,1] for ME, (0,1] for MER).
  std::size_t grid_points = 1001;
  bool with_bound = true;
};

struct SolutionReport {
  RootReport roots;
  SeriesSolution solution;
  double boundary_residual;
  ResidualTable residual;
  std::optional<ErrorTable> error;
  std::optional<Lemma1Bound> bound;

  double beta() const noexcept { return solution.beta; }
  bool converged() const noexcept { return roots.converged; }
};

inline SolutionReport solve(const SbvpProblem& p, std::size_t order, const SolveOptions& opt = {}) {
  if (order < 2) throw UsageError("solve: order must be >= 2");
  std::vector<std::size_t> ladder = opt.ladder ? *opt.ladder : default_ladder(order);
  if (ladder.empty() || ladder.back() != order) {
    throw UsageError("solve: the ladder must end at the requested order");
  }

  RootReport roots;
  if (ladder.size() >= 2) {
    roots = select_root(p, ladder, opt.scan, opt.select);
  } else {
    // Too low an order for a ladder: take the smallest-residual root and
    // report it as unconverged, since nothing backs it across orders.
    roots.roots_per_order.push_back(find_roots(p, order, opt.scan, opt.select.roots));
    roots.candidates = roots.roots_per_order.back();
    if (roots.candidates.empty()) throw NoRootError("solve: no root in the scan range");
    const RootCandidate* best = &roots.candidates.front();
    for (const auto& r : roots.candidates) {
      if (r.residual < best->residual) best = &r;
    }
    roots.selected = best->beta;
    roots.ladder = {{order, best->beta}};
    roots.converged = false;
  }

  SeriesSolution sol = build_series(p, roots.selected, order);
  const double g = boundary_residual(sol);
  ResidualTable res = residual(sol, open_unit_grid(opt.grid_points));
  std::optional<ErrorTable> err;
  std::optional<Lemma1Bound> bound;
  if (opt.exact) {
    err = abs_error(sol, *opt.exact, closed_unit_grid(opt.grid_points));
    if (opt.with_bound) {
      bound = lemma1_bound(sol, *opt.exact, BoundOptions{.grid_points = opt.grid_points});
      err->TE = bound->TE;
      err->c_max = bound->c_max;
      err->M_over_fact = bound->M_over_fact;
    }
  }
  return SolutionReport{std::move(roots), std::move(sol), g, std::move(res), std::move(err),
                        std::move(bound)};
}

/// Solves at `order` choosing, among its roots, the one nearest `beta_hint`.
/// Used for convergence sweeps once a good root is known at a higher order.
inline SeriesSolution solve_near(const SbvpProblem& p, std::size_t order, double beta_hint,
                                 const ScanRange& scan, const RootOptions& opt = {}) {
  const auto roots = find_roots(p, order, scan, opt);
  if (roots.empty()) {
    throw NoRootError("solve_near: no root at N = " + std::to_string(order));
  }
  const RootCandidate* best = &roots.front();
  for (const auto& r : roots) {
    if (std::abs(r.beta - beta_hint) < std::abs(best->beta - beta_hint)) best = &r;
  }
  return build_series(p, best->beta, order);
}

}  // namespace idtm
