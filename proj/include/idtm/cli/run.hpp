#pragma once

// Executes a RunConfig and writes the requested tables.
//
// CSV: header row, comma separated, LF line endings, values printed with
// %.17g so they parse back to the same double. Text: aligned columns with
// 10 significant digits. Exit codes: 0 converged root, 2 root selected but
// not converged across the ladder (tables still written), 1 error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "idtm/adomian.hpp"
#include "idtm/cli/config.hpp"
#include "idtm/diagnostics.hpp"
#include "idtm/solve.hpp"

namespace idtm::cli {

inline std::string format_value(double v, Format fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt == Format::Csv ? "%.17g" : "%#.10g", v);
  return buf;
}

/// A named table: header plus rows of numbers, with optional text-only
/// preamble/footer lines (prefixed with '#').
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> preamble;
  std::vector<std::string> footer;
  /// Leading columns holding counters (k, N, n), printed as integers in text.
  std::size_t int_columns = 0;
};

inline void write_table(std::ostream& out, const Table& t, Format fmt) {
  if (fmt == Format::Csv) {
    for (std::size_t i = 0; i < t.header.size(); ++i) out << (i ? "," : "") << t.header[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_value(row[i], fmt);
      out << '\n';
    }
    return;
  }
  for (const auto& line : t.preamble) out << line << '\n';
  constexpr int width = 18;
  for (const auto& h : t.header) {
    std::string cell = h;
    cell.resize(std::max<std::size_t>(cell.size(), width), ' ');
    out << cell;
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::string cell = i < t.int_columns ? std::to_string(std::llround(row[i])) : format_value(row[i], fmt);
      cell.resize(std::max<std::size_t>(cell.size(), width), ' ');
      out << cell;
    }
    out << '\n';
  }
  for (const auto& line : t.footer) out << line << '\n';
}

namespace detail {

inline std::vector<double> table_grid() { return uniform_grid(0.0, 1.0, 11); }

inline std::string fmt10(double v) { return format_value(v, Format::Text); }

inline Table coeffs_table(const SolutionReport& r) {
  Table t{"coeffs", {"k", "U(k)"}, {}, {}, {}};
  t.int_columns = 1;
  t.preamble.push_back("beta = " + fmt10(r.beta()));
  t.preamble.push_back("# order N = " + std::to_string(r.solution.order) +
                       ", converged = " + (r.converged() ? "yes" : "no") +
                       ", ladder spread = " + fmt10(r.roots.spread) +
                       ", boundary residual = " + fmt10(r.boundary_residual));
  for (std::size_t k = 0; k <= r.solution.order; ++k) {
    t.rows.push_back({static_cast<double>(k), r.solution.coeffs[k]});
  }
  return t;
}

inline Table solution_table(const SolutionReport& r) {
  Table t{"solution", {"x", "u_N(x)"}, {}, {}, {}};
  for (double x : table_grid()) t.rows.push_back({x, ps_eval(r.solution.coeffs, x)});
  return t;
}

inline Table error_table(const SolutionReport& r, const ExactSolution& exact) {
  Table t{"error", {"x", "exact", "u_N(x)", "E_N(x)"}, {}, {}, {}};
  const ErrorTable e = abs_error(r.solution, exact, table_grid());
  for (std::size_t i = 0; i < e.grid.size(); ++i) {
    const double x = e.grid[i];
    t.rows.push_back({x, exact.eval(x), ps_eval(r.solution.coeffs, x), e.E[i]});
  }
  t.footer.push_back("# ME_N = " + fmt10(r.error->ME));
  return t;
}

inline Table residual_table(const SolutionReport& r) {
  Table t{"residual", {"x", "abs_residual"}, {}, {}, {}};
  const ResidualTable& res = r.residual;
  for (std::size_t i = 0; i < res.grid.size(); ++i) t.rows.push_back({res.grid[i], res.ER[i]});
  t.footer.push_back("# MER_N = " + fmt10(res.MER));
  if (res.excluded > 0) {
    t.footer.push_back("# " + std::to_string(res.excluded) +
                       " grid points left the domain of f and are excluded from MER");
  }
  return t;
}

inline Table bound_table(const SolutionReport& r) {
  Table t{"bound", {"N", "ME", "TE", "c_max", "M_over_fact"}, {}, {}, {}};
  t.int_columns = 1;
  t.rows.push_back({static_cast<double>(r.solution.order), r.error->ME, r.bound->TE, r.bound->c_max,
                    r.bound->M_over_fact});
  return t;
}

// MER_N for N = 2, 4, ..., order, each solved at the root nearest the
// selected beta.
inline Table mer_table(const RunConfig& cfg, const SolutionReport& r) {
  Table t{"mer", {"N", "beta_N", "MER_N"}, {}, {}, {}};
  t.int_columns = 1;
  const SbvpProblem p = cfg.problem();
  RootOptions ro;
  ro.parallel = cfg.parallel;
  for (std::size_t n = 2; n <= cfg.order; n += 2) {
    const SeriesSolution s =
        n == cfg.order ? r.solution : solve_near(p, n, r.beta(), cfg.scan, ro);
    const ResidualTable res = residual(s, open_unit_grid(cfg.grid_points));
    t.rows.push_back({static_cast<double>(n), s.beta, res.MER});
  }
  return t;
}

inline std::string table_path(const std::string& base, const std::string& name, bool many) {
  if (!many) return base;
  std::filesystem::path p(base);
  const std::string ext = p.has_extension() ? p.extension().string() : std::string();
  p.replace_extension();
  return p.string() + "." + name + ext;
}

}  // namespace detail

inline SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions opt;
  opt.scan = cfg.scan;
  opt.ladder = cfg.ladder;
  opt.select.association_radius = cfg.association_radius;
  opt.select.ladder_tol = cfg.ladder_tol;
  opt.select.roots.parallel = cfg.parallel;
  opt.grid_points = cfg.grid_points;
  if (cfg.exact) opt.exact = ExactSolution::from_name(*cfg.exact);
  return opt;
}

/// Builds every requested table for a validated config.
inline std::pair<SolutionReport, std::vector<Table>> build_tables(const RunConfig& cfg) {
  SolutionReport report = solve(cfg.problem(), cfg.order, solve_options(cfg));
  std::vector<Table> tables;
  for (Output o : cfg.outputs) {
    switch (o) {
      case Output::Coeffs: tables.push_back(detail::coeffs_table(report)); break;
      case Output::Solution: tables.push_back(detail::solution_table(report)); break;
      case Output::Error:
        if (!report.error) throw ConfigError("outputs: error table needs an exact solution");
        tables.push_back(detail::error_table(report, ExactSolution::from_name(*cfg.exact)));
        break;
      case Output::Residual: tables.push_back(detail::residual_table(report)); break;
      case Output::Bound:
        if (!report.bound) throw ConfigError("outputs: bound needs an exact solution");
        tables.push_back(detail::bound_table(report));
        break;
      case Output::Mer: tables.push_back(detail::mer_table(cfg, report)); break;
    }
  }
  return {std::move(report), std::move(tables)};
}

/// Runs the solver for `cfg`; tables go to `out` (or to files when
/// output_path is set), diagnostics to `err`. Returns the exit code.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    auto [report, tables] = build_tables(cfg);
    if (!report.converged()) {
      err << "warning: root not converged across the order ladder (spread "
          << detail::fmt10(report.roots.spread) << ", tolerance " << detail::fmt10(cfg.ladder_tol)
          << "); tables emitted anyway\n";
    }
    if (cfg.output_path) {
      const bool many = tables.size() > 1;
      for (const auto& t : tables) {
        const std::string path = detail::table_path(*cfg.output_path, t.name, many);
        std::ofstream f(path, std::ios::binary);
        if (!f) throw ConfigError("output_path: cannot write '" + path + "'");
        write_table(f, t, cfg.format);
      }
    } else {
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i > 0) out << '\n';
        write_table(out, tables[i], cfg.format);
      }
    }
    return report.converged() ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

struct BenchRow {
  std::size_t n;
  double duan_us;
  double oracle_us;
  /// max_m |duan - oracle| / max(|oracle|, 1e-3)
  double max_deviation;
};

/// An admissible expansion point for each family.
inline double bench_center(const Nonlinearity& f) {
  return std::holds_alternative<PowerLaw>(f.family()) ||
                 std::holds_alternative<MembraneCap>(f.family()) ||
                 std::holds_alternative<MichaelisMenten>(f.family())
             ? 1.0
             : 0.5;
}

/// Times both Adomian generators for n = 1..n_max on random components
/// (u_0 at bench_center, u_m uniform in [-0.5, 0.5]; fixed seed).
inline std::vector<BenchRow> adomian_bench(const Nonlinearity& f, std::size_t n_max,
                                           std::size_t trials, std::uint64_t seed = 20140701) {
  if (trials == 0) throw UsageError("adomian_bench: trials must be positive");
  if (n_max == 0 || n_max > 50) throw UsageError("adomian_bench: n_max must be in 1..50");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  std::vector<BenchRow> rows;
  using clock = std::chrono::steady_clock;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BenchRow row{n, 0.0, 0.0, 0.0};
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<double> u(n + 1);
      u[0] = bench_center(f);
      for (std::size_t m = 1; m <= n; ++m) u[m] = dist(rng);
      const auto t0 = clock::now();
      const auto d = adomian_duan(u, f, n);
      const auto t1 = clock::now();
      const auto o = adomian_oracle(u, f, n);
      const auto t2 = clock::now();
      row.duan_us += std::chrono::duration<double, std::micro>(t1 - t0).count();
      row.oracle_us += std::chrono::duration<double, std::micro>(t2 - t1).count();
      for (std::size_t m = 0; m <= n; ++m) {
        row.max_deviation =
            std::max(row.max_deviation, std::abs(d[m] - o[m]) / std::max(std::abs(o[m]), 1e-3));
      }
    }
    row.duan_us /= static_cast<double>(trials);
    row.oracle_us /= static_cast<double>(trials);
    rows.push_back(row);
  }
  return rows;
}

inline Table bench_table(const std::vector<BenchRow>& rows) {
  Table t{"adomian_bench", {"n", "duan_us", "oracle_us", "max_deviation"}, {}, {}, {}};
  t.int_columns = 1;
  for (const auto& r : rows) {
    t.rows.push_back({static_cast<double>(r.n), r.duan_us, r.oracle_us, r.max_deviation});
  }
  return t;
}

}  // namespace idtm::cli
