#pragma once

// Command-line entry point:
//
//   idtm solve [--preset NAME | --alpha R --family NAME --param k=v ... --bc a,b,c]
//              [--config FILE] [--order N] [--ladder N1,N2,...] [--scan lo,hi,steps]
//              [--grid P] [--exact KIND] [--out PATH] [--format text|csv]
//              [--emit coeffs,solution,error,residual,bound,mer]
//              [--ladder-tol T] [--assoc-radius R] [--parallel]
//   idtm adomian-bench --family NAME [--param k=v ...] [--n-max N] [--trials T]
//              [--format text|csv]
//   idtm presets

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "idtm/cli/config.hpp"
#include "idtm/cli/run.hpp"

namespace idtm::cli {

namespace detail {

inline ParamMap parse_params(const std::vector<std::string>& items) {
  ParamMap params;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--param: expected k=v, got '" + item + "'");
    params[trim(item.substr(0, eq))] = to_double("param." + item.substr(0, eq), trim(item.substr(eq + 1)));
  }
  return params;
}

}  // namespace detail

inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Series solver for singular boundary value problems u'' + (alpha/x) u' = f(u)"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve a problem and emit tables");
  std::string preset, config_path, family, bc, ladder, scan, exact, out_path, format, emit;
  std::string alpha, order, grid, ladder_tol, assoc;
  std::vector<std::string> params;
  bool parallel = false;
  solve_cmd->add_option("--preset", preset, "built-in problem (see `presets`)");
  solve_cmd->add_option("--config", config_path, "key=value config file");
  solve_cmd->add_option("--alpha", alpha, "coefficient alpha >= 1");
  solve_cmd->add_option("--family", family, "nonlinearity family");
  solve_cmd->add_option("--param", params, "family parameter k=v (repeatable)");
  solve_cmd->add_option("--bc", bc, "boundary constants a,b,c");
  solve_cmd->add_option("--order", order, "truncation order N");
  solve_cmd->add_option("--ladder", ladder, "orders for root selection N1,N2,...");
  solve_cmd->add_option("--scan", scan, "beta scan lo,hi,steps");
  solve_cmd->add_option("--grid", grid, "points of the max-norm grids");
  solve_cmd->add_option("--exact", exact, "exact solution kind");
  solve_cmd->add_option("--out", out_path, "output file (one per table when several)");
  solve_cmd->add_option("--format", format, "text or csv");
  solve_cmd->add_option("--emit", emit, "tables: coeffs,solution,error,residual,bound,mer");
  solve_cmd->add_option("--ladder-tol", ladder_tol, "convergence tolerance across the ladder");
  solve_cmd->add_option("--assoc-radius", assoc, "root association radius");
  solve_cmd->add_flag("--parallel", parallel, "evaluate the beta scan on several threads");

  // adomian-bench
  auto* bench_cmd = app.add_subcommand("adomian-bench", "time Duan vs definitional Adomian polynomials");
  std::string bench_family, bench_format = "text";
  std::vector<std::string> bench_params;
  long long n_max = 12, trials = 100;
  bench_cmd->add_option("--family", bench_family, "nonlinearity family")->required();
  bench_cmd->add_option("--param", bench_params, "family parameter k=v (repeatable)");
  bench_cmd->add_option("--n-max", n_max, "highest polynomial index (<= 50)");
  bench_cmd->add_option("--trials", trials, "random instances per index");
  bench_cmd->add_option("--format", bench_format, "text or csv");

  auto* presets_cmd = app.add_subcommand("presets", "list built-in problems");

  std::vector<std::string> argv_store{"idtm"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (presets_cmd->parsed()) {
      for (const auto& name : preset_names()) out << name << '\n';
      return 0;
    }
    if (bench_cmd->parsed()) {
      Format fmt = Format::Text;
      RunConfig scratch;
      apply_setting(scratch, "format", bench_format);
      fmt = scratch.format;
      if (trials < 0 || n_max < 0) throw UsageError("adomian-bench: counts must be non-negative");
      const Nonlinearity f = Nonlinearity::from_config(bench_family, detail::parse_params(bench_params));
      const auto rows = adomian_bench(f, static_cast<std::size_t>(n_max), static_cast<std::size_t>(trials));
      write_table(out, bench_table(rows), fmt);
      return 0;
    }

    RunConfig cfg;
    if (!preset.empty()) apply_preset(cfg, preset);
    if (!config_path.empty()) apply_config_text(cfg, read_file(config_path));
    if (!alpha.empty()) apply_setting(cfg, "alpha", alpha);
    if (!family.empty()) apply_setting(cfg, "family", family);
    for (const auto& [k, v] : detail::parse_params(params)) cfg.params[k] = v;
    if (!bc.empty()) {
      const auto parts = detail::split(bc, ',');
      if (parts.size() != 3) throw ConfigError("bc: expected a,b,c");
      apply_setting(cfg, "a", parts[0]);
      apply_setting(cfg, "b", parts[1]);
      apply_setting(cfg, "c", parts[2]);
    }
    if (!order.empty()) apply_setting(cfg, "order", order);
    if (!ladder.empty()) apply_setting(cfg, "ladder", ladder);
    if (!scan.empty()) apply_setting(cfg, "scan", scan);
    if (!grid.empty()) apply_setting(cfg, "grid_points", grid);
    if (!exact.empty()) apply_setting(cfg, "exact", exact);
    if (!out_path.empty()) apply_setting(cfg, "output_path", out_path);
    if (!format.empty()) apply_setting(cfg, "format", format);
    if (!emit.empty()) apply_setting(cfg, "outputs", emit);
    if (!ladder_tol.empty()) apply_setting(cfg, "ladder_tol", ladder_tol);
    if (!assoc.empty()) apply_setting(cfg, "association_radius", assoc);
    if (parallel) cfg.parallel = true;
    return run(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace idtm::cli
