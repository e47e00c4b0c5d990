// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion K   run criterion K only
//
// Exit status is 0 when every selected criterion passes.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "idtm/cli/config.hpp"
#include "idtm/idtm.hpp"
#include "random_inputs.hpp"

namespace {

using namespace idtm;

struct Check {
  std::string label;
  bool pass;
  std::string detail;
};

class Criterion {
 public:
  void abs(const std::string& label, double got, double want, double tol) {
    const double dev = std::abs(got - want);
    add(label, dev <= tol, fmt("got %.10g, want %.10g, |diff| %.3g <= %.3g", got, want, dev, tol));
  }

  void rel(const std::string& label, double got, double want, double tol) {
    const double dev = std::abs(got - want) / std::abs(want);
    add(label, dev <= tol, fmt("got %.6g, want %.6g, rel %.3g <= %.3g", got, want, dev, tol));
  }

  void le(const std::string& label, double got, double limit) {
    add(label, got <= limit, fmt("%.6g <= %.6g", got, limit));
  }

  void add(const std::string& label, bool pass, const std::string& detail) {
    checks_.push_back({label, pass, detail});
  }

  bool passed() const {
    for (const auto& c : checks_) {
      if (!c.pass) return false;
    }
    return true;
  }

  const std::vector<Check>& checks() const { return checks_; }

  template <typename... Args>
  static std::string fmt(const char* f, Args... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
  }

 private:
  std::vector<Check> checks_;
};

using Clock = std::chrono::steady_clock;

SbvpProblem preset(const std::string& name) {
  cli::RunConfig cfg;
  cli::apply_preset(cfg, name);
  return cfg.problem();
}

SbvpProblem oxygen(double alpha) {
  return SbvpProblem(alpha, Nonlinearity::michaelis_menten(0.76129, 0.03119), 5.0, 1.0, 5.0);
}

const ExactSolution kGas(ExactSolution::Kind::IsothermalGasSphere);
const ExactSolution kThermal(ExactSolution::Kind::ThermalExplosionExact);

SolutionReport solve_with_exact(const SbvpProblem& p, std::size_t order, const ExactSolution& exact) {
  SolveOptions opt;
  opt.exact = exact;
  return solve(p, order, opt);
}

void table_check(Criterion& c, const SbvpProblem& p, const std::array<double, 11>& want) {
  const auto r = solve(p, 12);
  for (std::size_t i = 0; i <= 10; ++i) {
    const double x = static_cast<double>(i) / 10.0;
    c.abs(Criterion::fmt("u(%.1f)", x), ps_eval(r.solution.coeffs, x), want[i], 5e-8);
  }
}

Criterion criterion_1() {
  Criterion c;
  const auto t0 = Clock::now();
  SolveOptions opt;
  opt.scan = ScanRange{0.5, 1.5, 101};
  opt.with_bound = false;
  const auto r = solve(preset("isothermal-gas-sphere"), 10, opt);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  c.abs("beta_10", r.beta(), 1.000553890, 1e-8);
  c.le("runtime [s]", secs, 1.0);
  return c;
}

Criterion criterion_2() {
  Criterion c;
  const auto s = solve(preset("isothermal-gas-sphere"), 10).solution;
  const double want[] = {-0.1671287533, 0.04187483621, -0.01165769154, 0.003407699551, -0.001024576736};
  for (std::size_t j = 0; j < 5; ++j) {
    c.abs(Criterion::fmt("U(%zu)", 2 * j + 2), s.coeffs[2 * j + 2], want[j], 1e-8);
  }
  return c;
}

Criterion criterion_3() {
  Criterion c;
  const auto p = preset("isothermal-gas-sphere");
  const auto r10 = solve_with_exact(p, 10, kGas);
  const auto r12 = solve_with_exact(p, 12, kGas);
  const auto r20 = solve_with_exact(p, 20, kGas);
  c.rel("ME_12", r12.error->ME, 1.6776e-4, 0.02);
  c.rel("ME_20", r20.error->ME, 1.6614e-6, 0.05);
  c.rel("TE_10", r10.bound->TE, 1.5666e-3, 0.10);
  c.rel("TE_12", r12.bound->TE, 4.7721e-4, 0.10);
  return c;
}

Criterion criterion_4() {
  Criterion c;
  const auto p = preset("thermal-explosion");
  c.rel("ME_10", solve_with_exact(p, 10, kThermal).error->ME, 1.0488e-5, 0.02);
  c.rel("ME_20", solve_with_exact(p, 20, kThermal).error->ME, 8.4075e-10, 0.25);
  return c;
}

Criterion criterion_5() {
  Criterion c;
  table_check(c, preset("oxygen-diffusion"),
              {0.8284832870, 0.8297060890, 0.8333747303, 0.8394899106, 0.8480527816, 0.8590649239,
               0.8725283166, 0.8884453023, 0.9068185448, 0.9276509853, 0.9509457960});
  return c;
}

Criterion criterion_6() {
  Criterion c;
  c.rel("MER_{12,2}", solve(oxygen(2.0), 12).residual.MER, 1.8267e-7, 0.05);
  c.rel("MER_{12,3}", solve(oxygen(3.0), 12).residual.MER, 2.4065e-8, 0.05);
  for (double alpha : {1.0, 2.0, 3.0}) {
    const auto p = oxygen(alpha);
    const double beta = solve(p, 12).beta();
    std::vector<double> mer;
    std::ostringstream seq;
    for (std::size_t n = 2; n <= 12; n += 2) {
      const auto s = solve_near(p, n, beta, ScanRange{});
      mer.push_back(residual(s, open_unit_grid(1001)).MER);
      seq << (n > 2 ? " " : "") << Criterion::fmt("%.3g", mer.back());
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < mer.size(); ++i) decreasing = decreasing && mer[i] < mer[i - 1];
    c.add(Criterion::fmt("MER_{N,%g} decreasing", alpha), decreasing, seq.str());
  }
  return c;
}

Criterion criterion_7() {
  Criterion c;
  table_check(c, preset("human-head"),
              {0.3675167997, 0.3663623137, 0.3628940507, 0.3570975301, 0.3489484049, 0.3384121330,
               0.3254435063, 0.3099860240, 0.2919710864, 0.2713169936, 0.2479277073});
  table_check(c, preset("human-head-case-two"),
              {1.147039019, 1.146509642, 1.144920502, 1.142268563, 1.138548748, 1.133753904,
               1.127874756, 1.120899860, 1.112815520, 1.103605704, 1.093251944});
  return c;
}

Criterion criterion_8() {
  Criterion c;
  const auto r = solve(preset("membrane-cap"), 10);
  const double want[] = {0.9541353070, 0.04533672772, 0.5436871104e-3, -0.1611538997e-4,
                         0.3997114810e-6, -0.6144814593e-8};
  for (std::size_t j = 0; j < 6; ++j) {
    c.abs(Criterion::fmt("U(%zu)", 2 * j), r.solution.coeffs[2 * j], want[j], 1e-8);
  }
  c.le("MER_10", r.residual.MER, 1e-7);
  return c;
}

Criterion criterion_9() {
  Criterion c;
  testing::Gen g(20140701);

  double oracle_dev = 0.0;
  for (const auto& f : testing::example_families()) {
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = g.index(1, 12);
      const auto u = g.components(n);
      oracle_dev = std::max(oracle_dev,
                            testing::relative_deviation(adomian_duan(u, f, n), adomian_oracle(u, f, n)));
    }
  }
  c.le("Adomian Duan vs oracle, max rel deviation", oracle_dev, 1e-9);

  auto dev = [](const TruncatedSeries& x, const TruncatedSeries& y) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
  };
  double ring = 0.0, trip = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = g.index(0, 20);
    const auto a = g.series(n), b = g.series(n), d = g.series(n);
    ring = std::max({ring, dev(a + b, b + a), dev(a * b, b * a), dev((a * b) * d, a * (b * d)),
                     dev(a * (b + d), a * b + a * d)});
    const auto pos = ps_add_scalar(g.series(n, -0.3, 0.3), 1.0);
    const double p = g.uniform(0.5, 2.0);
    trip = std::max({trip, dev(pos * ps_recip(pos), TruncatedSeries::one(n)),
                     dev(ps_ln(ps_exp(a)), a), dev(ps_pow(ps_pow(pos, p), 1.0 / p), pos)});
  }
  c.le("power series ring identities", ring, 1e-10);
  c.le("power series round trips", trip, 1e-10);

  bool odd_zero = true;
  double defect = 0.0;
  for (const auto& name : cli::preset_names()) {
    const auto s = solve(preset(name), 12).solution;
    for (std::size_t k = 1; k <= 12; k += 2) odd_zero = odd_zero && s.coeffs[k] == 0.0;
    double scale = 0.0;
    for (double v : s.coeffs.coeffs()) scale = std::max(scale, std::abs(v));
    const auto d = ode_defect(s);
    for (std::size_t k = 0; k + 1 < s.order; ++k) defect = std::max(defect, std::abs(d[k]) / scale);
  }
  c.add("odd coefficients exactly zero on every preset", odd_zero, "");
  c.le("ODE defect, max rel coefficient", defect, 1e-10);

  bool dominates = true;
  std::ostringstream margins;
  for (const auto& [name, exact] :
       {std::pair{"isothermal-gas-sphere", kGas}, std::pair{"thermal-explosion", kThermal}}) {
    for (std::size_t n : {6u, 8u, 10u, 12u}) {
      const auto r = solve_with_exact(preset(name), n, exact);
      dominates = dominates && r.bound->TE >= r.error->ME;
      margins << Criterion::fmt(" %.2f", r.bound->TE / r.error->ME);
    }
  }
  c.add("TE >= ME, gas sphere and thermal explosion, N = 6..12", dominates, "TE/ME:" + margins.str());
  return c;
}

std::string capture(const std::string& cmd, int* status) {
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) {
    *status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = ::pclose(pipe);
  *status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

Criterion criterion_10() {
  Criterion c;
  const std::string cmd =
      std::string("'") + IDTM_CLI_PATH + "' solve --preset oxygen-diffusion --format csv 2>/dev/null";
  int s1 = 0, s2 = 0;
  const std::string a = capture(cmd, &s1);
  const std::string b = capture(cmd, &s2);
  c.add("two runs byte-identical", !a.empty() && a == b,
        Criterion::fmt("%zu and %zu bytes, exit codes %d and %d", a.size(), b.size(), s1, s2));
  return c;
}

const std::vector<std::function<Criterion()>> kCriteria{
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

const char* const kTitles[] = {
    "gas sphere shooting parameter", "gas sphere coefficients",  "gas sphere errors",
    "thermal explosion errors",      "oxygen diffusion solution", "oxygen diffusion residuals",
    "human head solutions",          "membrane cap coefficients and residual",
    "property suite",                "determinism"};

bool run_criterion(std::size_t k) {
  bool pass = false;
  std::ostringstream lines;
  try {
    const auto t0 = Clock::now();
    const Criterion c = kCriteria[k - 1]();
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    pass = c.passed();
    for (const auto& check : c.checks()) {
      lines << "    [" << (check.pass ? "ok" : "FAIL") << "] " << check.label;
      if (!check.detail.empty()) lines << ": " << check.detail;
      lines << '\n';
    }
    lines << Criterion::fmt("    (%.2f s)\n", secs);
  } catch (const std::exception& e) {
    lines << "    exception: " << e.what() << '\n';
  }
  std::cout << "criterion " << k << " (" << kTitles[k - 1] << "): " << (pass ? "PASS" : "FAIL") << '\n'
            << lines.str() << std::flush;
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      const long k = std::strtol(argv[++i], nullptr, 10);
      if (k < 1 || k > static_cast<long>(kCriteria.size())) {
        std::cerr << "criterion must be in 1.." << kCriteria.size() << '\n';
        return 64;
      }
      selected.push_back(static_cast<std::size_t>(k));
    } else {
      std::cerr << "usage: acceptance [--criterion K]...\n";
      return 64;
    }
  }
  if (selected.empty()) {
    for (std::size_t k = 1; k <= kCriteria.size(); ++k) selected.push_back(k);
  }
  bool all = true;
  for (std::size_t k : selected) all = run_criterion(k) && all;
  return all ? 0 : 1;
}
