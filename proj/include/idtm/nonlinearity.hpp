#pragma once

// Right-hand sides f(u) of u'' + (alpha/x) u' = f(u).
//
// Each family is written once, as a composition of power series
// operations. Evaluating it on a series argument gives f(a(t)); on the
// argument u0 + t it gives the Taylor expansion of f about u0, whose k-th
// coefficient is f^(k)(u0)/k!. Scalar evaluation runs the same code on an
// order-0 series, so nl_eval(f, u0) == nl_taylor(f, u0, N)[0] bit for bit.

#include <cmath>
#include <map>
#include <string>
#include <type_traits>
#include <variant>

#include "idtm/errors.hpp"
#include "idtm/powerseries.hpp"

namespace idtm {

/// delta*u/(u + mu): Michaelis-Menten uptake (oxygen diffusion in a cell).
struct MichaelisMenten {
  double delta;
  double mu;
};

/// -l*exp(-l*kappa*u): heat sources in the human head.
struct HeatSource {
  double l;
  double kappa;
};

/// nu*exp(u): thermal explosion.
struct ThermalExplosion {
  double nu;
};

/// -u^gamma: isothermal gas sphere (Emden-Fowler for gamma = 5).
struct PowerLaw {
  double gamma;
};

/// 1/2 - 1/(8 u^2): radial stress on a shallow membrane cap.
struct MembraneCap {};

using NonlinearityFamily =
    std::variant<MichaelisMenten, HeatSource, ThermalExplosion, PowerLaw, MembraneCap>;

using ParamMap = std::map<std::string, double>;

class Nonlinearity {
 public:
  static Nonlinearity michaelis_menten(double delta, double mu) {
    if (!(delta > 0.0) || !(mu > 0.0) || !std::isfinite(delta) || !std::isfinite(mu)) {
      throw UsageError("michaelis_menten: delta and mu must be positive and finite");
    }
    return Nonlinearity(MichaelisMenten{delta, mu});
  }

  static Nonlinearity heat_source(double l, double kappa) {
    if (!(l > 0.0) || !(kappa > 0.0) || !std::isfinite(l) || !std::isfinite(kappa)) {
      throw UsageError("heat_source: l and kappa must be positive and finite");
    }
    return Nonlinearity(HeatSource{l, kappa});
  }

  static Nonlinearity thermal_explosion(double nu) {
    if (!std::isfinite(nu)) throw UsageError("thermal_explosion: nu must be finite");
    return Nonlinearity(ThermalExplosion{nu});
  }

  static Nonlinearity power_law(double gamma) {
    if (!std::isfinite(gamma)) throw UsageError("power_law: gamma must be finite");
    return Nonlinearity(PowerLaw{gamma});
  }

  static Nonlinearity membrane_cap() { return Nonlinearity(MembraneCap{}); }

  /// Builds a family from its configuration name and parameter keys.
  /// Missing or unknown keys are rejected.
  static Nonlinearity from_config(const std::string& family, const ParamMap& params);

  const NonlinearityFamily& family() const noexcept { return family_; }

  /// Configuration name: michaelis_menten, heat_source, ...
  std::string name() const;

  ParamMap params() const;

 private:
  explicit Nonlinearity(NonlinearityFamily f) : family_(f) {}

  NonlinearityFamily family_;
};

namespace detail {

// Integer exponents take the repeated-multiplication path, which is valid
// for any sign of the base.
inline bool is_integer_exponent(double g) {
  return std::floor(g) == g && std::abs(g) <= 1 << 20;
}

inline double require_param(const ParamMap& params, const std::string& family, const char* key) {
  auto it = params.find(key);
  if (it == params.end()) throw UsageError(family + ": missing parameter '" + key + "'");
  return it->second;
}

inline void reject_unknown(const ParamMap& params, const std::string& family,
                           std::initializer_list<const char*> known) {
  for (const auto& [key, value] : params) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw UsageError(family + ": unknown parameter '" + key + "'");
  }
}

}  // namespace detail

inline Nonlinearity Nonlinearity::from_config(const std::string& family, const ParamMap& params) {
  if (family == "michaelis_menten") {
    detail::reject_unknown(params, family, {"delta", "mu"});
    return michaelis_menten(detail::require_param(params, family, "delta"),
                            detail::require_param(params, family, "mu"));
  }
  if (family == "heat_source") {
    detail::reject_unknown(params, family, {"l", "kappa"});
    return heat_source(detail::require_param(params, family, "l"),
                       detail::require_param(params, family, "kappa"));
  }
  if (family == "thermal_explosion") {
    detail::reject_unknown(params, family, {"nu"});
    return thermal_explosion(detail::require_param(params, family, "nu"));
  }
  if (family == "power_law") {
    detail::reject_unknown(params, family, {"gamma"});
    return power_law(detail::require_param(params, family, "gamma"));
  }
  if (family == "membrane_cap") {
    detail::reject_unknown(params, family, {});
    return membrane_cap();
  }
  throw UsageError("unknown nonlinearity family '" + family + "'");
}

inline std::string Nonlinearity::name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MichaelisMenten>) return "michaelis_menten";
        else if constexpr (std::is_same_v<T, HeatSource>) return "heat_source";
        else if constexpr (std::is_same_v<T, ThermalExplosion>) return "thermal_explosion";
        else if constexpr (std::is_same_v<T, PowerLaw>) return "power_law";
        else return "membrane_cap";
      },
      family_);
}

inline ParamMap Nonlinearity::params() const {
  return std::visit(
      [](const auto& f) -> ParamMap {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MichaelisMenten>) return {{"delta", f.delta}, {"mu", f.mu}};
        else if constexpr (std::is_same_v<T, HeatSource>) return {{"l", f.l}, {"kappa", f.kappa}};
        else if constexpr (std::is_same_v<T, ThermalExplosion>) return {{"nu", f.nu}};
        else if constexpr (std::is_same_v<T, PowerLaw>) return {{"gamma", f.gamma}};
        else return {};
      },
      family_);
}

/// f(a(t)) as a truncated series of the same order as `a`.
inline TruncatedSeries nl_lift(const Nonlinearity& f, const TruncatedSeries& a) {
  try {
    return std::visit(
        [&a](const auto& fam) -> TruncatedSeries {
          using T = std::decay_t<decltype(fam)>;
          if constexpr (std::is_same_v<T, MichaelisMenten>) {
            return ps_scale(ps_mul(a, ps_recip(ps_add_scalar(a, fam.mu))), fam.delta);
          } else if constexpr (std::is_same_v<T, HeatSource>) {
            return ps_scale(ps_exp(ps_scale(a, -fam.l * fam.kappa)), -fam.l);
          } else if constexpr (std::is_same_v<T, ThermalExplosion>) {
            return ps_scale(ps_exp(a), fam.nu);
          } else if constexpr (std::is_same_v<T, PowerLaw>) {
            if (detail::is_integer_exponent(fam.gamma)) {
              return ps_scale(ps_powi(a, static_cast<long long>(fam.gamma)), -1.0);
            }
            return ps_scale(ps_pow(a, fam.gamma), -1.0);
          } else {
            return ps_add_scalar(ps_scale(ps_recip(ps_mul(a, a)), -0.125), 0.5);
          }
        },
        f.family());
  } catch (const DomainError& e) {
    throw DomainError(f.name() + ": argument outside domain (" + e.what() + ")");
  }
}

inline double nl_eval(const Nonlinearity& f, double u) {
  return nl_lift(f, TruncatedSeries::constant(u, 0))[0];
}

/// Expansion of f(u0 + t) to the given order; f^(k)(u0) = k! * result[k].
inline TruncatedSeries nl_taylor(const Nonlinearity& f, double u0, std::size_t order) {
  return nl_lift(f, TruncatedSeries::variable(u0, order));
}

}  // namespace idtm
