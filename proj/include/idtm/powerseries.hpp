#pragma once

// Truncated power series over double.
//
// A TruncatedSeries holds c_0..c_N, the coefficients of t^0..t^N. Binary
// operations require equal orders; nothing is padded implicitly. Every
// operation that returns normally yields finite coefficients.
//
// The transcendental maps (recip, exp, pow, ln) use the classic O(N^2)
// recurrences obtained from the differential equation each map satisfies,
// e.g. b = a^p solves a*b' = p*a'*b.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "idtm/errors.hpp"

namespace idtm {

/// Constant terms with magnitude below this are treated as zero by the
/// operations that divide by them.
inline constexpr double kSingularityFloor = 1e-300;

class TruncatedSeries {
 public:
  /// Zero series of the given order.
  explicit TruncatedSeries(std::size_t order = 0) : coeffs_(order + 1, 0.0) {}

  explicit TruncatedSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    validate();
  }

  TruncatedSeries(std::initializer_list<double> coeffs) : coeffs_(coeffs) { validate(); }

  static TruncatedSeries constant(double value, std::size_t order) {
    TruncatedSeries s(order);
    s.coeffs_[0] = value;
    s.check_finite("constant");
    return s;
  }

  static TruncatedSeries one(std::size_t order) { return constant(1.0, order); }

  /// value + t, i.e. the identity map recentred at `value`.
  static TruncatedSeries variable(double value, std::size_t order) {
    TruncatedSeries s = constant(value, order);
    if (order >= 1) s.coeffs_[1] = 1.0;
    return s;
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  double operator[](std::size_t k) const { return coeffs_[k]; }
  double at(std::size_t k) const { return coeffs_.at(k); }

  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// Copy truncated (or zero-extended) to a new order.
  TruncatedSeries with_order(std::size_t order) const {
    std::vector<double> c(order + 1, 0.0);
    for (std::size_t k = 0; k <= std::min(order, this->order()); ++k) c[k] = coeffs_[k];
    return TruncatedSeries(std::move(c));
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  /// Wraps computed coefficients; a non-finite entry is reported against
  /// the producing operation `op`.
  static TruncatedSeries checked(std::vector<double> coeffs, const char* op) {
    TruncatedSeries s(0);
    s.coeffs_ = std::move(coeffs);
    if (s.coeffs_.empty()) throw UsageError(std::string(op) + ": empty coefficient list");
    s.check_finite(op);
    return s;
  }

 private:
  void validate() const {
    if (coeffs_.empty()) throw UsageError("TruncatedSeries: coefficient list must be non-empty");
    check_finite("construction");
  }

  void check_finite(const char* where) const {
    for (double c : coeffs_) {
      if (!std::isfinite(c)) throw RangeError(std::string("non-finite coefficient after ") + where);
    }
  }

  std::vector<double> coeffs_;
};

namespace detail {

inline void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (a.order() != b.order()) {
    throw UsageError(std::string(op) + ": order mismatch (" + std::to_string(a.order()) + " vs " +
                     std::to_string(b.order()) + ")");
  }
}

}  // namespace detail

inline TruncatedSeries ps_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b, "ps_add");
  std::vector<double> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] + b[k];
  return TruncatedSeries::checked(std::move(c), "ps_add");
}

inline TruncatedSeries ps_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b, "ps_sub");
  std::vector<double> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a[k] - b[k];
  return TruncatedSeries::checked(std::move(c), "ps_sub");
}

inline TruncatedSeries ps_scale(const TruncatedSeries& a, double s) {
  std::vector<double> c(a.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = s * a[k];
  return TruncatedSeries::checked(std::move(c), "ps_scale");
}

/// a + s (shifts the constant term only).
inline TruncatedSeries ps_add_scalar(const TruncatedSeries& a, double s) {
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  c[0] += s;
  return TruncatedSeries::checked(std::move(c), "ps_add_scalar");
}

/// Cauchy product truncated at the common order.
inline TruncatedSeries ps_mul(const TruncatedSeries& a, const TruncatedSeries& b) {
  detail::require_same_order(a, b, "ps_mul");
  const std::size_t n = a.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m <= k; ++m) acc += a[m] * b[k - m];
    c[k] = acc;
  }
  return TruncatedSeries::checked(std::move(c), "ps_mul");
}

inline TruncatedSeries ps_recip(const TruncatedSeries& a) {
  if (!(std::abs(a[0]) >= kSingularityFloor)) {
    throw SingularityError("ps_recip: constant term is zero (|a0| below 1e-300)");
  }
  const std::size_t n = a.size();
  std::vector<double> b(n, 0.0);
  b[0] = 1.0 / a[0];
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += a[j] * b[k - j];
    b[k] = -acc / a[0];
  }
  return TruncatedSeries::checked(std::move(b), "ps_recip");
}

inline TruncatedSeries ps_exp(const TruncatedSeries& a) {
  const double e0 = std::exp(a[0]);
  if (!std::isfinite(e0)) throw RangeError("ps_exp: exp(a0) overflows");
  const std::size_t n = a.size();
  std::vector<double> b(n, 0.0);
  b[0] = e0;
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * b[k - j];
    b[k] = acc / static_cast<double>(k);
  }
  return TruncatedSeries::checked(std::move(b), "ps_exp");
}

/// a^p for real p; requires a0 > 0. See ps_powi for integer powers of
/// series with arbitrary constant term.
inline TruncatedSeries ps_pow(const TruncatedSeries& a, double p) {
  if (!(a[0] > 0.0)) throw DomainError("ps_pow: constant term must be positive");
  if (!std::isfinite(p)) throw DomainError("ps_pow: exponent must be finite");
  const std::size_t n = a.size();
  std::vector<double> b(n, 0.0);
  b[0] = std::pow(a[0], p);
  if (!std::isfinite(b[0])) throw RangeError("ps_pow: a0^p overflows");
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      acc += ((p + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * b[k - j];
    }
    b[k] = acc / (static_cast<double>(k) * a[0]);
  }
  return TruncatedSeries::checked(std::move(b), "ps_pow");
}

/// a^e for integer e by repeated squaring. Negative e goes through
/// ps_recip and therefore needs a0 != 0.
inline TruncatedSeries ps_powi(const TruncatedSeries& a, long long e) {
  TruncatedSeries base = e < 0 ? ps_recip(a) : a;
  unsigned long long m = e < 0 ? static_cast<unsigned long long>(-(e + 1)) + 1ULL
                               : static_cast<unsigned long long>(e);
  TruncatedSeries result = TruncatedSeries::one(a.order());
  while (m > 0) {
    if (m & 1ULL) result = ps_mul(result, base);
    m >>= 1U;
    if (m > 0) base = ps_mul(base, base);
  }
  return result;
}

inline TruncatedSeries ps_ln(const TruncatedSeries& a) {
  if (!(a[0] > 0.0)) throw DomainError("ps_ln: constant term must be positive");
  const std::size_t n = a.size();
  std::vector<double> b(n, 0.0);
  b[0] = std::log(a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t j = 1; j < k; ++j) acc += static_cast<double>(j) * b[j] * a[k - j];
    b[k] = (a[k] - acc / static_cast<double>(k)) / a[0];
  }
  return TruncatedSeries::checked(std::move(b), "ps_ln");
}

/// Horner evaluation of sum c_k x^k.
inline double ps_eval(const TruncatedSeries& a, double x) {
  double acc = 0.0;
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
  return acc;
}

inline double ps_eval(std::span<const double> c, double x) {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

/// d/dt; the result has order N-1.
inline TruncatedSeries ps_deriv(const TruncatedSeries& a) {
  if (a.order() < 1) throw UsageError("ps_deriv: order-0 series has no representable derivative");
  std::vector<double> c(a.order());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = static_cast<double>(k + 1) * a[k + 1];
  return TruncatedSeries::checked(std::move(c), "ps_deriv");
}

/// Coefficients of the same polynomial re-expanded about t = h (Taylor
/// shift by repeated synthetic division).
inline TruncatedSeries ps_recenter(const TruncatedSeries& a, double h) {
  std::vector<double> c(a.coeffs().begin(), a.coeffs().end());
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t k = n - 1; k-- > i;) c[k] += h * c[k + 1];
  }
  return TruncatedSeries::checked(std::move(c), "ps_recenter");
}

inline TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return ps_add(a, b); }
inline TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return ps_sub(a, b); }
inline TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) { return ps_mul(a, b); }
inline TruncatedSeries operator*(double s, const TruncatedSeries& a) { return ps_scale(a, s); }
inline TruncatedSeries operator+(const TruncatedSeries& a, double s) { return ps_add_scalar(a, s); }
inline TruncatedSeries operator-(const TruncatedSeries& a) { return ps_scale(a, -1.0); }

}  // namespace idtm
