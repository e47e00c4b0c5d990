#pragma once

// Adomian polynomials A_0..A_n of a nonlinearity f for numeric components
// u_0..u_n.
//
// Production path (Duan's recurrence):
//
//   C_n^1 = u_n,
//   C_n^k = (1/n) * sum_{j=0}^{n-k} (j+1) u_{j+1} C_{n-1-j}^{k-1},  2 <= k <= n,
//   A_0   = f(u_0),
//   A_n   = sum_{k=1}^{n} C_n^k f^(k)(u_0).
//
// Oracle path: A_n is the coefficient of lambda^n in f(sum_m u_m lambda^m),
// computed by lifting f through power series arithmetic.
//
// In the transform solver the components are the coefficients U(0), U(1),
// ... of the unknown solution, and F(k) = A_k is the transform of f(u).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "idtm/errors.hpp"
#include "idtm/nonlinearity.hpp"
#include "idtm/powerseries.hpp"

namespace idtm {

/// Row n (n >= 1) holds C_n^1..C_n^n at indices 0..n-1; row 0 is empty.
using DuanTable = std::vector<std::vector<double>>;

struct AdomianSequence {
  std::vector<double> components;
  DuanTable ctable;
  std::vector<double> polys;
};

/// Builds C_n^k one row at a time. Row m needs u_1..u_m only, so the table
/// can grow as components become known.
class DuanTableBuilder {
 public:
  DuanTableBuilder() : table_(1) {}

  std::size_t rows() const noexcept { return table_.size() - 1; }
  const DuanTable& table() const noexcept { return table_; }

  /// Appends u_m (m = number of components pushed so far) and, for m >= 1,
  /// the table row m.
  const std::vector<double>& push(double u) {
    components_.push_back(u);
    const std::size_t n = components_.size() - 1;
    if (n == 0) return table_[0];
    std::vector<double> row(n, 0.0);
    row[0] = u;
    for (std::size_t k = 2; k <= n; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j <= n - k; ++j) {
        acc += static_cast<double>(j + 1) * components_[j + 1] * table_[n - 1 - j][k - 2];
      }
      row[k - 1] = acc / static_cast<double>(n);
    }
    table_.push_back(std::move(row));
    return table_.back();
  }

 private:
  std::vector<double> components_;
  DuanTable table_;
};

inline DuanTable duan_ctable(std::span<const double> components, std::size_t n) {
  if (components.size() < n + 1) {
    throw UsageError("duan_ctable: need " + std::to_string(n + 1) + " components, got " +
                     std::to_string(components.size()));
  }
  DuanTableBuilder b;
  for (std::size_t m = 0; m <= n; ++m) b.push(components[m]);
  return b.table();
}

/// Incremental A_m generator around a fixed u_0. The derivative values
/// f^(k)(u_0) are computed once, up to `max_n`.
class AdomianGenerator {
 public:
  AdomianGenerator(const Nonlinearity& f, double u0, std::size_t max_n) : max_n_(max_n) {
    const TruncatedSeries t = nl_taylor(f, u0, max_n);
    derivs_.resize(max_n + 1);
    double fact = 1.0;
    for (std::size_t k = 0; k <= max_n; ++k) {
      if (k > 0) fact *= static_cast<double>(k);
      derivs_[k] = fact * t[k];
    }
    builder_.push(u0);
    polys_.push_back(t[0]);
  }

  /// Pushes the next component u_m and returns A_m.
  double push(double u) {
    const std::size_t m = polys_.size();
    if (m > max_n_) throw UsageError("AdomianGenerator: capacity exceeded");
    const std::vector<double>& row = builder_.push(u);
    double acc = 0.0;
    for (std::size_t k = 1; k <= m; ++k) acc += row[k - 1] * derivs_[k];
    polys_.push_back(acc);
    return acc;
  }

  const std::vector<double>& polys() const noexcept { return polys_; }
  const DuanTable& ctable() const noexcept { return builder_.table(); }
  /// f^(k)(u_0) for k = 0..max_n.
  const std::vector<double>& derivatives() const noexcept { return derivs_; }

 private:
  std::size_t max_n_;
  std::vector<double> derivs_;
  DuanTableBuilder builder_;
  std::vector<double> polys_;
};

inline AdomianSequence adomian_sequence(std::span<const double> components, const Nonlinearity& f,
                                        std::size_t n) {
  if (components.size() < n + 1) {
    throw UsageError("adomian_duan: need " + std::to_string(n + 1) + " components, got " +
                     std::to_string(components.size()));
  }
  AdomianGenerator gen(f, components[0], n);
  for (std::size_t m = 1; m <= n; ++m) gen.push(components[m]);
  return AdomianSequence{std::vector<double>(components.begin(), components.begin() + n + 1),
                         gen.ctable(), gen.polys()};
}

/// A_0..A_n by Duan's recurrence.
inline std::vector<double> adomian_duan(std::span<const double> components, const Nonlinearity& f,
                                        std::size_t n) {
  return adomian_sequence(components, f, n).polys;
}

/// A_0..A_n as the lambda-coefficients of f(sum u_m lambda^m). Definitional;
/// used to cross-check adomian_duan.
inline std::vector<double> adomian_oracle(std::span<const double> components,
                                          const Nonlinearity& f, std::size_t n) {
  if (components.size() < n + 1) {
    throw UsageError("adomian_oracle: need " + std::to_string(n + 1) + " components, got " +
                     std::to_string(components.size()));
  }
  const TruncatedSeries s(std::vector<double>(components.begin(), components.begin() + n + 1));
  const TruncatedSeries lifted = nl_lift(f, s);
  return {lifted.coeffs().begin(), lifted.coeffs().end()};
}

}  // namespace idtm
