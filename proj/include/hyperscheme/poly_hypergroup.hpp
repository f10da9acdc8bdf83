#ifndef HYPERSCHEME_POLY_HYPERGROUP_HPP_
#define HYPERSCHEME_POLY_HYPERGROUP_HPP_

// The polynomial hypergroup on N_0 attached to the distance-transitive graph
// Gamma(a, b): linearization coefficients, Haar weights, the orthogonal
// polynomials P_n, their orthogonality measure, and boundary deformations.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "errors.hpp"
#include "rational.hpp"

namespace hyperscheme {

struct DTParams {
  int a = 2;
  int b = 2;

  void validate() const {
    if (a < 2 || b < 2)
      throw Error(ErrorKind::kInvalidInput,
                  "Gamma(a,b) needs a, b >= 2 (got " + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  bool operator==(const DTParams& o) const { return a == o.a && b == o.b; }
};

/// Sparse measure on N_0.
template <typename T>
using SparseMeasure = std::map<std::size_t, T>;

/// Exact linearization coefficients g_{m,n,k} of P_m P_n; only nonzero
/// entries are stored.
inline SparseMeasure<Rational> g_coeffs(std::size_t m, std::size_t n, const DTParams& p) {
  p.validate();
  SparseMeasure<Rational> out;
  if (m == 0 || n == 0) {
    out[std::max(m, n)] = 1;
    return out;
  }
  const std::size_t s = std::min(m, n);
  const std::size_t d = m > n ? m - n : n - m;
  const BigInt a(p.a), b(p.b);
  auto pw = [](const BigInt& base, std::size_t e) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(e));
  };
  auto put = [&](std::size_t k, const Rational& v) {
    if (v != 0) out[k] = v;
  };
  put(m + n, Rational(a - 1, a));
  put(d, Rational(BigInt(1), a * pw(a - 1, s - 1) * pw(b - 1, s)));
  for (std::size_t k = 0; k < s; ++k)
    put(d + 2 * k + 1, Rational(b - 2, a * pw(a - 1, s - k - 1) * pw(b - 1, s - k)));
  for (std::size_t k = 0; k + 1 < s; ++k)
    put(d + 2 * k + 2, Rational(a - 2, a * pw(a - 1, s - k - 1) * pw(b - 1, s - k - 1)));
  return out;
}

/// Haar weight w_0 = 1, w_n = a (a-1)^(n-1) (b-1)^n.
inline BigInt dt_haar(std::size_t n, const DTParams& p) {
  if (n == 0) return 1;
  return BigInt(p.a) * boost::multiprecision::pow(BigInt(p.a - 1), static_cast<unsigned>(n - 1)) *
         boost::multiprecision::pow(BigInt(p.b - 1), static_cast<unsigned>(n));
}

inline double dt_haar_double(std::size_t n, const DTParams& p) {
  if (n == 0) return 1.0;
  return p.a * std::pow(p.a - 1.0, static_cast<double>(n - 1)) * std::pow(p.b - 1.0, static_cast<double>(n));
}

/// Polynomial hypergroup with a table of coefficients for m, n <= cached_degree.
class PolyHypergroup {
 public:
  explicit PolyHypergroup(DTParams params, std::size_t cached_degree = 16) : params_(params) {
    params_.validate();
    cache_.resize(cached_degree + 1);
    for (std::size_t m = 0; m <= cached_degree; ++m)
      for (std::size_t n = 0; n <= cached_degree; ++n) cache_[m].push_back(g_coeffs(m, n, params_));
  }

  const DTParams& params() const { return params_; }

  SparseMeasure<Rational> g(std::size_t m, std::size_t n) const {
    if (m < cache_.size() && n < cache_.size()) return cache_[m][n];
    return g_coeffs(m, n, params_);
  }

  BigInt haar(std::size_t n) const { return dt_haar(n, params_); }

  SparseMeasure<Rational> convolve(const SparseMeasure<Rational>& mu, const SparseMeasure<Rational>& nu) const {
    SparseMeasure<Rational> out;
    for (const auto& [m, wm] : mu)
      for (const auto& [n, wn] : nu)
        for (const auto& [k, c] : g(m, n)) out[k] += wm * wn * c;
    return out;
  }

 private:
  DTParams params_;
  std::vector<std::vector<SparseMeasure<Rational>>> cache_;
};

struct SpecialPoints {
  double s0 = 0.0;
  double s1 = 0.0;
};

inline SpecialPoints special_points(const DTParams& p) {
  p.validate();
  const double a = p.a, b = p.b;
  const double root = 2.0 * std::sqrt((a - 1) * (b - 1));
  return {(2 - a - b) / root, (a * b - a - b + 2) / root};
}

/// P_0, ..., P_n at x via the three-term recurrence.
inline std::vector<double> poly_eval_all(std::size_t n, double x, const DTParams& p) {
  p.validate();
  const double a = p.a, b = p.b;
  std::vector<double> out(n + 1);
  out[0] = 1.0;
  if (n == 0) return out;
  out[1] = (2 / a) * std::sqrt((a - 1) / (b - 1)) * x + (b - 2) / (a * (b - 1));
  const double lower = 1 / (a * (b - 1));
  const double mid = (b - 2) / (a * (b - 1));
  const double upper = (a - 1) / a;
  for (std::size_t k = 1; k < n; ++k)
    out[k + 1] = (out[1] * out[k] - lower * out[k - 1] - mid * out[k]) / upper;
  return out;
}

inline double poly_eval(std::size_t n, double x, const DTParams& p) { return poly_eval_all(n, x, p).back(); }

/// P_n((z + 1/z) / 2) = (c(z) z^n + c(1/z) z^-n) / ((a-1)(b-1))^(n/2).
inline std::complex<double> closed_form_eval(std::size_t n, std::complex<double> z, const DTParams& p) {
  p.validate();
  constexpr double kExclusion = 1e-12;
  if (std::abs(z) < kExclusion || std::abs(z - 1.0) < kExclusion || std::abs(z + 1.0) < kExclusion)
    throw Error(ErrorKind::kDomainError, "closed form is undefined at z in {0, 1, -1}");
  const double a = p.a, b = p.b;
  const double kappa = (b - 2) * std::sqrt(a - 1) / std::sqrt(b - 1);
  auto c = [&](std::complex<double> w) { return ((a - 1) * w - 1.0 / w + kappa) / (a * (w - 1.0 / w)); };
  const double nd = static_cast<double>(n);
  return (c(z) * std::pow(z, nd) + c(1.0 / z) * std::pow(z, -nd)) / std::pow((a - 1) * (b - 1), nd / 2);
}

/// |P_m(x) P_n(x) - sum_k g_{m,n,k} P_k(x)|.
inline double product_formula_residual(std::size_t m, std::size_t n, double x, const DTParams& p) {
  const auto vals = poly_eval_all(m + n, x, p);
  double rhs = 0.0;
  for (const auto& [k, g] : g_coeffs(m, n, p)) rhs += to_double(g) * vals[k];
  return std::abs(vals[m] * vals[n] - rhs);
}

struct OrthoOptions {
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
  /// Error estimates above this (relative to max(1, |I|)) raise QuadratureFailure.
  double accept_tol = 1e-9;
};

/// Integral of f against the normalized orthogonality measure: density
/// (a / 2pi) sqrt(1 - x^2) / ((s1 - x)(x - s0)) on [-1, 1], plus an atom of
/// mass (b - a) / b at s0 when b > a. Uses x = cos(theta).
inline double ortho_measure_integrate(const std::function<double(double)>& f, const DTParams& p,
                                      const OrthoOptions& opt = {}) {
  const auto [s0, s1] = special_points(p);
  const double a = p.a;
  const double pi = boost::math::constants::pi<double>();
  const bool upper_cancels = p.a == 2 && p.b == 2;  // s1 == 1
  const bool lower_cancels = p.a == p.b;              // s0 == -1
  auto integrand = [&](double theta) {
    const double x = std::cos(theta);
    const double half_s = std::sin(theta / 2), half_c = std::cos(theta / 2);
    const double one_minus = 2 * half_s * half_s;  // 1 - x
    const double one_plus = 2 * half_c * half_c;   // 1 + x
    const double up = upper_cancels ? 1.0 : one_minus / (s1 - x);
    const double lo = lower_cancels ? 1.0 : one_plus / (x - s0);
    return a / (2 * pi) * f(x) * up * lo;
  };
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, pi, opt.max_depth, opt.rel_tol, &error);
  if (!std::isfinite(value) || error > opt.accept_tol * std::max(1.0, std::abs(value)))
    throw Error(ErrorKind::kQuadratureFailure, "adaptive quadrature did not converge (error estimate " +
                                                   std::to_string(error) + ")");
  double atom = 0.0;
  if (p.b > p.a) atom = (p.b - p.a) / static_cast<double>(p.b) * f(s0);
  return value + atom;
}

// ---------------------------------------------------------------------------
// Boundary deformation

/// x_c = (e^c r + 1 / (e^c r)) / 2 with r = sqrt((a-1)(b-1)).
inline double deformation_point(double c, const DTParams& p) {
  const double r = std::exp(c) * std::sqrt((p.a - 1.0) * (p.b - 1.0));
  return 0.5 * (r + 1.0 / r);
}

/// Eigenvalue of T_h on v -> e^{c d(v,B)} obtained by summing over the sphere
/// S(v, h) grouped by horocycle offset.
inline double sphere_eigenvalue(std::size_t h, double c, const DTParams& p) {
  if (h == 0) return 1.0;
  const double a = p.a, b = p.b, hd = static_cast<double>(h);
  const double q = (a - 1) * (b - 1);
  double total = std::exp(-c * hd) + std::pow(q, hd) * std::exp(c * hd);
  for (std::size_t k = 0; k < h; ++k)
    total += (b - 2) * std::pow(q, static_cast<double>(k)) * std::exp(c * (2.0 * k + 1 - hd));
  for (std::size_t k = 0; k + 1 < h; ++k)
    total += (a - 2) * (b - 1) * std::pow(q, static_cast<double>(k)) * std::exp(c * (2.0 * k + 2 - hd));
  return total / dt_haar_double(h, p);
}

/// Positive semicharacter alpha0(h) = P_h(x_c) and the deformed hypergroup
/// coefficients alpha0(k) / (alpha0(m) alpha0(n)) g_{m,n,k}.
class DeformedPolyHypergroup {
 public:
  DeformedPolyHypergroup(DTParams params, double c, std::size_t max_degree)
      : params_(params), c_(c), x_c_(deformation_point(c, params)), alpha0_(poly_eval_all(max_degree, x_c_, params)) {}

  const DTParams& params() const { return params_; }
  double c() const { return c_; }
  double x_c() const { return x_c_; }
  std::size_t max_degree() const { return alpha0_.size() - 1; }
  double alpha0(std::size_t h) const { return alpha0_.at(h); }

  SparseMeasure<double> g(std::size_t m, std::size_t n) const {
    if (m + n > max_degree()) throw Error(ErrorKind::kSupportCap, "deformed coefficients beyond cached degree");
    SparseMeasure<double> out;
    for (const auto& [k, v] : g_coeffs(m, n, params_)) out[k] = alpha0_[k] / (alpha0_[m] * alpha0_[n]) * to_double(v);
    return out;
  }

  /// Deformed Haar weight alpha0(n)^2 w_n.
  double haar(std::size_t n) const { return alpha0_.at(n) * alpha0_.at(n) * dt_haar_double(n, params_); }

  SparseMeasure<double> convolve(const SparseMeasure<double>& mu, const SparseMeasure<double>& nu) const {
    SparseMeasure<double> out;
    for (const auto& [m, wm] : mu)
      for (const auto& [n, wn] : nu)
        for (const auto& [k, v] : g(m, n)) out[k] += wm * wn * v;
    return out;
  }

 private:
  DTParams params_;
  double c_;
  double x_c_;
  std::vector<double> alpha0_;
};

}  // namespace hyperscheme

#endif  // HYPERSCHEME_POLY_HYPERGROUP_HPP_
