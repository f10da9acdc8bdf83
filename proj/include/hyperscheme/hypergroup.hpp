#ifndef HYPERSCHEME_HYPERGROUP_HPP_
#define HYPERSCHEME_HYPERGROUP_HPP_

// Finite hypergroups given by a convolution tensor of point measures.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"
#include "scheme.hpp"

namespace hyperscheme {

template <typename T>
struct FiniteHypergroup {
  std::size_t identity = 0;
  std::vector<std::size_t> involution;
  /// conv(i, j, k) = (delta_i * delta_j)({k}).
  Tensor3<T> conv;
  /// Set when the hypergroup comes from a (generalized) association scheme.
  bool scheme_derived = false;

  std::size_t size() const { return conv.size(); }
  const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return conv(i, j, k); }

  /// Convolution of two finitely supported measures on D.
  std::vector<T> convolve(const std::vector<T>& mu, const std::vector<T>& nu) const {
    const std::size_t n = size();
    std::vector<T> out(n, T(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (mu[i] == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (nu[j] == T(0)) continue;
        const T w = mu[i] * nu[j];
        for (std::size_t k = 0; k < n; ++k)
          if (conv(i, j, k) != T(0)) out[k] += w * conv(i, j, k);
      }
    }
    return out;
  }

  std::vector<T> point(std::size_t i) const {
    std::vector<T> out(size(), T(0));
    out[i] = T(1);
    return out;
  }
};

template <typename To, typename From>
FiniteHypergroup<To> convert(const FiniteHypergroup<From>& h) {
  return FiniteHypergroup<To>{h.identity, h.involution, convert<To>(h.conv), h.scheme_derived};
}

struct HypergroupReport {
  bool commutative = false;
  bool symmetric = false;
};

template <typename T>
bool is_commutative(const FiniteHypergroup<T>& h, double tol = kEqualityTol) {
  const std::size_t n = h.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!approx_equal(h(i, j, k), h(j, i, k), tol)) return false;
  return true;
}

/// Checks the hypergroup axioms. Witness layouts: probability (i, j[, k]);
/// identity (x, k); involution support (x, y); involution compatibility
/// (x, y, k); associativity (i, j, l, k).
template <typename T>
Outcome<HypergroupReport> verify_hypergroup(const FiniteHypergroup<T>& h, double tol = kEqualityTol) {
  const std::size_t n = h.size();
  if (n == 0) throw Error(ErrorKind::kInvalidInput, "hypergroup is empty");
  if (h.identity >= n || h.involution.size() != n)
    throw Error(ErrorKind::kInvalidInput, "identity or involution has wrong shape");
  for (auto v : h.involution)
    if (v >= n) throw Error(ErrorKind::kInvalidInput, "involution index out of range");
  auto w = [](std::size_t v) { return static_cast<std::int64_t>(v); };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T total(0);
      for (std::size_t k = 0; k < n; ++k) {
        if (below(h(i, j, k), tol))
          return AxiomViolation{Axiom::kHgProbability, "negative convolution coefficient",
                                {w(i), w(j), w(k)}};
        total += h(i, j, k);
      }
      if (!approx_equal(total, T(1), tol))
        return AxiomViolation{Axiom::kHgProbability, "product of point measures has mass != 1",
                              {w(i), w(j)}};
    }

  const std::size_t e = h.identity;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < n; ++k) {
      const T want(x == k ? 1 : 0);
      if (!approx_equal(h(x, e, k), want, tol) || !approx_equal(h(e, x, k), want, tol))
        return AxiomViolation{Axiom::kHgIdentity, "delta_e is not neutral", {w(x), w(k)}};
    }

  for (std::size_t x = 0; x < n; ++x)
    if (h.involution[h.involution[x]] != x)
      return AxiomViolation{Axiom::kHgInvolutionCompat, "involution is not involutive", {w(x), 0, 0}};
  if (h.involution[e] != e)
    return AxiomViolation{Axiom::kHgInvolutionCompat, "identity is not self-adjoint", {w(e), 0, 0}};

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool charged = is_exact_v<T> ? h(x, y, e) > T(0) : to_double(h(x, y, e)) > tol;
      if (charged != (y == h.involution[x]))
        return AxiomViolation{Axiom::kHgInvolutionSupport,
                              charged ? "e in supp(x*y) for y != x-bar" : "e not in supp(x*x-bar)",
                              {w(x), w(y)}};
    }

  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t k = 0; k < n; ++k)
        if (!approx_equal(h(x, y, k), h(h.involution[y], h.involution[x], h.involution[k]), tol))
          return AxiomViolation{Axiom::kHgInvolutionCompat, "(x*y)^- != y-bar * x-bar",
                                {w(x), w(y), w(k)}};

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto ij = h.convolve(h.point(i), h.point(j));
      for (std::size_t l = 0; l < n; ++l) {
        const auto lhs = h.convolve(ij, h.point(l));
        const auto rhs = h.convolve(h.point(i), h.convolve(h.point(j), h.point(l)));
        for (std::size_t k = 0; k < n; ++k)
          if (!approx_equal(lhs[k], rhs[k], tol))
            return AxiomViolation{Axiom::kHgAssociativity, "(i*j)*l != i*(j*l)",
                                  {w(i), w(j), w(l), w(k)}};
      }
    }

  HypergroupReport report;
  report.commutative = is_commutative(h, tol);
  report.symmetric = true;
  for (std::size_t x = 0; x < n; ++x) report.symmetric = report.symmetric && h.involution[x] == x;
  return report;
}

/// c(i, j, k) = w_k / (w_i w_j) * p_{i,j}^k, exact.
inline FiniteHypergroup<Rational> from_scheme(const AssociationScheme& s) {
  const std::size_t d = s.n_relations();
  FiniteHypergroup<Rational> h;
  h.identity = 0;
  h.involution = s.involution;
  h.conv = Tensor3<Rational>(d);
  h.scheme_derived = true;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (s.p(i, j, k) != 0)
          h.conv(i, j, k) = Rational(s.valency[k] * s.p(i, j, k), s.valency[i] * s.valency[j]);
  return h;
}

/// Hypergroup whose convolution is the deformed intersection tensor.
template <typename T>
FiniteHypergroup<T> from_generalized(const GeneralizedVerification<T>& v) {
  FiniteHypergroup<T> h;
  h.identity = 0;
  h.involution = v.scheme.involution;
  h.conv = v.coefficients;
  h.scheme_derived = true;
  return h;
}

template <typename T>
struct HaarWeights {
  std::vector<T> left;
  std::vector<T> right;
  bool unimodular = false;
  /// max_z |sum_y w(y) c(x, y, z) - w(z)| (left) resp. c(y, x, z) (right).
  double left_invariance_residual = 0.0;
  double right_invariance_residual = 0.0;
};

template <typename T>
HaarWeights<T> haar(const FiniteHypergroup<T>& h, double tol = kEqualityTol) {
  const std::size_t n = h.size();
  HaarWeights<T> out;
  out.left.resize(n);
  out.right.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t xb = h.involution[x];
    out.left[x] = T(1) / h(xb, x, h.identity);
    out.right[x] = T(1) / h(x, xb, h.identity);
  }
  out.unimodular = true;
  for (std::size_t x = 0; x < n; ++x)
    out.unimodular = out.unimodular && approx_equal(out.left[x], out.right[x], tol);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) {
      T l(0), r(0);
      for (std::size_t y = 0; y < n; ++y) {
        l += out.left[y] * h(x, y, z);
        r += out.right[y] * h(y, x, z);
      }
      out.left_invariance_residual = std::max(out.left_invariance_residual, abs_diff(l, out.left[z]));
      out.right_invariance_residual =
          std::max(out.right_invariance_residual, abs_diff(r, out.right[z]));
    }
  return out;
}

/// max |alpha(i) alpha(j) - sum_k c(i, j, k) alpha(k)|.
template <typename T>
double multiplicativity_residual(const FiniteHypergroup<T>& h, const std::vector<T>& alpha) {
  const std::size_t n = h.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T rhs(0);
      for (std::size_t k = 0; k < n; ++k) rhs += h(i, j, k) * alpha[k];
      worst = std::max(worst, abs_diff(alpha[i] * alpha[j], rhs));
    }
  return worst;
}

/// c~(i, j, k) = alpha0(k) / (alpha0(i) alpha0(j)) c(i, j, k) for a strictly
/// positive semicharacter alpha0.
template <typename T>
FiniteHypergroup<T> semicharacter_deform(const FiniteHypergroup<T>& h, const std::vector<T>& alpha0,
                                         double tol = kEqualityTol) {
  const std::size_t n = h.size();
  if (alpha0.size() != n) throw Error(ErrorKind::kInvalidInput, "alpha0 has wrong length");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      T total(0);
      for (std::size_t k = 0; k < n; ++k) total += h(i, j, k);
      if (!approx_equal(total, T(1), tol))
        throw Error(ErrorKind::kInvalidInput,
                    "convolution row (" + std::to_string(i) + "," + std::to_string(j) +
                        ") does not sum to 1; the tensor is not a closed hypergroup");
    }
  for (std::size_t i = 0; i < n; ++i)
    if (!(alpha0[i] > T(0)))
      throw Error(ErrorKind::kNotASemicharacter, "alpha0 is not strictly positive at " + std::to_string(i));
  if (!approx_equal(alpha0[h.identity], T(1), tol))
    throw Error(ErrorKind::kNotASemicharacter, "alpha0(e) != 1");
  for (std::size_t i = 0; i < n; ++i)
    if (!approx_equal(alpha0[i], alpha0[h.involution[i]], tol))
      throw Error(ErrorKind::kNotASemicharacter, "alpha0(x-bar) != alpha0(x) at " + std::to_string(i));
  const double residual = multiplicativity_residual(h, alpha0);
  if (is_exact_v<T> ? residual != 0.0 : residual > tol)
    throw Error(ErrorKind::kNotASemicharacter,
                "multiplicativity residual " + std::to_string(residual));

  FiniteHypergroup<T> out = h;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out.conv(i, j, k) = alpha0[k] / (alpha0[i] * alpha0[j]) * h(i, j, k);
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_HYPERGROUP_HPP_
