#ifndef HYPERSCHEME_CHARACTERS_HPP_
#define HYPERSCHEME_CHARACTERS_HPP_

// Character tables of finite commutative hypergroups, Fourier/Plancherel
// analysis, positive definiteness, and the dual convolution.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "hypergroup.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace hyperscheme {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

struct CharacterTable {
  /// chars[a][x] = alpha_a(x); row 0 is the trivial character.
  std::vector<ComplexVector> chars;
  /// Haar weights with haar[e] = 1.
  std::vector<double> haar;
  std::vector<double> plancherel;
  FiniteHypergroup<double> hypergroup;
  std::uint64_t seed = 0;
  int attempts = 0;
  double multiplicativity_residual = 0.0;
  /// |sum_a plancherel[a] - 1|.
  double parseval_residual = 0.0;

  std::size_t size() const { return chars.size(); }
};

namespace detail {

inline double max_multiplicativity_residual(const FiniteHypergroup<double>& h, const ComplexVector& a) {
  const std::size_t n = h.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex rhs(0.0);
      for (std::size_t k = 0; k < n; ++k) rhs += h(i, j, k) * a[k];
      worst = std::max(worst, std::abs(a[i] * a[j] - rhs));
    }
  return worst;
}

inline bool lex_greater(const ComplexVector& a, const ComplexVector& b) {
  constexpr double kTieTol = 1e-9;
  if (a.size() > 1 && std::abs(a[1].real() - b[1].real()) > kTieTol) return a[1].real() > b[1].real();
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (std::abs(a[x].real() - b[x].real()) > kTieTol) return a[x].real() > b[x].real();
    if (std::abs(a[x].imag() - b[x].imag()) > kTieTol) return a[x].imag() > b[x].imag();
  }
  return false;
}

inline Complex clean(Complex z) {
  constexpr double kSnap = 1e-13;
  return {std::abs(z.real()) < kSnap ? 0.0 : z.real(), std::abs(z.imag()) < kSnap ? 0.0 : z.imag()};
}

}  // namespace detail

/// Characters as joint right eigenvectors of M_i(j, k) = c(i, j, k). A random
/// convex combination of the M_i is diagonalized; near-degenerate spectra
/// (gap < 1e-8) are retried up to 5 times with fresh weights.
inline CharacterTable characters(const FiniteHypergroup<double>& h, std::uint64_t seed = 0) {
  const std::size_t n = h.size();
  if (!is_commutative(h)) throw Error(ErrorKind::kNotCommutative, "character table needs a commutative hypergroup");
  using CMat = Eigen::MatrixXcd;
  std::vector<Eigen::MatrixXd> m(n, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) m[i](j, k) = h(i, j, k);

  constexpr int kMaxAttempts = 6;
  constexpr double kGapTol = 1e-8;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  CharacterTable table;
  table.seed = seed;
  table.hypergroup = h;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    table.attempts = attempt;
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& v : w) total += (v = unif(rng) + 1e-3);
    Eigen::MatrixXd mw = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) mw += (w[i] / total) * m[i];

    Eigen::ComplexEigenSolver<CMat> solver(mw.cast<Complex>());
    if (solver.info() != Eigen::Success) continue;
    const auto& ev = solver.eigenvalues();
    double gap = n > 1 ? std::numeric_limits<double>::infinity() : 1.0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) gap = std::min(gap, std::abs(ev(a) - ev(b)));
    if (gap < kGapTol) continue;

    std::vector<ComplexVector> chars;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      Eigen::VectorXcd v = solver.eigenvectors().col(static_cast<Eigen::Index>(a));
      const Complex ve = v(static_cast<Eigen::Index>(h.identity));
      if (std::abs(ve) < 1e-12) {
        ok = false;
        break;
      }
      v /= ve;
      // One step of inverse iteration against M_w sharpens the eigenvector.
      CMat shifted = mw.cast<Complex>() - (ev(static_cast<Eigen::Index>(a)) + Complex(1e-11, 0)) *
                                              CMat::Identity(n, n);
      Eigen::VectorXcd refined = shifted.fullPivLu().solve(v);
      const Complex re = refined(static_cast<Eigen::Index>(h.identity));
      if (refined.allFinite() && std::abs(re) > 1e-300) v = refined / re;
      ComplexVector alpha(n);
      for (std::size_t i = 0; i < n; ++i) alpha[i] = v(static_cast<Eigen::Index>(i));
      alpha[h.identity] = 1.0;
      for (auto& z : alpha) z = detail::clean(z);
      chars.push_back(std::move(alpha));
    }
    if (!ok) continue;
    std::stable_sort(chars.begin(), chars.end(), detail::lex_greater);
    table.chars = std::move(chars);
    break;
  }
  if (table.chars.size() != n)
    throw Error(ErrorKind::kDegenerateSpectrum,
                "joint diagonalization failed after " + std::to_string(kMaxAttempts) + " attempts");

  for (const auto& a : table.chars)
    table.multiplicativity_residual =
        std::max(table.multiplicativity_residual, detail::max_multiplicativity_residual(h, a));

  table.haar.resize(n);
  for (std::size_t x = 0; x < n; ++x) table.haar[x] = 1.0 / h(h.involution[x], x, h.identity);
  double mass = 0.0;
  for (const auto& a : table.chars) {
    double norm = 0.0;
    for (std::size_t x = 0; x < n; ++x) norm += table.haar[x] * std::norm(a[x]);
    table.plancherel.push_back(1.0 / norm);
    mass += table.plancherel.back();
  }
  table.parseval_residual = std::abs(mass - 1.0);
  return table;
}

inline CharacterTable characters(const FiniteHypergroup<Rational>& h, std::uint64_t seed = 0) {
  return characters(convert<double>(h), seed);
}

/// f^(alpha) = sum_x f(x) conj(alpha(x)) w(x).
inline ComplexVector fourier(const ComplexVector& f, const CharacterTable& t) {
  const std::size_t n = t.haar.size();
  if (f.size() != n) throw Error(ErrorKind::kInvalidInput, "function has wrong length");
  ComplexVector out(t.size());
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t x = 0; x < n; ++x) out[a] += f[x] * std::conj(t.chars[a][x]) * t.haar[x];
  return out;
}

/// mu^v(x) = sum_alpha mu(alpha) alpha(x).
inline ComplexVector inverse_fourier(const ComplexVector& mu, const CharacterTable& t) {
  const std::size_t n = t.haar.size();
  if (mu.size() != t.size()) throw Error(ErrorKind::kInvalidInput, "measure has wrong length");
  ComplexVector out(n);
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t x = 0; x < n; ++x) out[x] += mu[a] * t.chars[a][x];
  return out;
}

struct PositiveDefiniteResult {
  bool positive_definite = false;
  /// f = sum_alpha mu(alpha) alpha.
  ComplexVector mu;
  /// Gram matrix F(k, l) = sum_m c(k, l-bar, m) f(m).
  bool gram_hermitian = false;
  double gram_min_eig = 0.0;
  bool gram_psd = false;
};

inline PositiveDefiniteResult positive_definite_check(const ComplexVector& f, const CharacterTable& t) {
  const auto& h = t.hypergroup;
  const std::size_t n = h.size();
  PositiveDefiniteResult out;
  out.mu = fourier(f, t);
  for (std::size_t a = 0; a < t.size(); ++a) out.mu[a] = detail::clean(out.mu[a] * t.plancherel[a]);
  out.positive_definite = true;
  for (const auto& m : out.mu)
    out.positive_definite = out.positive_definite && m.real() >= -kEqualityTol &&
                            std::abs(m.imag()) <= kEqualityTol;

  Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      Complex s(0.0);
      for (std::size_t m = 0; m < n; ++m) s += h(k, h.involution[l], m) * f[m];
      gram(k, l) = s;
    }
  out.gram_hermitian = (gram - gram.adjoint()).cwiseAbs().maxCoeff() <= kEqualityTol;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (gram + gram.adjoint()));
  out.gram_min_eig = solver.eigenvalues().minCoeff();
  out.gram_psd = out.gram_hermitian && out.gram_min_eig >= kEigenFloor;
  return out;
}

struct DualConvolution {
  /// (delta_alpha *^ delta_beta)({gamma}).
  ComplexVector coeffs;
  double mass_residual = 0.0;
  double min_real = 0.0;
  double max_imag = 0.0;
};

/// n_gamma = pi(gamma) sum_x w(x) alpha(x) beta(x) conj(gamma(x)).
inline DualConvolution dual_convolution(const CharacterTable& t, std::size_t a, std::size_t b) {
  if (a >= t.size() || b >= t.size()) throw Error(ErrorKind::kInvalidInput, "character index out of range");
  const std::size_t n = t.haar.size();
  DualConvolution out;
  out.coeffs.resize(t.size());
  Complex mass(0.0);
  out.min_real = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < t.size(); ++g) {
    Complex s(0.0);
    for (std::size_t x = 0; x < n; ++x)
      s += t.haar[x] * t.chars[a][x] * t.chars[b][x] * std::conj(t.chars[g][x]);
    out.coeffs[g] = detail::clean(t.plancherel[g] * s);
    mass += out.coeffs[g];
    out.min_real = std::min(out.min_real, out.coeffs[g].real());
    out.max_imag = std::max(out.max_imag, std::abs(out.coeffs[g].imag()));
  }
  out.mass_residual = std::abs(mass - 1.0);
  return out;
}

/// Real rows of the character table.
inline std::vector<std::vector<double>> semicharacters(const CharacterTable& t, double tol = kEqualityTol) {
  std::vector<std::vector<double>> out;
  for (const auto& a : t.chars) {
    bool real = true;
    for (const auto& z : a) real = real && std::abs(z.imag()) <= tol;
    if (!real) continue;
    std::vector<double> row;
    for (const auto& z : a) row.push_back(z.real());
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::vector<double>> semicharacters(const FiniteHypergroup<double>& h, std::uint64_t seed = 0) {
  return semicharacters(characters(h, seed));
}

// ---------------------------------------------------------------------------
// Exact tables for rational hypergroups with rational characters

struct ExactCharacterTable {
  std::vector<std::vector<Rational>> chars;
  std::vector<Rational> haar;
  std::vector<Rational> plancherel;
};

/// Snaps a floating-point table to rationals and re-verifies multiplicativity
/// exactly. Returns nullopt if some character is not rational.
inline std::optional<ExactCharacterTable> exact_characters(const FiniteHypergroup<Rational>& h,
                                                           const CharacterTable& t,
                                                           std::int64_t max_den = 1'000'000) {
  const std::size_t n = h.size();
  ExactCharacterTable out;
  for (const auto& a : t.chars) {
    std::vector<Rational> row;
    for (const auto& z : a) {
      if (std::abs(z.imag()) > kEqualityTol) return std::nullopt;
      row.push_back(rationalize(z.real(), max_den));
    }
    if (multiplicativity_residual(h, row) != 0.0) return std::nullopt;
    out.chars.push_back(std::move(row));
  }
  for (std::size_t x = 0; x < n; ++x) out.haar.push_back(Rational(1) / h(h.involution[x], x, h.identity));
  for (const auto& a : out.chars) {
    Rational norm(0);
    for (std::size_t x = 0; x < n; ++x) norm += out.haar[x] * a[x] * a[x];
    out.plancherel.push_back(Rational(1) / norm);
  }
  return out;
}

inline std::vector<Rational> dual_convolution(const ExactCharacterTable& t, std::size_t a, std::size_t b) {
  if (a >= t.chars.size() || b >= t.chars.size())
    throw Error(ErrorKind::kInvalidInput, "character index out of range");
  std::vector<Rational> out(t.chars.size());
  for (std::size_t g = 0; g < t.chars.size(); ++g) {
    Rational s(0);
    for (std::size_t x = 0; x < t.haar.size(); ++x) s += t.haar[x] * t.chars[a][x] * t.chars[b][x] * t.chars[g][x];
    out[g] = t.plancherel[g] * s;
  }
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_CHARACTERS_HPP_
