#ifndef HYPERSCHEME_ERRORS_HPP_
#define HYPERSCHEME_ERRORS_HPP_

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hyperscheme {

enum class ErrorKind {
  kInvalidInput,
  kNotAGroup,
  kNotASubgroup,
  kNotUnimodular,
  kNotCommutative,
  kDegenerateSpectrum,
  kNotASemicharacter,
  kDomainError,
  kQuadratureFailure,
  kBallTooLarge,
  kNonUniqueMinimizer,
  kUnsupportedParams,
  kSupportCap,
  kWalkWouldExitBall,
  kParameterMismatch,
  kAxiomViolation,
};

inline std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kNotAGroup: return "NotAGroup";
    case ErrorKind::kNotASubgroup: return "NotASubgroup";
    case ErrorKind::kNotUnimodular: return "NotUnimodular";
    case ErrorKind::kNotCommutative: return "NotCommutative";
    case ErrorKind::kDegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::kNotASemicharacter: return "NotASemicharacter";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kQuadratureFailure: return "QuadratureFailure";
    case ErrorKind::kBallTooLarge: return "BallTooLarge";
    case ErrorKind::kNonUniqueMinimizer: return "NonUniqueMinimizer";
    case ErrorKind::kUnsupportedParams: return "UnsupportedParams";
    case ErrorKind::kSupportCap: return "SupportCap";
    case ErrorKind::kWalkWouldExitBall: return "WalkWouldExitBall";
    case ErrorKind::kParameterMismatch: return "ParameterMismatch";
    case ErrorKind::kAxiomViolation: return "AxiomViolation";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Axioms checked by the verifiers. The generalized-scheme axioms carry the
/// numbers 1..5 (counting, support, span, identity, adjoint); the hypergroup
/// axioms carry 1..4 (probability, identity, involution support, involution
/// compatibility) with associativity as 5.
enum class Axiom {
  // association scheme partition
  kNonEmpty,
  kDiagonal,
  kInvolution,
  kCounting,
  // generalized association scheme
  kStochastic,
  kGenCounting,
  kGenSupport,
  kGenSpan,
  kGenIdentity,
  kGenAdjoint,
  // finite hypergroup
  kHgProbability,
  kHgIdentity,
  kHgInvolutionSupport,
  kHgInvolutionCompat,
  kHgAssociativity,
};

inline std::string_view axiom_name(Axiom a) {
  switch (a) {
    case Axiom::kNonEmpty: return "non-empty relations";
    case Axiom::kDiagonal: return "diagonal identity relation";
    case Axiom::kInvolution: return "involution existence";
    case Axiom::kCounting: return "constant intersection numbers";
    case Axiom::kStochastic: return "row-stochastic kernels";
    case Axiom::kGenCounting: return "(1) constant intersection numbers";
    case Axiom::kGenSupport: return "(2) kernel support equals relation";
    case Axiom::kGenSpan: return "(3) products lie in the kernel span";
    case Axiom::kGenIdentity: return "(4) identity kernel";
    case Axiom::kGenAdjoint: return "(5) adjoint relation";
    case Axiom::kHgProbability: return "(1) products are probability measures";
    case Axiom::kHgIdentity: return "(2) neutral element";
    case Axiom::kHgInvolutionSupport: return "(3) e in supp(x*y) iff y = x-bar";
    case Axiom::kHgInvolutionCompat: return "(4) (x*y)^- = y-bar * x-bar";
    case Axiom::kHgAssociativity: return "associativity";
  }
  return "unknown";
}

/// Number of the axiom inside its family (0 for partition-level checks).
inline int axiom_number(Axiom a) {
  switch (a) {
    case Axiom::kGenCounting: return 1;
    case Axiom::kGenSupport: return 2;
    case Axiom::kGenSpan: return 3;
    case Axiom::kGenIdentity: return 4;
    case Axiom::kGenAdjoint: return 5;
    case Axiom::kHgProbability: return 1;
    case Axiom::kHgIdentity: return 2;
    case Axiom::kHgInvolutionSupport: return 3;
    case Axiom::kHgInvolutionCompat: return 4;
    case Axiom::kHgAssociativity: return 5;
    default: return 0;
  }
}

struct AxiomViolation {
  Axiom axiom;
  std::string detail;
  /// Indices locating the failure; layout documented by each verifier.
  std::vector<std::int64_t> witness;

  std::string describe() const {
    std::ostringstream os;
    os << "axiom violated: " << axiom_name(axiom) << " -- " << detail;
    if (!witness.empty()) {
      os << " [witness";
      for (auto w : witness) os << ' ' << w;
      os << ']';
    }
    return os.str();
  }
};

class AxiomError : public Error {
 public:
  explicit AxiomError(AxiomViolation v)
      : Error(ErrorKind::kAxiomViolation, v.describe()), violation_(std::move(v)) {}
  const AxiomViolation& violation() const { return violation_; }

 private:
  AxiomViolation violation_;
};

/// Either a verified value or the first axiom violation found.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Outcome(AxiomViolation v) : state_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return ok(); }

  const T& value() const {
    if (!ok()) throw AxiomError(violation());
    return std::get<T>(state_);
  }
  T&& take() && {
    if (!ok()) throw AxiomError(violation());
    return std::get<T>(std::move(state_));
  }
  const AxiomViolation& violation() const { return std::get<AxiomViolation>(state_); }

 private:
  std::variant<T, AxiomViolation> state_;
};

}  // namespace hyperscheme

#endif  // HYPERSCHEME_ERRORS_HPP_
