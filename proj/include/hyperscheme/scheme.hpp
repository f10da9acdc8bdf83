#ifndef HYPERSCHEME_SCHEME_HPP_
#define HYPERSCHEME_SCHEME_HPP_

// Finite association schemes and finite generalized association schemes:
// representation, axiom verification, and the double-coset construction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "rational.hpp"

namespace hyperscheme {

/// Labeling X x X -> D of the relations of a (candidate) scheme.
struct RelationPartition {
  std::size_t n_points = 0;
  std::size_t n_relations = 0;
  /// Row-major n_points x n_points matrix of relation indices.
  std::vector<std::uint32_t> label;
  std::size_t identity_relation = 0;

  std::uint32_t operator()(std::size_t x, std::size_t y) const { return label[x * n_points + y]; }

  /// Builds a partition from a square label matrix. Throws InvalidInput on a
  /// ragged/empty matrix or negative/out-of-range labels.
  static RelationPartition from_rows(const std::vector<std::vector<long long>>& rows,
                                     std::optional<std::size_t> n_relations = std::nullopt) {
    const std::size_t n = rows.size();
    if (n == 0) throw Error(ErrorKind::kInvalidInput, "partition has no points");
    RelationPartition p;
    p.n_points = n;
    p.label.resize(n * n);
    long long max_label = -1;
    for (std::size_t x = 0; x < n; ++x) {
      if (rows[x].size() != n)
        throw Error(ErrorKind::kInvalidInput, "relation matrix is not square (row " +
                                                  std::to_string(x) + ")");
      for (std::size_t y = 0; y < n; ++y) {
        const long long v = rows[x][y];
        if (v < 0) throw Error(ErrorKind::kInvalidInput, "negative relation index");
        max_label = std::max(max_label, v);
        p.label[x * n + y] = static_cast<std::uint32_t>(v);
      }
    }
    p.n_relations = n_relations.value_or(static_cast<std::size_t>(max_label + 1));
    if (static_cast<long long>(p.n_relations) <= max_label)
      throw Error(ErrorKind::kInvalidInput, "relation index out of range");
    p.identity_relation = p.label[0];
    return p;
  }

  template <typename F>
  static RelationPartition from_function(std::size_t n_points, std::size_t n_relations, F&& f) {
    RelationPartition p;
    p.n_points = n_points;
    p.n_relations = n_relations;
    p.label.resize(n_points * n_points);
    for (std::size_t x = 0; x < n_points; ++x)
      for (std::size_t y = 0; y < n_points; ++y)
        p.label[x * n_points + y] = static_cast<std::uint32_t>(f(x, y));
    p.identity_relation = n_points ? p.label[0] : 0;
    return p;
  }

  std::vector<std::vector<long long>> rows() const {
    std::vector<std::vector<long long>> out(n_points, std::vector<long long>(n_points));
    for (std::size_t x = 0; x < n_points; ++x)
      for (std::size_t y = 0; y < n_points; ++y) out[x][y] = (*this)(x, y);
    return out;
  }
};

struct AssociationScheme {
  RelationPartition partition;
  std::vector<std::size_t> involution;
  /// Intersection numbers p(i, j, k) = p_{i,j}^k.
  Tensor3<std::int64_t> p;
  std::vector<std::int64_t> valency;
  /// relabel[old] = new; identity relation is moved to index 0.
  std::vector<std::size_t> relabel;

  std::size_t n_points() const { return partition.n_points; }
  std::size_t n_relations() const { return partition.n_relations; }

  bool commutative() const {
    const std::size_t d = n_relations();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          if (p(i, j, k) != p(j, i, k)) return false;
    return true;
  }

  bool symmetric() const {
    for (std::size_t i = 0; i < involution.size(); ++i)
      if (involution[i] != i) return false;
    return true;
  }

  bool unimodular() const {
    for (std::size_t i = 0; i < valency.size(); ++i)
      if (valency[i] != valency[involution[i]]) return false;
    return true;
  }

  Matrix<std::int64_t> adjacency(std::size_t i) const {
    const std::size_t n = n_points();
    Matrix<std::int64_t> a(n, n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) a(x, y) = partition(x, y) == i ? 1 : 0;
    return a;
  }
};

namespace detail {

struct PartitionStructure {
  RelationPartition partition;  // relabelled so that identity is 0
  std::vector<std::size_t> involution;
  std::vector<std::size_t> relabel;
};

// Non-emptiness, diagonal identity relation, recovered involution.
inline Outcome<PartitionStructure> check_partition_structure(const RelationPartition& in) {
  const std::size_t n = in.n_points;
  const std::size_t d = in.n_relations;
  if (n == 0 || in.label.size() != n * n)
    throw Error(ErrorKind::kInvalidInput, "malformed partition");
  for (auto v : in.label)
    if (v >= d) throw Error(ErrorKind::kInvalidInput, "relation index out of range");

  std::vector<std::size_t> seen(d, 0);
  for (auto v : in.label) ++seen[v];
  for (std::size_t i = 0; i < d; ++i)
    if (seen[i] == 0)
      return AxiomViolation{Axiom::kNonEmpty, "relation " + std::to_string(i) + " is empty",
                            {static_cast<std::int64_t>(i)}};

  const std::size_t e = in(0, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const bool diag = x == y;
      if (diag != (in(x, y) == e))
        return AxiomViolation{Axiom::kDiagonal,
                              diag ? "diagonal pair outside the identity relation"
                                   : "off-diagonal pair inside the identity relation",
                              {static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)}};
    }

  PartitionStructure out;
  out.relabel.resize(d);
  std::iota(out.relabel.begin(), out.relabel.end(), std::size_t{0});
  std::swap(out.relabel[0], out.relabel[e]);
  out.partition = in;
  for (auto& v : out.partition.label) v = static_cast<std::uint32_t>(out.relabel[v]);
  out.partition.identity_relation = 0;

  const RelationPartition& p = out.partition;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  out.involution.assign(d, kUnset);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t i = p(x, y);
      if (out.involution[i] == kUnset) out.involution[i] = p(y, x);
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t i = p(x, y);
      if (p(y, x) != out.involution[i])
        return AxiomViolation{Axiom::kInvolution, "transposed relation is not a single relation",
                              {static_cast<std::int64_t>(i), static_cast<std::int64_t>(x),
                               static_cast<std::int64_t>(y),
                               static_cast<std::int64_t>(p(y, x))}};
    }
  return out;
}

// Intersection numbers; witness layout (i, j, k, x, y, x', y').
inline Outcome<Tensor3<std::int64_t>> count_intersections(const RelationPartition& p) {
  const std::size_t n = p.n_points;
  const std::size_t d = p.n_relations;
  Tensor3<std::int64_t> out(d);
  std::vector<std::pair<std::size_t, std::size_t>> rep(d, {n, n});
  std::vector<std::int64_t> counts(d * d);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t z = 0; z < n; ++z) ++counts[p(x, z) * d + p(z, y)];
      const std::size_t k = p(x, y);
      if (rep[k].first == n) {
        rep[k] = {x, y};
        for (std::size_t i = 0; i < d; ++i)
          for (std::size_t j = 0; j < d; ++j) out(i, j, k) = counts[i * d + j];
        continue;
      }
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          if (out(i, j, k) != counts[i * d + j])
            return AxiomViolation{
                Axiom::kCounting,
                "p_{" + std::to_string(i) + "," + std::to_string(j) + "}^" + std::to_string(k) +
                    " is " + std::to_string(out(i, j, k)) + " at one pair and " +
                    std::to_string(counts[i * d + j]) + " at another",
                {static_cast<std::int64_t>(i), static_cast<std::int64_t>(j),
                 static_cast<std::int64_t>(k), static_cast<std::int64_t>(rep[k].first),
                 static_cast<std::int64_t>(rep[k].second), static_cast<std::int64_t>(x),
                 static_cast<std::int64_t>(y)}};
    }
  return out;
}

inline AssociationScheme assemble_scheme(PartitionStructure s, Tensor3<std::int64_t> p) {
  AssociationScheme out;
  const std::size_t d = s.partition.n_relations;
  out.valency.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.valency[i] = p(i, s.involution[i], 0);
  out.partition = std::move(s.partition);
  out.involution = std::move(s.involution);
  out.relabel = std::move(s.relabel);
  out.p = std::move(p);
  return out;
}

}  // namespace detail

/// Checks the association-scheme axioms and computes the involution,
/// intersection numbers, and valencies. If the identity relation is not
/// labelled 0 it is swapped with 0 (see AssociationScheme::relabel).
inline Outcome<AssociationScheme> verify_scheme(const RelationPartition& partition) {
  auto structure = detail::check_partition_structure(partition);
  if (!structure) return structure.violation();
  auto s = std::move(structure).take();
  auto counted = detail::count_intersections(s.partition);
  if (!counted) return counted.violation();
  return detail::assemble_scheme(std::move(s), std::move(counted).take());
}

// ---------------------------------------------------------------------------
// Double cosets

struct CosetScheme {
  /// coset_of[g] = index of the left coset gH.
  std::vector<std::size_t> coset_of;
  /// double_coset_of[g] = index of HgH (H itself is 0).
  std::vector<std::size_t> double_coset_of;
  /// One representative group element per left coset.
  std::vector<std::size_t> coset_rep;
  AssociationScheme scheme;
};

using GroupTable = std::vector<std::vector<std::size_t>>;

namespace detail {

struct GroupData {
  std::size_t identity;
  std::vector<std::size_t> inverse;
};

inline GroupData check_group(const GroupTable& t) {
  const std::size_t n = t.size();
  if (n == 0) throw Error(ErrorKind::kNotAGroup, "empty multiplication table");
  for (std::size_t a = 0; a < n; ++a) {
    if (t[a].size() != n) throw Error(ErrorKind::kNotAGroup, "table is not square");
    for (auto v : t[a])
      if (v >= n) throw Error(ErrorKind::kNotAGroup, "table entry out of range");
  }
  std::optional<std::size_t> e;
  for (std::size_t c = 0; c < n && !e; ++c) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = t[c][g] == g && t[g][c] == g;
    if (ok) e = c;
  }
  if (!e) throw Error(ErrorKind::kNotAGroup, "no identity element");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]])
          throw Error(ErrorKind::kNotAGroup, "not associative at (" + std::to_string(a) + "," +
                                                 std::to_string(b) + "," + std::to_string(c) +
                                                 ")");
  GroupData g{*e, std::vector<std::size_t>(n, n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (t[a][b] == *e && t[b][a] == *e) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] == n)
      throw Error(ErrorKind::kNotAGroup, "element " + std::to_string(a) + " has no inverse");
  }
  return g;
}

}  // namespace detail

/// X = left cosets gH, D = double cosets HgH, relation of (xH, yH) is Hx^{-1}yH.
inline CosetScheme from_double_cosets(const GroupTable& table, const std::vector<std::size_t>& subgroup) {
  const auto group = detail::check_group(table);
  const std::size_t n = table.size();
  std::vector<bool> in_h(n, false);
  if (subgroup.empty()) throw Error(ErrorKind::kNotASubgroup, "subgroup is empty");
  for (auto h : subgroup) {
    if (h >= n) throw Error(ErrorKind::kNotASubgroup, "subgroup element out of range");
    in_h[h] = true;
  }
  if (!in_h[group.identity]) throw Error(ErrorKind::kNotASubgroup, "subgroup lacks the identity");
  for (std::size_t a = 0; a < n; ++a) {
    if (!in_h[a]) continue;
    if (!in_h[group.inverse[a]]) throw Error(ErrorKind::kNotASubgroup, "not closed under inverse");
    for (std::size_t b = 0; b < n; ++b)
      if (in_h[b] && !in_h[table[a][b]])
        throw Error(ErrorKind::kNotASubgroup, "not closed under products");
  }
  std::vector<std::size_t> h_elems;
  for (std::size_t a = 0; a < n; ++a)
    if (in_h[a]) h_elems.push_back(a);

  // Canonical key: smallest element of the coset. Elements are scanned from
  // the identity's coset first so that H gets index 0 in both numberings.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_partition(order.begin(), order.end(), [&](std::size_t g) { return in_h[g]; });

  CosetScheme out;
  out.coset_of.assign(n, n);
  out.double_coset_of.assign(n, n);
  std::size_t n_cosets = 0, n_double = 0;
  for (auto g : order) {
    if (out.coset_of[g] == n) {
      for (auto h : h_elems) out.coset_of[table[g][h]] = n_cosets;
      out.coset_rep.push_back(g);
      ++n_cosets;
    }
    if (out.double_coset_of[g] == n) {
      for (auto h1 : h_elems)
        for (auto h2 : h_elems) out.double_coset_of[table[table[h1][g]][h2]] = n_double;
      ++n_double;
    }
  }
  auto partition = RelationPartition::from_function(n_cosets, n_double, [&](std::size_t x, std::size_t y) {
    const std::size_t gx = out.coset_rep[x], gy = out.coset_rep[y];
    return out.double_coset_of[table[group.inverse[gx]][gy]];
  });
  auto verified = verify_scheme(partition);
  if (!verified) throw AxiomError(verified.violation());
  out.scheme = std::move(verified).take();
  return out;
}

// ---------------------------------------------------------------------------
// Generalized association schemes

template <typename T>
struct GeneralizedScheme {
  RelationPartition partition;
  /// One row-stochastic n_points x n_points kernel per relation.
  std::vector<Matrix<T>> kernels;
  std::vector<T> omega_x;
};

template <typename T>
struct GeneralizedVerification {
  AssociationScheme scheme;
  /// Deformed intersection numbers: S_i S_j = sum_k coefficients(i, j, k) S_k.
  Tensor3<T> coefficients;
};

/// Renormalized adjacency matrices A_i / w_i with counting measure on X.
template <typename T>
GeneralizedScheme<T> canonical_generalized(const AssociationScheme& s) {
  GeneralizedScheme<T> gs;
  gs.partition = s.partition;
  const std::size_t n = s.n_points();
  for (std::size_t i = 0; i < s.n_relations(); ++i) {
    Matrix<T> k(n, n);
    const T w = T(1) / T(s.valency[i]);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (s.partition(x, y) == i) k(x, y) = w;
    gs.kernels.push_back(std::move(k));
  }
  gs.omega_x.assign(n, T(1));
  return gs;
}

/// Verifies the generalized-scheme axioms. Witness layouts: identity (x, y);
/// support/adjoint (i, x, y); span (i, j, x, y); stochastic (i, x); counting
/// as in verify_scheme.
template <typename T>
Outcome<GeneralizedVerification<T>> verify_generalized(const GeneralizedScheme<T>& gs,
                                                       double tol = kEqualityTol) {
  const std::size_t n = gs.partition.n_points;
  const std::size_t d = gs.partition.n_relations;
  if (gs.kernels.size() != d)
    throw Error(ErrorKind::kInvalidInput, "expected one kernel per relation");
  if (gs.omega_x.size() != n) throw Error(ErrorKind::kInvalidInput, "omega_x has wrong length");
  for (const auto& k : gs.kernels)
    if (k.rows() != n || k.cols() != n)
      throw Error(ErrorKind::kInvalidInput, "kernel has wrong shape");

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < n; ++x) {
      T row(0);
      for (std::size_t y = 0; y < n; ++y) {
        if (below(gs.kernels[i](x, y), 0.0))
          return AxiomViolation{Axiom::kStochastic, "negative kernel entry",
                                {static_cast<std::int64_t>(i), static_cast<std::int64_t>(x)}};
        row += gs.kernels[i](x, y);
      }
      if (!approx_equal(row, T(1), tol))
        return AxiomViolation{Axiom::kStochastic, "kernel row does not sum to 1",
                              {static_cast<std::int64_t>(i), static_cast<std::int64_t>(x)}};
    }

  auto structure = detail::check_partition_structure(gs.partition);
  if (!structure) {
    auto v = structure.violation();
    switch (v.axiom) {
      case Axiom::kNonEmpty: v.axiom = Axiom::kGenSupport; break;
      case Axiom::kDiagonal: v.axiom = Axiom::kGenIdentity; break;
      default: v.axiom = Axiom::kGenAdjoint; break;
    }
    return v;
  }
  auto s = std::move(structure).take();
  const RelationPartition& p = s.partition;
  std::vector<const Matrix<T>*> kernel(d);
  for (std::size_t old = 0; old < d; ++old) kernel[s.relabel[old]] = &gs.kernels[old];

  auto w = [](std::size_t v) { return static_cast<std::int64_t>(v); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!approx_equal((*kernel[0])(x, y), T(x == y ? 1 : 0), tol))
        return AxiomViolation{Axiom::kGenIdentity, "identity kernel is not the identity matrix",
                              {w(x), w(y)}};

  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const bool positive = (*kernel[i])(x, y) > T(0);
        if (positive != (p(x, y) == i))
          return AxiomViolation{Axiom::kGenSupport,
                                positive ? "kernel charges a pair outside its relation"
                                         : "kernel vanishes on a pair of its relation",
                                {w(i), w(x), w(y)}};
      }

  for (std::size_t x = 0; x < n; ++x)
    if (!(gs.omega_x[x] > T(0)))
      return AxiomViolation{Axiom::kGenAdjoint, "omega_x must be strictly positive", {0, w(x), w(x)}};
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t ib = s.involution[i];
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const T lhs = gs.omega_x[y] * (*kernel[ib])(y, x);
        const T rhs = gs.omega_x[x] * (*kernel[i])(x, y);
        if (!approx_equal(lhs, rhs, tol))
          return AxiomViolation{Axiom::kGenAdjoint, "omega(y) S_ibar(y,x) != omega(x) S_i(x,y)",
                                {w(i), w(x), w(y)}};
      }
  }

  // Representative entry per relation: maximal S_k(x, y) over (x, y) in R_k.
  Tensor3<T> coeff(d);
  std::vector<std::pair<std::size_t, std::size_t>> rep(d, {n, n});
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t k = p(x, y);
      if (rep[k].first == n || (*kernel[k])(x, y) > (*kernel[k])(rep[k].first, rep[k].second))
        rep[k] = {x, y};
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Matrix<T> prod = (*kernel[i]) * (*kernel[j]);
      for (std::size_t k = 0; k < d; ++k) {
        const auto [rx, ry] = rep[k];
        coeff(i, j, k) = prod(rx, ry) / (*kernel[k])(rx, ry);
      }
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
          const std::size_t k = p(x, y);
          if (!approx_equal(prod(x, y), coeff(i, j, k) * (*kernel[k])(x, y), tol))
            return AxiomViolation{Axiom::kGenSpan,
                                  "S_" + std::to_string(i) + " S_" + std::to_string(j) +
                                      " is not in the span of the kernels",
                                  {w(i), w(j), w(x), w(y)}};
        }
    }

  auto counted = detail::count_intersections(p);
  if (!counted) {
    auto v = counted.violation();
    v.axiom = Axiom::kGenCounting;
    return v;
  }
  return GeneralizedVerification<T>{detail::assemble_scheme(std::move(s), std::move(counted).take()),
                                    std::move(coeff)};
}

/// Applies a relation relabelling (old -> new) to partition and kernels.
template <typename T>
GeneralizedScheme<T> relabeled(const GeneralizedScheme<T>& gs, const std::vector<std::size_t>& relabel) {
  GeneralizedScheme<T> out;
  out.partition = gs.partition;
  for (auto& v : out.partition.label) v = static_cast<std::uint32_t>(relabel.at(v));
  out.partition.identity_relation = out.partition(0, 0);
  out.kernels.resize(gs.kernels.size());
  for (std::size_t old = 0; old < gs.kernels.size(); ++old) out.kernels[relabel.at(old)] = gs.kernels[old];
  out.omega_x = gs.omega_x;
  return out;
}

/// True iff every kernel equals the renormalized adjacency matrix A_i / w_i.
template <typename T>
bool finite_rigidity_check(const GeneralizedScheme<T>& gs, double tol = kEqualityTol) {
  const std::size_t n = gs.partition.n_points;
  const std::size_t d = gs.partition.n_relations;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      std::int64_t count = 0;
      for (std::size_t y = 0; y < n; ++y) count += gs.partition(x, y) == i;
      if (count == 0) return false;
      const T expected = T(1) / T(count);
      for (std::size_t y = 0; y < n; ++y) {
        const T want = gs.partition(x, y) == i ? expected : T(0);
        if (!approx_equal(gs.kernels[i](x, y), want, tol)) return false;
      }
    }
  }
  return true;
}

struct TranslationProperties {
  bool t1 = false;
  bool t2 = false;
};

/// Exact check of the translation properties for the canonical kernels
/// S_h = A_h / w_h of a unimodular scheme:
///   t1: S_h(1_{r} o pi_x)(y) == (delta_{pi(x,y)} * delta_h)({r}) for all h, r, x, y;
///   t2: sum_h w_h S_h(x, .) is the counting measure for every x.
inline TranslationProperties translation_property_check(const AssociationScheme& s) {
  if (!s.unimodular()) throw Error(ErrorKind::kNotUnimodular, "valencies differ on an involution pair");
  const std::size_t n = s.n_points();
  const std::size_t d = s.n_relations();
  auto conv = [&](std::size_t i, std::size_t j, std::size_t k) {
    return Rational(s.valency[k] * s.p(i, j, k), s.valency[i] * s.valency[j]);
  };
  TranslationProperties out{true, true};
  std::vector<std::int64_t> joint(d * d);
  for (std::size_t x = 0; x < n && out.t1; ++x)
    for (std::size_t y = 0; y < n && out.t1; ++y) {
      std::fill(joint.begin(), joint.end(), 0);
      for (std::size_t z = 0; z < n; ++z) ++joint[s.partition(x, z) * d + s.partition(y, z)];
      const std::size_t k = s.partition(x, y);
      for (std::size_t r = 0; r < d && out.t1; ++r)
        for (std::size_t h = 0; h < d; ++h) {
          const Rational lhs(joint[r * d + h], s.valency[h]);
          if (lhs != conv(k, h, r)) {
            out.t1 = false;
            break;
          }
        }
    }
  for (std::size_t x = 0; x < n && out.t2; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Rational total(0);
      for (std::size_t h = 0; h < d; ++h)
        if (s.partition(x, y) == h) total += Rational(s.valency[h]) / Rational(s.valency[h]);
      if (total != 1) {
        out.t2 = false;
        break;
      }
    }
  return out;
}

template <typename T>
struct T2Reformulation {
  bool holds = false;
  /// lambda with sum_h w_D(h) K_h(x, .) = lambda * omega_X for every x.
  T scale = T(0);
  double residual = 0.0;
};

/// Checks sum_h w_D(h) K_h(x, .) == lambda * omega_X (one lambda for all x).
template <typename T>
T2Reformulation<T> t2_reformulation(const GeneralizedScheme<T>& gs, const std::vector<T>& haar,
                                    double tol = kEqualityTol) {
  const std::size_t n = gs.partition.n_points;
  const std::size_t d = gs.partition.n_relations;
  if (haar.size() != d) throw Error(ErrorKind::kInvalidInput, "Haar vector has wrong length");
  T2Reformulation<T> out;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      T total(0);
      for (std::size_t h = 0; h < d; ++h) total += haar[h] * gs.kernels[h](x, y);
      if (x == 0 && y == 0) out.scale = total / gs.omega_x[0];
      const T expected = out.scale * gs.omega_x[y];
      out.residual = std::max(out.residual, abs_diff(total, expected));
    }
  out.holds = is_exact_v<T> ? out.residual == 0.0 : out.residual <= tol;
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_SCHEME_HPP_
