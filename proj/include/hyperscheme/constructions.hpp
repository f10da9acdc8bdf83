#ifndef HYPERSCHEME_CONSTRUCTIONS_HPP_
#define HYPERSCHEME_CONSTRUCTIONS_HPP_

// Direct products and joins of finite hypergroups and of finite generalized
// schemes.
//
// Index layouts:
//   product: (i1, i2) -> i1 * n2 + i2 for relations and points alike.
//   join:    D = D2 followed by D1 \ {e1}; x in D2 keeps its index, x in D1
//            maps to n2 + (rank of x among D1 \ {e1}). Points of the joined
//            scheme are (x1, x2) -> x1 * |X2| + x2.

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hypergroup.hpp"
#include "linalg.hpp"
#include "scheme.hpp"

namespace hyperscheme {

struct ProductIndex {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t flat(std::size_t i1, std::size_t i2) const { return i1 * n2 + i2; }
  std::pair<std::size_t, std::size_t> split(std::size_t i) const { return {i / n2, i % n2}; }
  std::size_t size() const { return n1 * n2; }
};

struct JoinIndex {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  std::size_t e1 = 0;
  std::size_t from_d2(std::size_t x) const { return x; }
  std::size_t from_d1(std::size_t x) const {
    if (x == e1) throw Error(ErrorKind::kInvalidInput, "e1 is not part of the join");
    return n2 + (x < e1 ? x : x - 1);
  }
  bool in_d2(std::size_t j) const { return j < n2; }
  std::size_t to_d1(std::size_t j) const {
    const std::size_t r = j - n2;
    return r < e1 ? r : r + 1;
  }
  std::size_t size() const { return n2 + n1 - 1; }
};

template <typename T>
FiniteHypergroup<T> direct_product(const FiniteHypergroup<T>& h1, const FiniteHypergroup<T>& h2) {
  const ProductIndex ix{h1.size(), h2.size()};
  FiniteHypergroup<T> out;
  out.identity = ix.flat(h1.identity, h2.identity);
  out.involution.resize(ix.size());
  out.conv = Tensor3<T>(ix.size());
  out.scheme_derived = h1.scheme_derived && h2.scheme_derived;
  for (std::size_t i = 0; i < ix.size(); ++i) {
    const auto [i1, i2] = ix.split(i);
    out.involution[i] = ix.flat(h1.involution[i1], h2.involution[i2]);
    for (std::size_t j = 0; j < ix.size(); ++j) {
      const auto [j1, j2] = ix.split(j);
      for (std::size_t k = 0; k < ix.size(); ++k) {
        const auto [k1, k2] = ix.split(k);
        if (h1(i1, j1, k1) != T(0) && h2(i2, j2, k2) != T(0)) out.conv(i, j, k) = h1(i1, j1, k1) * h2(i2, j2, k2);
      }
    }
  }
  return out;
}

template <typename T>
GeneralizedScheme<T> direct_product_scheme(const GeneralizedScheme<T>& s1, const GeneralizedScheme<T>& s2) {
  const ProductIndex px{s1.partition.n_points, s2.partition.n_points};
  const ProductIndex dx{s1.partition.n_relations, s2.partition.n_relations};
  GeneralizedScheme<T> out;
  out.partition = RelationPartition::from_function(px.size(), dx.size(), [&](std::size_t x, std::size_t y) {
    const auto [x1, x2] = px.split(x);
    const auto [y1, y2] = px.split(y);
    return dx.flat(s1.partition(x1, y1), s2.partition(x2, y2));
  });
  for (std::size_t h = 0; h < dx.size(); ++h) {
    const auto [h1, h2] = dx.split(h);
    out.kernels.push_back(kron(s1.kernels[h1], s2.kernels[h2]));
  }
  out.omega_x.resize(px.size());
  for (std::size_t x = 0; x < px.size(); ++x) {
    const auto [x1, x2] = px.split(x);
    out.omega_x[x] = s1.omega_x[x1] * s2.omega_x[x2];
  }
  return out;
}

/// Join with H1 as the discrete factor and H2 as the compact factor. The Haar
/// measure of H2 is normalized to a probability vector internally.
template <typename T>
FiniteHypergroup<T> join(const FiniteHypergroup<T>& h1, const FiniteHypergroup<T>& h2) {
  const JoinIndex ix{h1.size(), h2.size(), h1.identity};
  const std::size_t n = ix.size();
  std::vector<T> w2 = haar(h2).left;
  const T total = std::accumulate(w2.begin(), w2.end(), T(0));
  for (auto& v : w2) v /= total;

  FiniteHypergroup<T> out;
  out.identity = ix.from_d2(h2.identity);
  out.involution.resize(n);
  out.conv = Tensor3<T>(n);
  out.scheme_derived = h1.scheme_derived && h2.scheme_derived;
  for (std::size_t x = 0; x < n; ++x)
    out.involution[x] = ix.in_d2(x) ? ix.from_d2(h2.involution[x]) : ix.from_d1(h1.involution[ix.to_d1(x)]);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (ix.in_d2(x) && ix.in_d2(y)) {
        for (std::size_t k = 0; k < h2.size(); ++k) out.conv(x, y, k) = h2(x, y, k);
      } else if (!ix.in_d2(x) && !ix.in_d2(y)) {
        const std::size_t x1 = ix.to_d1(x), y1 = ix.to_d1(y);
        for (std::size_t k1 = 0; k1 < h1.size(); ++k1) {
          if (k1 == h1.identity) continue;
          out.conv(x, y, ix.from_d1(k1)) = h1(x1, y1, k1);
        }
        const T mass = h1(x1, y1, h1.identity);
        if (mass != T(0))
          for (std::size_t k2 = 0; k2 < h2.size(); ++k2) out.conv(x, y, k2) = mass * w2[k2];
      } else {
        out.conv(x, y, ix.in_d2(x) ? y : x) = T(1);
      }
    }
  return out;
}

/// Joined generalized scheme on X1 x X2: for h in D2 the kernel keeps x1 and
/// moves x2 by K2_h; for h in D1 \ {e1} it moves x1 by K1_h and redistributes
/// x2 by the normalized omega_X2.
template <typename T>
GeneralizedScheme<T> join_scheme(const GeneralizedScheme<T>& s1, const GeneralizedScheme<T>& s2) {
  const std::size_t n1 = s1.partition.n_points, n2 = s2.partition.n_points;
  const std::size_t e1 = s1.partition(0, 0);
  const JoinIndex dx{s1.partition.n_relations, s2.partition.n_relations, e1};
  const ProductIndex px{n1, n2};
  std::vector<T> w2 = s2.omega_x;
  const T total = std::accumulate(w2.begin(), w2.end(), T(0));
  for (auto& v : w2) v /= total;

  GeneralizedScheme<T> out;
  out.partition = RelationPartition::from_function(px.size(), dx.size(), [&](std::size_t x, std::size_t y) {
    const auto [x1, x2] = px.split(x);
    const auto [y1, y2] = px.split(y);
    return x1 == y1 ? dx.from_d2(s2.partition(x2, y2)) : dx.from_d1(s1.partition(x1, y1));
  });
  for (std::size_t h = 0; h < dx.size(); ++h) {
    Matrix<T> k(px.size(), px.size());
    for (std::size_t x = 0; x < px.size(); ++x) {
      const auto [x1, x2] = px.split(x);
      for (std::size_t y = 0; y < px.size(); ++y) {
        const auto [y1, y2] = px.split(y);
        if (dx.in_d2(h)) {
          if (x1 == y1) k(x, y) = s2.kernels[h](x2, y2);
        } else {
          k(x, y) = s1.kernels[dx.to_d1(h)](x1, y1) * w2[y2];
        }
      }
    }
    out.kernels.push_back(std::move(k));
  }
  out.omega_x.resize(px.size());
  for (std::size_t x = 0; x < px.size(); ++x) {
    const auto [x1, x2] = px.split(x);
    out.omega_x[x] = s1.omega_x[x1] * w2[x2];
  }
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_CONSTRUCTIONS_HPP_
