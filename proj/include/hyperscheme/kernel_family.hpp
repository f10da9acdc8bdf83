#ifndef HYPERSCHEME_KERNEL_FAMILY_HPP_
#define HYPERSCHEME_KERNEL_FAMILY_HPP_

// Sparse Markov kernel families K_h(x, .) indexed by relation labels, shared
// by finite schemes and truncated graph balls.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "scheme.hpp"

namespace hyperscheme {

struct SparseRow {
  std::vector<std::size_t> target;
  std::vector<double> weight;
  /// False for rows that are not fully represented (truncated at a boundary).
  bool valid = true;
};

struct SparseKernelFamily {
  std::size_t n_points = 0;
  /// rows[h][x] = K_h(x, .).
  std::vector<std::vector<SparseRow>> rows;
  /// Relation index of a pair (the projection pi(x, y)).
  std::function<std::size_t(std::size_t, std::size_t)> label;

  std::size_t n_relations() const { return rows.size(); }
  const SparseRow& row(std::size_t h, std::size_t x) const { return rows[h][x]; }

  /// mu K_h for a distribution mu on X; throws if mass reaches an invalid row.
  std::vector<double> push(const std::vector<double>& mu, std::size_t h) const {
    std::vector<double> out(n_points, 0.0);
    for (std::size_t x = 0; x < n_points; ++x) {
      if (mu[x] == 0.0) continue;
      const SparseRow& r = rows[h][x];
      if (!r.valid)
        throw Error(ErrorKind::kWalkWouldExitBall, "mass reached a truncated row at point " + std::to_string(x));
      for (std::size_t t = 0; t < r.target.size(); ++t) out[r.target[t]] += mu[x] * r.weight[t];
    }
    return out;
  }
};

template <typename T>
SparseKernelFamily to_sparse(const GeneralizedScheme<T>& gs) {
  SparseKernelFamily f;
  f.n_points = gs.partition.n_points;
  for (const auto& k : gs.kernels) {
    std::vector<SparseRow> rows(f.n_points);
    for (std::size_t x = 0; x < f.n_points; ++x)
      for (std::size_t y = 0; y < f.n_points; ++y) {
        const double w = to_double(k(x, y));
        if (w != 0.0) {
          rows[x].target.push_back(y);
          rows[x].weight.push_back(w);
        }
      }
    f.rows.push_back(std::move(rows));
  }
  f.label = [p = gs.partition](std::size_t x, std::size_t y) { return static_cast<std::size_t>(p(x, y)); };
  return f;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_KERNEL_FAMILY_HPP_
