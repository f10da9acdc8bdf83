#ifndef HYPERSCHEME_BALL_HPP_
#define HYPERSCHEME_BALL_HPP_

// Finite balls in the distance-transitive graph Gamma(a, b), a copies of the
// complete graph K_b glued at every vertex in a tree-like way. Vertices are
// step-words: the first step picks one of a cliques at the root and one of
// its b-1 new members; later steps pick one of the a-1 new cliques.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "kernel_family.hpp"
#include "poly_hypergroup.hpp"

namespace hyperscheme {

struct Step {
  std::uint16_t clique = 1;
  std::uint16_t member = 1;
  bool operator==(const Step& o) const { return clique == o.clique && member == o.member; }
  bool operator!=(const Step& o) const { return !(*this == o); }
};

using Word = std::vector<Step>;

/// Graph distance between two step-words: lengths minus twice the common
/// prefix, minus one more when the first differing steps share a clique.
inline std::size_t word_distance(const Word& u, const Word& v) {
  std::size_t p = 0;
  while (p < u.size() && p < v.size() && u[p] == v[p]) ++p;
  std::size_t d = (u.size() - p) + (v.size() - p);
  if (p < u.size() && p < v.size() && u[p].clique == v[p].clique) --d;
  return d;
}

inline constexpr std::size_t kDefaultBallCap = 200'000;

inline std::size_t ball_cap_from_env() {
  if (const char* env = std::getenv("HYPERSCHEME_BALL_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultBallCap;
}

/// 1 + sum_{h=1}^R a (a-1)^(h-1) (b-1)^h, saturating.
inline double ball_size_estimate(const DTParams& p, std::size_t radius) {
  double total = 1.0;
  for (std::size_t h = 1; h <= radius; ++h) {
    total += dt_haar_double(h, p);
    if (total > 1e18) return total;
  }
  return total;
}

struct Ball {
  DTParams params;
  std::size_t radius = 0;
  /// Vertices in breadth-first order; index 0 is the root.
  std::vector<Word> words;
  std::vector<std::size_t> parent;
  std::vector<std::vector<std::size_t>> adjacency;
  /// ray[k] = index of v_k = (1,1)^k.
  std::vector<std::size_t> ray;

  std::size_t size() const { return words.size(); }
  std::size_t depth(std::size_t v) const { return words[v].size(); }
  std::size_t distance(std::size_t u, std::size_t v) const { return word_distance(words[u], words[v]); }

  std::vector<std::size_t> sphere_sizes() const {
    std::vector<std::size_t> out(radius + 1, 0);
    for (const auto& w : words) ++out[w.size()];
    return out;
  }

  std::vector<std::size_t> bfs_distances(std::size_t src) const {
    constexpr auto kInf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(size(), kInf);
    std::deque<std::size_t> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (auto v : adjacency[u])
        if (dist[v] == kInf) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    return dist;
  }

  /// Vertices of S(x, h) inside the ball.
  std::vector<std::size_t> sphere(std::size_t x, std::size_t h) const {
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < size(); ++y)
      if (distance(x, y) == h) out.push_back(y);
    return out;
  }

  /// True when the whole sphere S(x, h) of the infinite graph lies in the ball.
  bool interior_valid(std::size_t x, std::size_t h) const { return depth(x) + h <= radius; }
};

/// Builds the radius-R ball around the root. Throws BallTooLarge when the
/// vertex count would exceed `cap` (default: HYPERSCHEME_BALL_CAP or 200000).
inline Ball build_ball(const DTParams& p, std::size_t radius, std::size_t cap = 0) {
  p.validate();
  if (cap == 0) cap = ball_cap_from_env();
  const double expected = ball_size_estimate(p, radius);
  if (expected > static_cast<double>(cap))
    throw Error(ErrorKind::kBallTooLarge, "ball of radius " + std::to_string(radius) + " has " +
                                              std::to_string(static_cast<long double>(expected)) +
                                              " vertices, cap is " + std::to_string(cap));
  Ball ball;
  ball.params = p;
  ball.radius = radius;
  ball.words.push_back({});
  ball.parent.push_back(0);
  ball.adjacency.emplace_back();
  ball.ray.push_back(0);
  for (std::size_t v = 0; v < ball.words.size(); ++v) {
    if (ball.depth(v) == radius) continue;
    const std::uint16_t cliques = static_cast<std::uint16_t>(v == 0 ? p.a : p.a - 1);
    for (std::uint16_t c = 1; c <= cliques; ++c) {
      const std::size_t first = ball.words.size();
      for (std::uint16_t m = 1; m <= p.b - 1; ++m) {
        Word w = ball.words[v];
        w.push_back({c, m});
        const std::size_t id = ball.words.size();
        ball.words.push_back(std::move(w));
        ball.parent.push_back(v);
        ball.adjacency.emplace_back();
        ball.adjacency[v].push_back(id);
        ball.adjacency[id].push_back(v);
        for (std::size_t s = first; s < id; ++s) {
          ball.adjacency[s].push_back(id);
          ball.adjacency[id].push_back(s);
        }
        if (c == 1 && m == 1 && v == ball.ray.back()) ball.ray.push_back(id);
      }
    }
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Boundary ray v_n = (1,1)^n

inline Word ray_word(std::size_t n) { return Word(n, Step{1, 1}); }

/// Horocycle index lim_n d(v, v_n) - n of a step-word.
inline long long horocycle_index(const Word& w) {
  std::size_t p = 0;
  while (p < w.size() && w[p] == Step{1, 1}) ++p;
  const long long depth = static_cast<long long>(w.size());
  const long long pl = static_cast<long long>(p);
  if (p == w.size()) return -depth;
  return depth - 2 * pl - (w[p].clique == 1 ? 1 : 0);
}

struct BoundaryRay {
  /// horocycle[v] for every ball vertex.
  std::vector<long long> horocycle;

  explicit BoundaryRay(const Ball& ball) {
    horocycle.reserve(ball.size());
    for (const auto& w : ball.words) horocycle.push_back(horocycle_index(w));
  }
};

/// d(v, B) = d(v, v_{n0}) - n0 for the minimizer n0 of n -> d(v, v_n),
/// scanning n0 = 0 .. R + depth(v). Throws NonUniqueMinimizer on ties.
inline long long boundary_distance(const Ball& ball, std::size_t v) {
  const Word& w = ball.words.at(v);
  const std::size_t limit = ball.radius + w.size();
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::size_t best_n = 0;
  int count = 0;
  for (std::size_t n = 0; n <= limit; ++n) {
    const std::size_t d = word_distance(w, ray_word(n));
    if (d < best) {
      best = d;
      best_n = n;
      count = 1;
    } else if (d == best) {
      ++count;
    }
  }
  if (count != 1)
    throw Error(ErrorKind::kNonUniqueMinimizer,
                "vertex " + std::to_string(v) + " has " + std::to_string(count) + " nearest ray points");
  return static_cast<long long>(best) - static_cast<long long>(best_n);
}

/// Minimum eigenvalue of M(u, v) = P_{d(u,v)}(x) over the ball.
inline double gram_min_eig(double x, const Ball& ball) {
  const std::size_t n = ball.size();
  const auto values = poly_eval_all(2 * ball.radius, x, ball.params);
  Eigen::MatrixXd m(n, n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u; v < n; ++v)
      m(u, v) = m(v, u) = values[ball.distance(u, v)];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Deformed kernels

struct DeformedBallKernels {
  double c = 0.0;
  double x_c = 0.0;
  /// family.rows[h][x] is valid iff depth(x) + h <= R.
  SparseKernelFamily family;
  std::size_t interior_rows = 0;
  std::size_t omitted_rows = 0;
  double max_row_sum_residual = 0.0;
  std::size_t composition_checks = 0;
  double composition_residual = 0.0;
};

/// K~_h(x, {y}) = e^{c (d(y,B) - d(x,B))} / (P_h(x_c) w_h) on pairs at distance h.
/// Interior rows are checked for unit mass and for the composition rule
/// K~_i K~_j = sum_k p~_{i,j}^k K~_k with the deformed hypergroup coefficients.
inline DeformedBallKernels deform_ball_kernels(const Ball& ball, const BoundaryRay& ray, double c,
                                               bool check_composition = true) {
  const std::size_t n = ball.size();
  const std::size_t r = ball.radius;
  DeformedPolyHypergroup deformed(ball.params, c, 2 * r);
  DeformedBallKernels out;
  out.c = c;
  out.x_c = deformed.x_c();
  out.family.n_points = n;
  out.family.rows.assign(r + 1, std::vector<SparseRow>(n));

  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::vector<std::size_t>> spheres(r + 1);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t d = ball.distance(x, y);
      if (d <= r) spheres[d].push_back(y);
    }
    for (std::size_t h = 0; h <= r; ++h) {
      SparseRow& row = out.family.rows[h][x];
      if (!ball.interior_valid(x, h)) {
        row.valid = false;
        ++out.omitted_rows;
        continue;
      }
      ++out.interior_rows;
      const double norm = deformed.alpha0(h) * dt_haar_double(h, ball.params);
      double total = 0.0;
      for (auto y : spheres[h]) {
        const double w = std::exp(c * static_cast<double>(ray.horocycle[y] - ray.horocycle[x])) / norm;
        row.target.push_back(y);
        row.weight.push_back(w);
        total += w;
      }
      out.max_row_sum_residual = std::max(out.max_row_sum_residual, std::abs(total - 1.0));
    }
  }
  out.family.label = [words = ball.words](std::size_t x, std::size_t y) { return word_distance(words[x], words[y]); };

  if (!check_composition) return out;
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t budget = r - ball.depth(x);
    for (std::size_t i = 0; i <= budget; ++i)
      for (std::size_t j = 0; i + j <= budget; ++j) {
        std::map<std::size_t, double> lhs;
        const SparseRow& ri = out.family.rows[i][x];
        for (std::size_t t = 0; t < ri.target.size(); ++t) {
          const SparseRow& rj = out.family.rows[j][ri.target[t]];
          for (std::size_t u = 0; u < rj.target.size(); ++u) lhs[rj.target[u]] += ri.weight[t] * rj.weight[u];
        }
        std::map<std::size_t, double> rhs;
        for (const auto& [k, coeff] : deformed.g(i, j)) {
          const SparseRow& rk = out.family.rows[k][x];
          for (std::size_t u = 0; u < rk.target.size(); ++u) rhs[rk.target[u]] += coeff * rk.weight[u];
        }
        for (const auto& [y, v] : lhs) {
          auto it = rhs.find(y);
          out.composition_residual = std::max(out.composition_residual, std::abs(v - (it == rhs.end() ? 0.0 : it->second)));
        }
        for (const auto& [y, v] : rhs)
          if (!lhs.count(y)) out.composition_residual = std::max(out.composition_residual, std::abs(v));
        ++out.composition_checks;
      }
  }
  return out;
}

struct PushforwardComparison {
  /// e^{-2c} + (a-1) e^{2c}.
  double pf1_formula = 0.0;
  /// ((a-1) e^{2c} + 1)^2 / (a e^{2c}).
  double haar1_formula = 0.0;
  /// sum over S(root, 1) of e^{2c d(v,B)}.
  double pf1_ball = 0.0;
  /// 1 / p~_{1,1}^0 of the deformed polynomial hypergroup.
  double haar1_deformed = 0.0;
  bool differ = false;
};

/// Compares the pushforward of the invariant measure e^{2c d(v,B)} under
/// pi_root with the deformed Haar weight at 1 (homogeneous trees, b = 2).
inline PushforwardComparison pushforward_vs_haar(const DTParams& p, double c) {
  p.validate();
  if (p.b != 2) throw Error(ErrorKind::kUnsupportedParams, "pushforward comparison needs b = 2");
  PushforwardComparison out;
  const double a = p.a, e2c = std::exp(2 * c);
  out.pf1_formula = 1.0 / e2c + (a - 1) * e2c;
  out.haar1_formula = std::pow((a - 1) * e2c + 1, 2) / (a * e2c);

  const Ball ball = build_ball(p, 1);
  const BoundaryRay ray(ball);
  for (std::size_t v = 0; v < ball.size(); ++v)
    if (ball.depth(v) == 1) out.pf1_ball += std::exp(2 * c * static_cast<double>(ray.horocycle[v]));

  DeformedPolyHypergroup deformed(p, c, 2);
  out.haar1_deformed = 1.0 / deformed.g(1, 1).at(0);
  out.differ = std::abs(out.pf1_formula - out.haar1_formula) > kEqualityTol;
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_BALL_HPP_
