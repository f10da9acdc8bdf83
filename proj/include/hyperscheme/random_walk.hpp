#ifndef HYPERSCHEME_RANDOM_WALK_HPP_
#define HYPERSCHEME_RANDOM_WALK_HPP_

// Discrete-time random walks: convolution powers on hypergroups, simulated
// walks on kernel families, and the projection of walks onto the hypergroup.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ball.hpp"
#include "errors.hpp"
#include "hypergroup.hpp"
#include "kernel_family.hpp"
#include "poly_hypergroup.hpp"

namespace hyperscheme {

/// Counter-based SplitMix64 generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Finitely supported probability vector over relation labels.
class StepDistribution {
 public:
  StepDistribution() = default;
  explicit StepDistribution(std::vector<std::pair<std::size_t, double>> atoms) : atoms_(std::move(atoms)) {
    double total = 0.0;
    for (const auto& [h, w] : atoms_) {
      if (!(w >= 0.0)) throw Error(ErrorKind::kInvalidInput, "negative step probability");
      total += w;
    }
    if (atoms_.empty() || std::abs(total - 1.0) > 1e-12)
      throw Error(ErrorKind::kInvalidInput, "step distribution must sum to 1");
    std::sort(atoms_.begin(), atoms_.end());
    double run = 0.0;
    for (const auto& [h, w] : atoms_) cumulative_.push_back(run += w);
  }

  static StepDistribution point(std::size_t h) { return StepDistribution({{h, 1.0}}); }

  const std::vector<std::pair<std::size_t, double>>& atoms() const { return atoms_; }
  std::size_t max_label() const { return atoms_.back().first; }

  std::size_t sample(double u) const {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u * cumulative_.back());
    return atoms_[std::min<std::size_t>(it - cumulative_.begin(), atoms_.size() - 1)].first;
  }

  template <typename T>
  std::vector<T> dense(std::size_t n) const {
    std::vector<T> out(n, T(0));
    for (const auto& [h, w] : atoms_) {
      if (h >= n) throw Error(ErrorKind::kInvalidInput, "step label out of range");
      out[h] += T(w);
    }
    return out;
  }

  bool operator==(const StepDistribution& o) const { return atoms_ == o.atoms_; }

 private:
  std::vector<std::pair<std::size_t, double>> atoms_;
  std::vector<double> cumulative_;
};

// ---------------------------------------------------------------------------
// Convolution powers

template <typename T>
std::vector<T> convolution_power(const FiniteHypergroup<T>& h, const std::vector<T>& mu, std::size_t t) {
  if (mu.size() != h.size()) throw Error(ErrorKind::kInvalidInput, "step distribution has wrong length");
  std::vector<T> out = h.point(h.identity);
  for (std::size_t s = 0; s < t; ++s) out = h.convolve(out, mu);
  return out;
}

inline constexpr std::size_t kDefaultSupportCap = 256;

/// mu^{*t} on N_0; throws SupportCap when t * max(supp mu) exceeds `cap`.
inline SparseMeasure<Rational> convolution_power(const PolyHypergroup& h, const SparseMeasure<Rational>& mu,
                                                 std::size_t t, std::size_t cap = kDefaultSupportCap) {
  if (mu.empty()) throw Error(ErrorKind::kInvalidInput, "empty step distribution");
  if (t * mu.rbegin()->first > cap)
    throw Error(ErrorKind::kSupportCap, "support of mu^{*t} would exceed " + std::to_string(cap));
  SparseMeasure<Rational> out{{0, Rational(1)}};
  for (std::size_t s = 0; s < t; ++s) out = h.convolve(out, mu);
  return out;
}

inline SparseMeasure<double> convolution_power(const DeformedPolyHypergroup& h, const SparseMeasure<double>& mu,
                                               std::size_t t) {
  if (mu.empty()) throw Error(ErrorKind::kInvalidInput, "empty step distribution");
  if (t * mu.rbegin()->first > h.max_degree())
    throw Error(ErrorKind::kSupportCap, "support of mu^{*t} would exceed " + std::to_string(h.max_degree()));
  SparseMeasure<double> out{{0, 1.0}};
  for (std::size_t s = 0; s < t; ++s) out = h.convolve(out, mu);
  return out;
}

// ---------------------------------------------------------------------------
// Simulation

struct WalkResult {
  /// Final-state frequencies over X (sum to 1).
  std::vector<double> empirical;
  std::vector<std::uint64_t> counts;
  std::size_t start = 0;
  std::size_t steps = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  StepDistribution mu;
};

/// Each trial t uses the stream SplitMix64(seed + t): sample h ~ mu, then
/// y ~ K_h(x, .). Trials are split into contiguous blocks per thread; integer
/// counts make the result independent of the thread count.
inline WalkResult simulate_walk(const SparseKernelFamily& family, const StepDistribution& mu, std::size_t start,
                                std::size_t steps, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  if (start >= family.n_points) throw Error(ErrorKind::kInvalidInput, "start point out of range");
  if (mu.max_label() >= family.n_relations()) throw Error(ErrorKind::kInvalidInput, "step label out of range");
  if (trials == 0) throw Error(ErrorKind::kInvalidInput, "need at least one trial");
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));

  auto run_block = [&](std::size_t lo, std::size_t hi, std::vector<std::uint64_t>& counts) {
    for (std::size_t t = lo; t < hi; ++t) {
      SplitMix64 rng(seed + t);
      std::size_t x = start;
      for (std::size_t s = 0; s < steps; ++s) {
        const SparseRow& row = family.row(mu.sample(rng.uniform()), x);
        if (!row.valid)
          throw Error(ErrorKind::kWalkWouldExitBall, "walk reached a truncated row at point " + std::to_string(x));
        double u = rng.uniform(), run = 0.0;
        std::size_t pick = row.target.size() - 1;
        for (std::size_t i = 0; i < row.target.size(); ++i) {
          run += row.weight[i];
          if (u < run) {
            pick = i;
            break;
          }
        }
        x = row.target[pick];
      }
      ++counts[x];
    }
  };

  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(family.n_points, 0));
  if (threads == 1) {
    run_block(0, trials, partial[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned k = 0; k < threads; ++k)
      pool.emplace_back([&, k] {
        try {
          run_block(trials * k / threads, trials * (k + 1) / threads, partial[k]);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  WalkResult out;
  out.counts.assign(family.n_points, 0);
  for (const auto& p : partial)
    for (std::size_t x = 0; x < family.n_points; ++x) out.counts[x] += p[x];
  out.empirical.resize(family.n_points);
  for (std::size_t x = 0; x < family.n_points; ++x)
    out.empirical[x] = static_cast<double>(out.counts[x]) / static_cast<double>(trials);
  out.start = start;
  out.steps = steps;
  out.trials = trials;
  out.seed = seed;
  out.mu = mu;
  return out;
}

/// Walk from the root of a deformed (or plain, c = 0) ball. Refuses
/// configurations where steps * max(supp mu) > R.
inline WalkResult simulate_ball_walk(const Ball& ball, const DeformedBallKernels& kernels, const StepDistribution& mu,
                                     std::size_t steps, std::size_t trials, std::uint64_t seed, unsigned threads = 1) {
  if (steps * mu.max_label() > ball.radius)
    throw Error(ErrorKind::kWalkWouldExitBall, std::to_string(steps) + " steps of size up to " +
                                                   std::to_string(mu.max_label()) + " can leave radius " +
                                                   std::to_string(ball.radius));
  return simulate_walk(kernels.family, mu, 0, steps, trials, seed, threads);
}

// ---------------------------------------------------------------------------
// Exact propagation and projection

/// Distribution of Z_steps started at `start`, pushed through the kernels.
inline std::vector<double> propagate(const SparseKernelFamily& family, const StepDistribution& mu, std::size_t start,
                                     std::size_t steps) {
  std::vector<double> dist(family.n_points, 0.0);
  dist.at(start) = 1.0;
  for (std::size_t s = 0; s < steps; ++s) {
    std::vector<double> next(family.n_points, 0.0);
    for (const auto& [h, w] : mu.atoms()) {
      const auto pushed = family.push(dist, h);
      for (std::size_t x = 0; x < family.n_points; ++x) next[x] += w * pushed[x];
    }
    dist = std::move(next);
  }
  return dist;
}

/// Image of a distribution on X under y -> pi(start, y).
inline std::vector<double> project(const SparseKernelFamily& family, std::size_t start, const std::vector<double>& dist,
                                   std::size_t n_labels) {
  std::vector<double> out(n_labels, 0.0);
  for (std::size_t y = 0; y < family.n_points; ++y) {
    if (dist[y] == 0.0) continue;
    const std::size_t l = family.label(start, y);
    if (l >= n_labels) throw Error(ErrorKind::kInvalidInput, "label beyond the hypergroup support");
    out[l] += dist[y];
  }
  return out;
}

inline double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::max(p.size(), q.size()); ++i)
    s += std::abs((i < p.size() ? p[i] : 0.0) - (i < q.size() ? q[i] : 0.0));
  return 0.5 * s;
}

struct ProjectionCheck {
  /// Total variation between the projected empirical law and mu^{*steps}.
  double tv = 0.0;
  std::vector<double> empirical_projection;
  /// Kernel propagation, then projection.
  std::vector<double> exact_projection;
  std::vector<double> convolution;
  /// max |exact_projection - convolution|.
  double exact_residual = 0.0;
};

/// Compares a simulated walk with the hypergroup law `convolution` =
/// mu^{*steps} (dense over labels).
inline ProjectionCheck projection_check(const WalkResult& walk, const SparseKernelFamily& family,
                                        const StepDistribution& mu, std::size_t steps,
                                        const std::vector<double>& convolution) {
  if (walk.steps != steps || !(walk.mu == mu) || walk.empirical.size() != family.n_points)
    throw Error(ErrorKind::kParameterMismatch, "walk was produced with different parameters");
  ProjectionCheck out;
  out.convolution = convolution;
  out.empirical_projection = project(family, walk.start, walk.empirical, convolution.size());
  out.exact_projection = project(family, walk.start, propagate(family, mu, walk.start, steps), convolution.size());
  out.tv = total_variation(out.empirical_projection, convolution);
  for (std::size_t i = 0; i < convolution.size(); ++i)
    out.exact_residual = std::max(out.exact_residual, std::abs(out.exact_projection[i] - convolution[i]));
  return out;
}

template <typename T>
ProjectionCheck projection_check(const WalkResult& walk, const SparseKernelFamily& family, const FiniteHypergroup<T>& h,
                                 const StepDistribution& mu, std::size_t steps) {
  const auto law = convert<double>(convolution_power(h, mu.dense<T>(h.size()), steps));
  return projection_check(walk, family, mu, steps, law);
}

/// Law of mu^{*steps} on the undeformed polynomial hypergroup, computed in
/// exact arithmetic, as a dense vector over 0..len-1.
inline std::vector<double> poly_convolution_law(const DTParams& p, const StepDistribution& mu, std::size_t steps,
                                                std::size_t len) {
  SparseMeasure<Rational> m;
  for (const auto& [h, w] : mu.atoms()) m[h] += rationalize(w, 1'000'000'000);
  const PolyHypergroup hg(p);
  const auto law = convolution_power(hg, m, steps);
  std::vector<double> out(len, 0.0);
  for (const auto& [k, v] : law) {
    if (k >= len) throw Error(ErrorKind::kInvalidInput, "convolution law exceeds the label range");
    out[k] = to_double(v);
  }
  return out;
}

/// Law of mu^{*steps} on the (possibly deformed) polynomial hypergroup as a
/// dense vector over 0..len-1.
inline std::vector<double> ball_convolution_law(const DTParams& p, double c, const StepDistribution& mu,
                                                std::size_t steps, std::size_t len) {
  SparseMeasure<double> m;
  for (const auto& [h, w] : mu.atoms()) m[h] += w;
  const DeformedPolyHypergroup deformed(p, c, std::max<std::size_t>(len, steps * mu.max_label()));
  const auto law = convolution_power(deformed, m, steps);
  std::vector<double> out(len, 0.0);
  for (const auto& [k, v] : law) {
    if (k >= len) throw Error(ErrorKind::kInvalidInput, "convolution law exceeds the label range");
    out[k] = v;
  }
  return out;
}

}  // namespace hyperscheme

#endif  // HYPERSCHEME_RANDOM_WALK_HPP_
