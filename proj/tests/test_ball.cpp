#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "hyperscheme/hyperscheme.hpp"

namespace hs = hyperscheme;

TEST(Ball, MetricMatchesBreadthFirstSearch) {
  const auto ball = hs::build_ball({3, 3}, 4);
  for (std::size_t src : {std::size_t{0}, std::size_t{5}, ball.size() - 1}) {
    const auto dist = ball.bfs_distances(src);
    for (std::size_t v = 0; v < ball.size(); ++v) EXPECT_EQ(ball.distance(src, v), dist[v]);
  }
}

TEST(Ball, VerticesAndCliques) {
  const hs::DTParams p{3, 4};
  const auto ball = hs::build_ball(p, 3);
  EXPECT_EQ(ball.adjacency[0].size(), std::size_t(p.a * (p.b - 1)));
  EXPECT_DOUBLE_EQ(hs::ball_size_estimate(p, 3), static_cast<double>(ball.size()));
  for (std::size_t v = 1; v < ball.size(); ++v) EXPECT_EQ(ball.depth(ball.parent[v]) + 1, ball.depth(v));
}

TEST(Ball, CapIsEnforced) {
  EXPECT_THROW(hs::build_ball({6, 6}, 8, 1000), hs::Error);
  setenv("HYPERSCHEME_BALL_CAP", "50", 1);
  EXPECT_EQ(hs::ball_cap_from_env(), 50u);
  EXPECT_THROW(hs::build_ball({3, 2}, 6), hs::Error);
  unsetenv("HYPERSCHEME_BALL_CAP");
  EXPECT_EQ(hs::ball_cap_from_env(), hs::kDefaultBallCap);
}

TEST(BoundaryDistance, RayAndHorocycles) {
  const auto ball = hs::build_ball({3, 2}, 4);
  const hs::BoundaryRay ray(ball);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(ray.horocycle[ball.ray[k]], -static_cast<long long>(k));
  for (std::size_t v = 0; v < ball.size(); ++v) {
    EXPECT_EQ(hs::boundary_distance(ball, v), ray.horocycle[v]);
    const long long step = std::llabs(ray.horocycle[v] - ray.horocycle[ball.parent[v == 0 ? 0 : v]]);
    EXPECT_LE(step, 1);
  }
}

TEST(BoundaryDistance, TiesAreReported) {
  const auto ball = hs::build_ball({2, 3}, 3);
  bool threw = false;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    try {
      hs::boundary_distance(ball, v);
    } catch (const hs::Error& e) {
      threw = threw || e.kind() == hs::ErrorKind::kNonUniqueMinimizer;
    }
  }
  EXPECT_TRUE(threw);
}

TEST(Gram, PositiveInsideAndNegativeOutside) {
  for (const hs::DTParams p : {hs::DTParams{3, 2}, hs::DTParams{2, 4}}) {
    const auto [s0, s1] = hs::special_points(p);
    const auto ball = hs::build_ball(p, 3);
    for (int i = 0; i <= 4; ++i) EXPECT_GE(hs::gram_min_eig(s0 + (s1 - s0) * i / 4.0, ball), hs::kEigenFloor);
    EXPECT_LT(hs::gram_min_eig(s1 + 0.2, ball), -1e-6);
  }
}

TEST(DeformedKernels, RowsSumToOneAndCompose) {
  const auto ball = hs::build_ball({3, 2}, 5);
  const hs::BoundaryRay ray(ball);
  for (double c : {0.0, 0.3, -0.5 * std::log(2.0)}) {
    const auto k = hs::deform_ball_kernels(ball, ray, c);
    EXPECT_GT(k.interior_rows, 0u);
    EXPECT_GT(k.composition_checks, 0u);
    EXPECT_LE(k.max_row_sum_residual, 1e-12);
    EXPECT_LE(k.composition_residual, 1e-10);
  }
}

TEST(DeformedKernels, UndeformedRowsAreUniformOnSpheres) {
  const auto ball = hs::build_ball({3, 2}, 4);
  const auto k = hs::deform_ball_kernels(ball, hs::BoundaryRay(ball), 0.0, false);
  const auto& row = k.family.row(2, 0);
  ASSERT_TRUE(row.valid);
  EXPECT_EQ(row.target.size(), ball.sphere(0, 2).size());
  for (double w : row.weight) EXPECT_NEAR(w, 1.0 / hs::dt_haar_double(2, {3, 2}), 1e-14);
  EXPECT_FALSE(k.family.row(1, ball.size() - 1).valid);
}

TEST(Pushforward, FormulasAndDifference) {
  for (double c : {0.0, 0.3, -0.5 * std::log(2.0)}) {
    const auto r = hs::pushforward_vs_haar({3, 2}, c);
    EXPECT_NEAR(r.pf1_formula, r.pf1_ball, 1e-10);
    EXPECT_NEAR(r.haar1_formula, r.haar1_deformed, 1e-10);
    EXPECT_EQ(r.differ, c != 0.0);
  }
  EXPECT_THROW(hs::pushforward_vs_haar({3, 3}, 0.3), hs::Error);
}
