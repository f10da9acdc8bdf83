#include <gtest/gtest.h>

#include "hyperscheme/hyperscheme.hpp"
#include "oracles.hpp"

namespace hs = hyperscheme;
using hs::Rational;

TEST(RelationPartition, RejectsRaggedAndNegative) {
  EXPECT_THROW(hs::RelationPartition::from_rows({{0, 1}, {1}}), hs::Error);
  EXPECT_THROW(hs::RelationPartition::from_rows({{0, -1}, {1, 0}}), hs::Error);
  EXPECT_THROW(hs::RelationPartition::from_rows({}), hs::Error);
  EXPECT_THROW(hs::RelationPartition::from_rows({{0, 3}, {3, 0}}, 2), hs::Error);
}

TEST(VerifyScheme, CompleteGraphIntersectionNumbers) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const auto part = oracle::complete_partition(n);
    const auto s = hs::verify_scheme(part).value();
    const auto brute = oracle::brute_intersections(part);
    ASSERT_TRUE(brute.has_value());
    for (const auto& [key, count] : *brute) EXPECT_EQ(s.p(key[0], key[1], key[2]), count);
    EXPECT_EQ(s.valency[1], static_cast<std::int64_t>(n - 1));
    EXPECT_TRUE(s.symmetric());
    EXPECT_TRUE(s.commutative());
  }
}

TEST(VerifyScheme, CyclicGroupIsNonSymmetricButCommutative) {
  const auto part = oracle::cyclic_partition(5);
  const auto s = hs::verify_scheme(part).value();
  EXPECT_FALSE(s.symmetric());
  EXPECT_TRUE(s.commutative());
  EXPECT_TRUE(s.unimodular());
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(s.involution[i], (5 - i) % 5);
  const auto brute = oracle::brute_intersections(part);
  for (const auto& [key, count] : *brute) EXPECT_EQ(s.p(key[0], key[1], key[2]), count);
}

TEST(VerifyScheme, IdentityRelationRelabelledToZero) {
  const auto part = hs::RelationPartition::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto s = hs::verify_scheme(part).value();
  EXPECT_EQ(s.relabel[1], 0u);
  EXPECT_EQ(s.relabel[0], 1u);
  EXPECT_EQ(s.partition(0, 0), 0u);
  EXPECT_EQ(s.valency[1], 2);
}

TEST(VerifyScheme, ReportsEachAxiom) {
  const auto nonempty = hs::verify_scheme(hs::RelationPartition::from_rows({{0, 1}, {1, 0}}, 3));
  ASSERT_FALSE(nonempty);
  EXPECT_EQ(nonempty.violation().axiom, hs::Axiom::kNonEmpty);

  const auto diagonal = hs::verify_scheme(hs::RelationPartition::from_rows({{0, 1}, {1, 1}}));
  ASSERT_FALSE(diagonal);
  EXPECT_EQ(diagonal.violation().axiom, hs::Axiom::kDiagonal);

  const auto involution = hs::verify_scheme(hs::RelationPartition::from_rows({{0, 1, 1}, {2, 0, 1}, {1, 1, 0}}));
  ASSERT_FALSE(involution);
  EXPECT_EQ(involution.violation().axiom, hs::Axiom::kInvolution);

  const auto counting = hs::verify_scheme(hs::RelationPartition::from_rows({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}));
  ASSERT_FALSE(counting);
  EXPECT_EQ(counting.violation().axiom, hs::Axiom::kCounting);
  EXPECT_FALSE(oracle::brute_intersections(hs::RelationPartition::from_rows({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}})));
}

TEST(DoubleCosets, S3OverTranspositionGivesK3) {
  const auto cs = hs::from_double_cosets(oracle::s3_table(), {0, 1});
  EXPECT_EQ(cs.scheme.n_points(), 3u);
  EXPECT_EQ(cs.scheme.n_relations(), 2u);
  EXPECT_EQ(cs.scheme.valency, (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(cs.scheme.p(1, 1, 1), 1);
  EXPECT_EQ(cs.scheme.p(1, 1, 0), 2);
  EXPECT_EQ(cs.double_coset_of[0], 0u);
  EXPECT_EQ(cs.double_coset_of[1], 0u);
}

TEST(DoubleCosets, TrivialSubgroupGivesRegularScheme) {
  const auto cs = hs::from_double_cosets(oracle::cyclic_table(4), {0});
  EXPECT_EQ(cs.scheme.n_points(), 4u);
  EXPECT_EQ(cs.scheme.n_relations(), 4u);
  for (auto v : cs.scheme.valency) EXPECT_EQ(v, 1);
}

TEST(DoubleCosets, Errors) {
  EXPECT_THROW(hs::from_double_cosets(oracle::s3_table(), {1}), hs::Error);
  EXPECT_THROW(hs::from_double_cosets(oracle::s3_table(), {0, 3}), hs::Error);
  hs::GroupTable broken = oracle::cyclic_table(3);
  broken[1][1] = 1;
  EXPECT_THROW(hs::from_double_cosets(broken, {0}), hs::Error);
}

namespace {

hs::GeneralizedScheme<double> k3_generalized() {
  const auto s = hs::verify_scheme(oracle::complete_partition(3)).value();
  auto q = hs::canonical_generalized<Rational>(s);
  hs::GeneralizedScheme<double> out{q.partition, {}, hs::convert<double>(q.omega_x)};
  for (const auto& k : q.kernels) out.kernels.push_back(hs::convert<double>(k));
  return out;
}

}  // namespace

TEST(VerifyGeneralized, CanonicalK3Accepted) {
  const auto v = hs::verify_generalized(k3_generalized()).value();
  EXPECT_NEAR(v.coefficients(1, 1, 0), 0.5, 1e-12);
  EXPECT_NEAR(v.coefficients(1, 1, 1), 0.5, 1e-12);
  EXPECT_TRUE(hs::finite_rigidity_check(k3_generalized()));
}

TEST(VerifyGeneralized, ExactCoefficientsMatchMatrixProduct) {
  const auto s = hs::verify_scheme(oracle::cyclic_partition(6)).value();
  const auto gs = hs::canonical_generalized<Rational>(s);
  const auto v = hs::verify_generalized(gs).value();
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const auto prod = gs.kernels[i] * gs.kernels[j];
      hs::Matrix<Rational> sum(6, 6);
      for (std::size_t k = 0; k < 6; ++k) sum += gs.kernels[k].scaled(v.coefficients(i, j, k));
      EXPECT_TRUE(prod == sum);
    }
}

TEST(VerifyGeneralized, IdentityKernelViolation) {
  auto gs = k3_generalized();
  gs.kernels[0](0, 0) = 0.5;
  gs.kernels[0](0, 1) = 0.5;
  const auto v = hs::verify_generalized(gs);
  ASSERT_FALSE(v);
  EXPECT_EQ(hs::axiom_number(v.violation().axiom), 4);
}

TEST(VerifyGeneralized, NonSymmetricPerturbationBreaksAdjoint) {
  auto gs = k3_generalized();
  auto& k = gs.kernels[1];
  k(0, 1) = 0.7;
  k(0, 2) = 0.3;
  k(1, 2) = 0.7;
  k(1, 0) = 0.3;
  k(2, 0) = 0.7;
  k(2, 1) = 0.3;
  const auto v = hs::verify_generalized(gs);
  ASSERT_FALSE(v);
  EXPECT_EQ(hs::axiom_number(v.violation().axiom), 5);
}

TEST(VerifyGeneralized, SupportAndStochasticViolations) {
  auto gs = k3_generalized();
  gs.kernels[1](0, 1) = 0.6;
  EXPECT_EQ(hs::verify_generalized(gs).violation().axiom, hs::Axiom::kStochastic);
  gs = k3_generalized();
  gs.kernels[1](0, 0) = 0.5;
  gs.kernels[1](0, 1) = 0.5;
  gs.kernels[1](0, 2) = 0.0;
  EXPECT_FALSE(hs::verify_generalized(gs).ok());
}

TEST(FiniteRigidity, DoubleCosetKernels) {
  const auto cs = hs::from_double_cosets(oracle::s3_table(), {0, 1});
  const auto gs = hs::canonical_generalized<Rational>(cs.scheme);
  EXPECT_TRUE(hs::finite_rigidity_check(gs));
  const auto expected = oracle::renormalized_adjacency(cs.scheme.partition);
  for (std::size_t i = 0; i < expected.size(); ++i)
    EXPECT_EQ(hs::max_abs_diff(hs::convert<double>(gs.kernels[i]), expected[i]), 0.0);
}

TEST(FiniteRigidity, RandomizedSearchFindsNoCounterexample) {
  for (const auto& part : {oracle::complete_partition(3), oracle::cyclic_partition(4), oracle::complete_partition(4)}) {
    const auto r = oracle::perturbation_search(part, 400, 11);
    EXPECT_EQ(r.attempts, 400u);
    EXPECT_EQ(r.accepted_noncanonical, 0u);
    EXPECT_EQ(r.rigidity_false, 0u);
  }
}

TEST(Relabeled, PermutesKernelsWithLabels) {
  const auto part = hs::RelationPartition::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  hs::GeneralizedScheme<double> gs{part, oracle::renormalized_adjacency(part), {1.0, 1.0, 1.0}};
  const auto v = hs::verify_generalized(gs).value();
  const auto r = hs::relabeled(gs, v.scheme.relabel);
  EXPECT_EQ(r.partition(0, 0), 0u);
  EXPECT_EQ(r.kernels[0](0, 0), 1.0);
  EXPECT_TRUE(hs::verify_generalized(r).ok());
}

TEST(Translation, UnimodularSchemesSatisfyBoth) {
  for (const auto& part : {oracle::complete_partition(4), oracle::cyclic_partition(5)}) {
    const auto tp = hs::translation_property_check(hs::verify_scheme(part).value());
    EXPECT_TRUE(tp.t1);
    EXPECT_TRUE(tp.t2);
  }
  const auto cs = hs::from_double_cosets(oracle::s3_table(), {0, 1});
  const auto tp = hs::translation_property_check(cs.scheme);
  EXPECT_TRUE(tp.t1 && tp.t2);
}

TEST(Translation, T2ReformulationOnCanonicalKernels) {
  const auto s = hs::verify_scheme(oracle::complete_partition(5)).value();
  const auto gs = hs::canonical_generalized<Rational>(s);
  const auto h = hs::from_scheme(s);
  const auto t2 = hs::t2_reformulation(gs, hs::haar(h).left);
  EXPECT_TRUE(t2.holds);
  EXPECT_EQ(t2.scale, Rational(1));
  EXPECT_EQ(t2.residual, 0.0);
}
