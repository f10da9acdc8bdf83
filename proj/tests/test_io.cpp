#include <gtest/gtest.h>

#include "hyperscheme/hyperscheme.hpp"
#include "hyperscheme/io.hpp"

namespace hs = hyperscheme;
using hs::Json;
using hs::Rational;

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(hs::parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(hs::parse_rational("-2"), Rational(-2));
  EXPECT_THROW(hs::parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(hs::parse_rational("x"), std::invalid_argument);
  EXPECT_EQ(hs::to_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(hs::rationalize(0.3333333333333333), Rational(1, 3));
}

TEST(SchemeFormat, ParsesPartitionAndKernels) {
  const Json j = Json::parse(R"({"n_points": 2, "relations": [[0, 1], [1, 0]],
                                 "kernels": [[[1, 0], [0, 1]], [[0, "1/1"], [1.0, 0]]]})");
  const auto f = hs::parse_scheme(j);
  EXPECT_EQ(f.partition.n_relations, 2u);
  ASSERT_TRUE(f.generalized.has_value());
  EXPECT_EQ(f.generalized->omega_x, (std::vector<double>{1.0, 1.0}));
  EXPECT_TRUE(hs::verify_generalized(*f.generalized).ok());
}

TEST(SchemeFormat, RejectsMalformed) {
  EXPECT_THROW(hs::parse_scheme(Json::parse(R"({"relations": [[0]]})")), hs::Error);
  EXPECT_THROW(hs::parse_scheme(Json::parse(R"({"n_points": 2, "relations": [[0, 1]]})")), hs::Error);
  EXPECT_THROW(hs::parse_scheme(Json::parse(R"({"n_points": 1, "relations": [[-1]]})")), hs::Error);
  EXPECT_THROW(hs::parse_scheme(Json::parse(R"({"n_points": 1, "relations": [[0]], "kernels": []})")), hs::Error);
}

TEST(SchemeFormat, RoundTrip) {
  const auto s = hs::verify_scheme(hs::RelationPartition::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}})).value();
  const auto gs = hs::canonical_generalized<Rational>(s);
  const auto back = hs::parse_scheme(hs::scheme_to_json(gs));
  ASSERT_TRUE(back.generalized.has_value());
  EXPECT_EQ(back.partition.rows(), gs.partition.rows());
  EXPECT_DOUBLE_EQ(back.generalized->kernels[1](0, 1), 0.5);
}

TEST(HypergroupFormat, ExactWhenAllEntriesRational) {
  const Json j = Json::parse(R"({"n": 2, "identity": 0, "involution": [0, 1],
                                 "conv": [[[1, 0], [0, 1]], [[0, 1], ["1/2", "1/2"]]]})");
  const auto f = hs::parse_hypergroup(j);
  ASSERT_TRUE(f.exact.has_value());
  EXPECT_EQ((*f.exact)(1, 1, 0), Rational(1, 2));
  const auto back = hs::parse_hypergroup(hs::hypergroup_to_json(*f.exact));
  EXPECT_TRUE(back.exact->conv == f.exact->conv);
}

TEST(HypergroupFormat, FloatsGiveNumericOnly) {
  const Json j = Json::parse(R"({"n": 2, "identity": 0, "involution": [0, 1],
                                 "conv": [[[1, 0], [0, 1]], [[0, 1], [0.5, 0.5]]]})");
  const auto f = hs::parse_hypergroup(j);
  EXPECT_FALSE(f.exact.has_value());
  EXPECT_DOUBLE_EQ(f.numeric(1, 1, 1), 0.5);
  EXPECT_THROW(hs::parse_hypergroup(Json::parse(R"({"n": 2, "identity": 0, "involution": [0, 1], "conv": []})")),
               hs::Error);
}

TEST(GroupFormat, TableAndIndexList) {
  const auto t = hs::parse_group(Json::parse(R"({"table": [[0, 1], [1, 0]]})"));
  EXPECT_EQ(t.size(), 2u);
  EXPECT_EQ(hs::parse_index_list("0, 3"), (std::vector<std::size_t>{0, 3}));
  EXPECT_THROW(hs::parse_index_list("0,x"), hs::Error);
  EXPECT_THROW(hs::parse_index_list(""), hs::Error);
}
