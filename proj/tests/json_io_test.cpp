#include <gtest/gtest.h>

#include <fstream>

#include "lagstab/errors.hpp"
#include "lagstab/json_io.hpp"
#include "test_support.hpp"

namespace lagstab {
namespace {

const PrimeField F3{3};

TEST(JsonIo, PolyRoundTrip) {
  const auto p = testing::poly(F3, {{-2, 1}, {0, 2}, {5, 1}});
  const Json j = poly_to_json(p);
  EXPECT_EQ(j.dump(), "[[-2,1],[0,2],[5,1]]");
  EXPECT_EQ(poly_from_json(j, F3), p);
  EXPECT_EQ(poly_from_json(Json::parse(R"([[1, "4"], [1, -1]])"), F3), testing::poly(F3, {{1, 3}}));
  EXPECT_THROW(poly_from_json(Json::parse("[[1]]"), F3), InvalidArgument);
  EXPECT_THROW(poly_from_json(Json::parse(R"([[0, "1/2"]])"), F3), InvalidArgument);
}

TEST(JsonIo, LatticeRoundTrip) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const Lattice l = lattice_from_matrix(testing::random_nonsingular(F3, 3, rng));
    const Json j = lattice_to_json(l);
    EXPECT_EQ(lattice_from_json(Json::parse(j.dump())), l);
    EXPECT_EQ(Json::parse(j.dump()).dump(), j.dump());
  }
}

TEST(JsonIo, LatticeFiles) {
  std::ifstream in(std::string(LAGSTAB_TEST_DATA) + "/stable_lattice.json");
  const Lattice l = lattice_from_json(Json::parse(in));
  EXPECT_EQ(l, lattice_from_matrix(testing::stable_example()));
}

TEST(JsonIo, MalformedMatrices) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"p": 2, "d": 2})")), InvalidArgument);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"p": 4, "d": 1, "basis": [[[[0,1]]]]})")), InvalidArgument);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"p": 2, "d": 2, "basis": [[[], []]]})")), InvalidArgument);
  EXPECT_THROW(lattice_from_json(Json::parse(R"({"p": 2, "d": 1, "basis": [[[]]]})")), SingularMatrix);
}

TEST(JsonIo, ReportsRoundTrip) {
  const auto rep = compare_report({2, 1}, {2, 3, 5}, XiParam::parse("1/4,-1/4"));
  const std::string text = to_json(rep).dump(2);
  EXPECT_EQ(Json::parse(text).dump(2), text);
  const Json j = Json::parse(text);
  EXPECT_EQ(j["quotient_poly"], Json::parse(R"(["1", "1", "0"])"));
  EXPECT_EQ(j["counts"]["counts"][0]["strata"]["stable"], 3);
  EXPECT_EQ(rationals_to_json({Rational(-3, 6)}).dump(), R"(["-1/2"])");
  EXPECT_EQ(subset_to_json({0, 2}).dump(), "[1,3]");
}

}  // namespace
}  // namespace lagstab
