#include <catch2/catch_amalgamated.hpp>

#include <fstream>

#include "sodforge/betti.hpp"
#include "json.hpp"

using namespace sodforge;

TEST_CASE("projective space Betti tables") {
  CHECK(betti_oracle(toy_point()) == 1);
  CHECK(betti_oracle(toy_projective_space(3)) == 4);
  CHECK(betti_table(toy_projective_space(2)) == BettiTable{1, 1, 1});
}

TEST_CASE("product convolution") {
  auto p1xp1 = toy_product(toy_projective_space(1), toy_projective_space(1));
  CHECK(betti_table(p1xp1) == BettiTable{1, 2, 1});
  auto p3xp1 = toy_product(toy_projective_space(3), toy_projective_space(1));
  CHECK(betti_oracle(p3xp1) == 8);
}

TEST_CASE("projective bundle multiplies the base") {
  CHECK(betti_oracle(toy_projective_bundle(toy_point(), 3)) == 3);
  auto over_p2 = toy_projective_bundle(toy_projective_space(2), 2);
  CHECK(betti_oracle(over_p2) == 6);
  CHECK(betti_table(over_p2) == BettiTable{1, 2, 2, 1});
}

TEST_CASE("blow-up Betti rule") {
  auto bl = toy_blowup(toy_projective_space(3), toy_projective_space(1), 2);
  CHECK(betti_table(bl) == BettiTable{1, 2, 2, 1});
  CHECK(betti_oracle(bl) == 6);

  auto bl_pt = toy_blowup(toy_projective_space(2), toy_point(), 2);
  CHECK(betti_table(bl_pt) == BettiTable{1, 2, 1});
  CHECK(betti_oracle(bl_pt) == 4);
}

TEST_CASE("blow-up along an empty center is the identity") {
  auto bl = toy_blowup(toy_projective_space(3), toy_empty(), 2);
  CHECK(betti_table(bl) == betti_table(toy_projective_space(3)));
}

TEST_CASE("divisor Euler characteristics against classical values") {
  // Hyperplane in P^3 is P^2.
  CHECK(betti_oracle(toy_divisor_hyperplane({3}, {1})) == 3);
  // Quadric surface in P^3 is P^1 x P^1.
  CHECK(betti_oracle(toy_divisor_hyperplane({3}, {2})) == 4);
  // A (1,1) curve in P^1 x P^1 is a P^1.
  CHECK(betti_oracle(toy_divisor_hyperplane({1, 1}, {1, 1})) == 2);
  // The incidence (1,1) divisor in P^3 x P^1.
  CHECK(betti_oracle(toy_divisor_hyperplane({3, 1}, {1, 1})) == 6);
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(toy_projective_space(0), ToyGeometryError);
  CHECK_THROWS_AS(toy_blowup(toy_projective_space(1), toy_point(), 2),
                  ToyGeometryError);
  CHECK_THROWS_AS(toy_divisor_hyperplane({3, 1}, {1}), ToyGeometryError);
  CHECK_THROWS_AS(betti_oracle(toy_divisor_hyperplane({2}, {0})),
                  ToyGeometryError);
  CHECK_THROWS_AS(betti_table(toy_divisor_hyperplane({3, 1}, {1, 1})),
                  ToyGeometryError);
}

TEST_CASE("committed fixtures match a fresh oracle run") {
  std::ifstream f(std::string(SODFORGE_FIXTURE_DIR) + "/betti_fixtures.json");
  REQUIRE(f.good());
  nlohmann::json fixtures = nlohmann::json::parse(f);

  CHECK(fixtures["bl_p1_p3"].get<long long>() ==
        betti_oracle(toy_blowup(toy_projective_space(3), toy_projective_space(1), 2)));
  CHECK(fixtures["bl_pt_p2"].get<long long>() ==
        betti_oracle(toy_blowup(toy_projective_space(2), toy_point(), 2)));
  CHECK(fixtures["p_o3_over_point"].get<long long>() ==
        betti_oracle(toy_projective_bundle(toy_point(), 3)));
  CHECK(fixtures["divisor_11_p3xp1"].get<long long>() ==
        betti_oracle(toy_divisor_hyperplane({3, 1}, {1, 1})));
}
