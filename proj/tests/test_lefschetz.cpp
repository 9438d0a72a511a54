#include <catch2/catch_amalgamated.hpp>

#include "sodforge/lefschetz.hpp"
#include "test_support.hpp"

using namespace sodforge;

namespace {
LefschetzStructure make(std::vector<std::vector<std::string>> names) {
  std::vector<std::vector<CategorySymbol>> comps;
  for (auto& comp : names) {
    std::vector<CategorySymbol> syms;
    for (auto& n : comp) syms.emplace_back(n);
    comps.push_back(std::move(syms));
  }
  return LefschetzStructure("D(T)", duality_lattice(false), kClassHp,
                            std::move(comps));
}
}  // namespace

TEST_CASE("chain validation") {
  CHECK(validate_lefschetz(make({{"S", "Z"}, {"S", "Z"}, {"Z"}})).ok);
  CHECK(validate_lefschetz(make({{"S"}})).ok);

  auto bad = validate_lefschetz(make({{"S"}, {"S", "Z"}}));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.first_violation.has_value());
  CHECK(*bad.first_violation == 1);
}

TEST_CASE("right and left forms") {
  auto L = make({{"S", "Z"}, {"Z"}});
  Sod right = right_form(L);
  REQUIRE(right.size() == 3);
  CHECK(right.blocks()[0].symbol.name == "S");
  CHECK(right.blocks()[1].symbol.name == "Z");
  CHECK(right.blocks()[1].twist == Twist{});
  CHECK(right.blocks()[2].symbol.name == "Z");
  CHECK(right.blocks()[2].twist == Twist::single(kClassHp, 1));

  Sod left = left_form(L);
  REQUIRE(left.size() == 3);
  CHECK(left.blocks()[0].symbol.name == "Z");
  CHECK(left.blocks()[0].twist == Twist::single(kClassHp, -1));
  CHECK(left.blocks()[1].symbol.name == "S");
  CHECK(left.blocks()[2].symbol.name == "Z");

  auto single = make({{"S"}});
  CHECK(sod_equal(right_form(single), left_form(single)));
}

TEST_CASE("invalid chains cannot be expanded") {
  auto bad = make({{"S"}, {"S", "Z"}});
  CHECK_THROWS_AS(right_form(bad), ValidationError);
  CHECK_THROWS_AS(left_form(bad), ValidationError);
  CHECK_THROWS_AS(grid_of(bad), ValidationError);
}

TEST_CASE("trailing empty components are trimmed, empty symbols dropped") {
  CategorySymbol s("S");
  CategorySymbol dead = CategorySymbol::empty_category("Z");
  LefschetzStructure L("D(T)", duality_lattice(false), kClassHp,
                       {{s, dead}, {dead}, {dead}});
  CHECK(L.length() == 1);
  CHECK(L.components()[0].size() == 1);
}

TEST_CASE("grid occupancy and staircase") {
  auto L = make({{"S", "Z"}, {"S", "Z"}, {"Z"}});
  Grid g = grid_of(L);
  REQUIRE(g.rows == std::vector<std::string>{"S", "Z"});
  CHECK(g.cells[0] == std::vector<bool>{true, true, false});
  CHECK(g.cells[1] == std::vector<bool>{true, true, true});
  CHECK(is_staircase(g));

  Grid empty = grid_of(make({}));
  CHECK(empty.rows.empty());
  CHECK(empty.columns() == 0);

  Grid constant = grid_of(make({{"S"}, {"S"}, {"S"}}));
  CHECK(constant.rows.size() == 1);
  CHECK(constant.cells[0] == std::vector<bool>{true, true, true});
}

TEST_CASE("grid round-trips through a structure") {
  testing::Rng rng(7100);
  for (int i = 0; i < 50; ++i) {
    LefschetzStructure L = testing::random_lefschetz(rng);
    Grid g = grid_of(L);
    CHECK(is_staircase(g));
    LefschetzStructure back =
        lefschetz_from_grid(g, L.ambient(), L.lattice(), L.twist_class());
    Grid g2 = grid_of(back);
    CHECK(g2.rows == g.rows);
    CHECK(g2.cells == g.cells);
  }
}

TEST_CASE("non-staircase grids are rejected") {
  Grid g;
  g.rows = {"S"};
  g.cells = {{true, false, true}};
  CHECK_FALSE(is_staircase(g));
  CHECK_THROWS_AS(lefschetz_from_grid(g, "D(T)", duality_lattice(false), kClassHp),
                  ValidationError);
}

TEST_CASE("left and right forms agree up to per-component twists") {
  testing::Rng rng(7101);
  for (int i = 0; i < 50; ++i) {
    LefschetzStructure L = testing::random_lefschetz(rng);
    Sod right = right_form(L);
    Sod left = left_form(L);

    std::size_t expected = 0;
    for (const auto& comp : L.components()) expected += comp.size();
    CHECK(right.size() == expected);
    CHECK(left.size() == expected);

    // Shifting each left block A_i(-i) by 2i lands on the right multiset.
    std::vector<Block> shifted;
    const auto& comps = L.components();
    for (std::size_t i = comps.size(); i-- > 1;)
      for (const auto& sym : comps[i])
        shifted.push_back(
            Block(sym, Twist::single(L.twist_class(), static_cast<int>(i))));
    if (!comps.empty())
      for (const auto& sym : comps[0]) shifted.push_back(Block(sym));
    Sod relabelled(left.ambient(), left.lattice(), std::move(shifted));
    CHECK(sod_equal(relabelled, right, SodCompare::Multiset));
  }
}
