#include <catch2/catch_amalgamated.hpp>

#include "sodforge/sod.hpp"
#include "test_support.hpp"

using namespace sodforge;

TEST_CASE("empty categories are elided at construction") {
  auto L = duality_lattice(false);
  Sod s("D(T)", L,
        {Block(CategorySymbol("D(S)")), Block(CategorySymbol::empty_category()),
         Block(CategorySymbol("D(Z)"))});
  CHECK(s.size() == 2);

  // A box factor that is the zero category kills the block too.
  Sod t("D(T)", L,
        {Block(CategorySymbol("A_1")).boxed(CategorySymbol::empty_category("D(X~)"))});
  CHECK(t.empty());
}

TEST_CASE("block equality ignores annotations and normalizes twists") {
  auto L = duality_lattice(false);
  Block a = Block(CategorySymbol("D(Z)"), Twist::single(kClassE, -1)).annotated("Rj_*");
  Block b = Block(CategorySymbol("D(Z)"),
                  Twist::single(kClassHp, 1) + Twist::single(kClassHK, -1));
  Sod sa("D(T)", L, {a});
  Sod sb("D(T)", L, {b});
  CHECK(sod_equal(sa, sb, SodCompare::Ordered));
}

TEST_CASE("absorbed classes are erased from block twists") {
  auto L = duality_lattice(false);
  CategorySymbol xt = CategorySymbol("D(X~)").absorbing({kClassHK});
  Sod s("D(T)", L, {Block(xt, Twist::single(kClassE, -2))});
  // -2E = 2H' - 2H_K and the H_K part is absorbed.
  CHECK(s.blocks()[0].twist == Twist::single(kClassHp, 2));
}

TEST_CASE("ordered vs multiset comparison") {
  auto L = duality_lattice(false);
  Block s(CategorySymbol("D(S)"));
  Block z(CategorySymbol("D(Z)"), Twist::single(kClassH, 1));
  Sod ab("D(T)", L, {s, z});
  Sod ab2("D(T)", L, {s, z});
  Sod ba("D(T)", L, {z, s});

  CHECK(sod_equal(ab, ab2, SodCompare::Ordered));
  CHECK_FALSE(sod_equal(ab, ba, SodCompare::Ordered));
  CHECK(sod_equal(ab, ba, SodCompare::Multiset));
}

TEST_CASE("ordered equality implies multiset equality on random inputs") {
  testing::Rng rng(7001);
  auto L = duality_lattice(false);
  for (int i = 0; i < 100; ++i) {
    Sod a = testing::random_sod(rng, L);
    if (sod_equal(a, a, SodCompare::Ordered))
      CHECK(sod_equal(a, a, SodCompare::Multiset));
  }
}

TEST_CASE("comparing over different lattices is an error") {
  Sod a("D(T)", duality_lattice(false), {Block(CategorySymbol("D(S)"))});
  Sod b("D(T)", duality_lattice(true), {Block(CategorySymbol("D(S)"))});
  CHECK_THROWS_AS(sod_equal(a, b), ValidationError);
}

TEST_CASE("twist_sod shifts every block and preserves order") {
  auto L = duality_lattice(false);
  CategorySymbol x("D(X)");
  Sod s("D(T)", L,
        {Block(x, Twist::single(kClassHK, 1)), Block(x, Twist::single(kClassHK, 2))});
  Sod shifted = twist_sod(s, Twist::single(kClassHK, -1));
  CHECK(shifted.blocks()[0].twist == Twist{});
  CHECK(shifted.blocks()[1].twist == Twist::single(kClassHK, 1));

  CHECK(sod_equal(twist_sod(s, Twist{}), s));
  Twist t = Twist::single(kClassH, 2) + Twist::single(kClassHp, -1);
  CHECK(sod_equal(twist_sod(twist_sod(s, t), -t), s));
}

TEST_CASE("twisting is a group action") {
  testing::Rng rng(7002);
  auto L = duality_lattice(false);
  for (int i = 0; i < 100; ++i) {
    Sod s = testing::random_sod(rng, L);
    Twist a = testing::random_twist(rng, L);
    Twist b = testing::random_twist(rng, L);
    CHECK(sod_equal(twist_sod(twist_sod(s, a), b), twist_sod(s, a + b)));
  }
}

TEST_CASE("out-of-range block access") {
  Sod s;
  CHECK_THROWS_AS(s.at(0), ValidationError);
}
