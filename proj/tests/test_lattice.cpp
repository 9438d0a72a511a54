#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sodforge/lattice.hpp"

using namespace sodforge;

namespace {

// Independent oracle: literally substitute each non-basis class by its
// defining expression until none remain. Used to freeze expected values.
ClassCoefficients brute_force_substitute(
    ClassCoefficients coeffs,
    const std::map<std::string, ClassCoefficients>& definitions) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [name, expansion] : definitions) {
      auto it = coeffs.find(name);
      if (it == coeffs.end()) continue;
      int c = it->second;
      coeffs.erase(it);
      for (const auto& [cls, e] : expansion) {
        int v = (coeffs[cls] += c * e);
        if (v == 0) coeffs.erase(cls);
      }
      changed = true;
    }
  }
  return coeffs;
}

const std::map<std::string, ClassCoefficients> kStandardDefs = {
    {"E", {{"H_K", 1}, {"H'", -1}}}};

}  // namespace

TEST_CASE("normalize_twist reduces E through E = H_K - H'") {
  auto L = duality_lattice(false);

  Twist minus_e = Twist::single(kClassE, -1);
  Twist expected;
  expected.coeffs = {{"H_K", -1}, {"H'", 1}};
  CHECK(normalize_twist(minus_e, L) == expected);

  CHECK(normalize_twist(Twist{}, L) == Twist{});

  // 2E + H_K -> 3H_K - 2H', confirmed by brute-force substitution.
  Twist t = Twist::single(kClassE, 2) + Twist::single(kClassHK, 1);
  ClassCoefficients oracle = brute_force_substitute(t.coeffs, kStandardDefs);
  CHECK(oracle == ClassCoefficients{{"H_K", 3}, {"H'", -2}});
  CHECK(normalize_twist(t, L).coeffs == oracle);
}

TEST_CASE("normalization is idempotent and additive") {
  auto L = duality_lattice(false);
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Twist a, b;
    for (const auto& cls : L.generators()) {
      a += Twist::single(cls, coeff(rng));
      b += Twist::single(cls, coeff(rng));
    }
    Twist na = normalize_twist(a, L);
    CHECK(normalize_twist(na, L) == na);
    CHECK(normalize_twist(a + b, L) == normalize_twist(a, L) + normalize_twist(b, L));
    CHECK(na.coeffs == brute_force_substitute(a.coeffs, kStandardDefs));
  }
}

TEST_CASE("unknown class names are rejected by name") {
  auto L = duality_lattice(false);
  Twist t = Twist::single("Q", 1);
  CHECK_THROWS_WITH(normalize_twist(t, L), Catch::Matchers::ContainsSubstring("Q"));
}

TEST_CASE("locally free lattice collapses H_K and E") {
  auto L = duality_lattice(true);
  CHECK(normalize_twist(Twist::single(kClassHK, 3), L) ==
        Twist::single(kClassHp, 3));
  CHECK(normalize_twist(Twist::single(kClassE, 5), L) == Twist{});
}

TEST_CASE("shift is carried through normalization") {
  auto L = duality_lattice(false);
  Twist t = Twist::single(kClassE, 1);
  t.shift = 2;
  Twist n = normalize_twist(t, L);
  CHECK(n.shift == 2);
  CHECK(n.coeffs == ClassCoefficients{{"H_K", 1}, {"H'", -1}});
}

TEST_CASE("lattice construction diagnostics") {
  // Unsolvable: no relation mentions the non-basis class.
  CHECK_THROWS_AS(DivisorClassLattice({"A", "B"}, {}, {"A"}), ValidationError);
  // Cyclic: A = B and B = A cannot triangularize.
  CHECK_THROWS_AS(
      DivisorClassLattice({"A", "B"}, {{{"A", 1}, {"B", -1}}, {{"B", 1}, {"A", -1}}},
                          {}),
      ValidationError);
  // Non-unit coefficient cannot be solved integrally.
  CHECK_THROWS_AS(DivisorClassLattice({"A", "B"}, {{{"A", 2}, {"B", 1}}}, {"B"}),
                  ValidationError);
  CHECK_THROWS_AS(DivisorClassLattice({"A", "A"}, {}, {"A"}), ValidationError);
  // Basis must consist of generators.
  CHECK_THROWS_AS(DivisorClassLattice({"A"}, {}, {"B"}), ValidationError);
}

TEST_CASE("chained substitutions terminate") {
  // C = B, B = A.
  DivisorClassLattice L({"A", "B", "C"},
                        {{{"C", 1}, {"B", -1}}, {{"B", 1}, {"A", -1}}}, {"A"});
  CHECK(L.normalize(ClassCoefficients{{"C", 2}, {"B", 1}}) ==
        ClassCoefficients{{"A", 3}});
}
