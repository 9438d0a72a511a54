#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sodforge/lefschetz.hpp"
#include "sodforge/sod.hpp"

namespace sodforge {

// Canonical symbol names for the duality constructions.
inline const std::string kSymBase = "D(S)";
inline const std::string kSymResolution = "D(X~)";   // P(Ext^1(L,O)), resolves Sing(L)
inline const std::string kSymPV = "D(P(V))";
inline const std::string kSymPVDual = "D(P(V^))";
inline const std::string kSymPKDual = "D(P(K^))";
inline const std::string kSymSection = "D(P(L))";
inline const std::string kSymHyperplane = "D(H)";    // universal hyperplane over P(K^)

/// Numeric data of a quotient V ->> L: rank N of V, rank k of K, the
/// declared K0 rank z of D(X~) (0 or absent means L is locally free) and the
/// optional K0 rank s of D(S). The generic rank of L is l = N - k.
///
/// k = 0 (so l = N) is admitted only for the section formulas of the
/// fundamental theorem; the duality constructions require k >= 1.
struct GeometryInput {
  int N = 2;
  int k = 1;
  std::optional<long long> sing_rank;
  std::optional<long long> base_rank;

  GeometryInput() = default;
  GeometryInput(int N_, int k_, std::optional<long long> sing = std::nullopt,
                std::optional<long long> base = std::nullopt)
      : N(N_), k(k_), sing_rank(sing), base_rank(base) {
    if (N < 2) throw ValidationError("geometry requires N >= 2");
    if (k < 0 || k > N) throw ValidationError("geometry requires 0 <= k <= N");
    if (sing_rank && *sing_rank < 0)
      throw ValidationError("singular-locus rank must be nonnegative");
  }

  int l() const { return N - k; }
  bool locally_free() const { return !sing_rank.has_value() || *sing_rank == 0; }

  CategorySymbol base_symbol() const {
    CategorySymbol s(kSymBase);
    s.rank = base_rank;
    return s;
  }

  /// D(X~), the exceptional-divisor image category; empty when L is locally
  /// free. It absorbs H_K because the exceptional divisor maps into X~, so
  /// O(H_K) restricts to a pullback there.
  CategorySymbol resolution_symbol() const {
    CategorySymbol s(kSymResolution);
    s.absorbs = {kClassHK};
    s.support = "Sing(L)";
    if (locally_free()) {
      s.empty = true;
      s.rank = 0;
    } else {
      s.rank = sing_rank;
    }
    return s;
  }
};

/// <X, X(1), ..., X(r-1)> for a P^{r-1}-bundle with base category X.
inline Sod projective_bundle_sod(const CategorySymbol& X, int r,
                                 const std::string& twist_class,
                                 DivisorClassLattice lattice = duality_lattice(false),
                                 std::string ambient = "") {
  if (r < 1) throw ValidationError("projective bundle needs fiber rank r >= 1");
  std::vector<Block> blocks;
  for (int i = 0; i < r; ++i)
    blocks.push_back(Block(X, Twist::single(twist_class, i)));
  return Sod(std::move(ambient), std::move(lattice), std::move(blocks));
}

enum class SodForm { Right, Left };

/// Blow-up decomposition along a center of codimension r >= 2:
/// right <pi^*X, Z_0, ..., Z_{r-2}>, left <Z_{1-r}, ..., Z_{-1}, pi^*X>,
/// where Z_j carries the twist -jE. An empty center collapses to <pi^*X>.
inline Sod blowup_sod(const CategorySymbol& X, const CategorySymbol& Z, int r,
                      SodForm form = SodForm::Right,
                      DivisorClassLattice lattice = duality_lattice(false),
                      std::string ambient = "") {
  if (r < 2) throw ValidationError("blow-up center must have codimension r >= 2");
  auto center_block = [&Z](int j) {
    return Block(Z, Twist::single(kClassE, -j))
        .annotated("Ri_{E*} Lp^*(-) (x) O(" + std::to_string(-j) + "E)");
  };
  std::vector<Block> blocks;
  Block pullback = Block(X).annotated("Lpi^*");
  if (form == SodForm::Right) {
    blocks.push_back(pullback);
    for (int j = 0; j <= r - 2; ++j) blocks.push_back(center_block(j));
  } else {
    for (int j = 1 - r; j <= -1; ++j) blocks.push_back(center_block(j));
    blocks.push_back(pullback);
  }
  return Sod(std::move(ambient), std::move(lattice), std::move(blocks));
}

/// Generalized universal hyperplane decomposition for a rank-r bundle:
/// right <Rj_*p^* Z, X(1), ..., X(r-1)>, left <X(2-r), ..., X(0), Rj_*p^* Z>.
/// `unit_twist` is the hyperplane class O(1) of the ambient projectivization
/// (a single class in the plain setting, a composite one for incidence
/// divisors in products).
inline Sod cayley_sod(const CategorySymbol& X, const CategorySymbol& Z, int r,
                      SodForm form = SodForm::Right,
                      Twist unit_twist = Twist::single(kClassH, 1),
                      DivisorClassLattice lattice = duality_lattice(false),
                      std::string ambient = "") {
  if (r < 2) throw ValidationError("Cayley trick needs bundle rank r >= 2");
  Block zero_locus = Block(Z).annotated("Rj_* p^*");
  auto bundle_block = [&](int i) {
    return Block(X, unit_twist * i)
        .annotated("Lpi^*(-) (x) O(" + std::to_string(i) + ")");
  };
  std::vector<Block> blocks;
  if (form == SodForm::Right) {
    blocks.push_back(zero_locus);
    for (int i = 1; i <= r - 1; ++i) blocks.push_back(bundle_block(i));
  } else {
    for (int i = 2 - r; i <= 0; ++i) blocks.push_back(bundle_block(i));
    blocks.push_back(zero_locus);
  }
  return Sod(std::move(ambient), std::move(lattice), std::move(blocks));
}

/// Lefschetz structure of the blown-up dual Bl_{X~} P(K^) -> P(V^), of
/// length r - 1 with r = max{N, k+1}:
///   k <= N-1:  A_0 = ... = A_{k-1} = {D(S), D(X~)},
///              A_k = ... = A_{N-2} = {D(X~)};
///   k = N:     A_0 = ... = A_{k-2} = {D(S), D(X~)},  A_{N-1} = {D(S)}.
/// When L is locally free D(X~) is empty and the chain collapses to the
/// projective-bundle pattern <{D(S)}, ..., {D(S)}> of length k.
inline LefschetzStructure lefschetz_blowup_dual(const GeometryInput& g) {
  if (g.k < 1) throw ValidationError("dual Lefschetz structure requires k >= 1");
  CategorySymbol S = g.base_symbol();
  CategorySymbol Xt = g.resolution_symbol();

  int r = std::max(g.N, g.k + 1);
  std::vector<std::vector<CategorySymbol>> comps;
  comps.reserve(static_cast<std::size_t>(r - 1));
  if (g.k <= g.N - 1) {
    for (int i = 0; i <= g.k - 1; ++i) comps.push_back({S, Xt});
    for (int i = g.k; i <= g.N - 2; ++i) comps.push_back({Xt});
  } else {
    for (int i = 0; i <= g.k - 2; ++i) comps.push_back({S, Xt});
    comps.push_back({S});
  }
  return LefschetzStructure("D(Bl_{X~} P(K^))", duality_lattice(g.locally_free()),
                            kClassHp, std::move(comps));
}

}  // namespace sodforge
