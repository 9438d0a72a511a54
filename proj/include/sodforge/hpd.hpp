#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "sodforge/formulas.hpp"
#include "sodforge/lefschetz.hpp"
#include "sodforge/mutation.hpp"
#include "sodforge/sod.hpp"

namespace sodforge {

inline const std::string kSymHpd = "C_HPD";
inline const std::string kSymPrim = "prim";
inline const std::string kSymPrimDual = "prim^nat";

/// Decomposition of the universal hyperplane of a Lefschetz structure:
/// <C_HPD, A_1(1) x B, ..., A_{m-1}(m-1) x B> where B is the category of the
/// dual projective bundle and C_HPD a fresh placeholder of unconstrained
/// rank.
inline Sod universal_hyperplane_sod(const LefschetzStructure& L,
                                    const CategorySymbol& box,
                                    const std::string& hpd_name = kSymHpd) {
  detail::require_valid(L);
  if (L.length() < 1)
    throw ValidationError("universal hyperplane needs a nonempty Lefschetz structure");
  std::vector<Block> blocks;
  blocks.push_back(Block(CategorySymbol(hpd_name)));
  const auto& comps = L.components();
  for (std::size_t i = 1; i < comps.size(); ++i)
    for (const auto& sym : comps[i])
      blocks.push_back(Block(sym, Twist::single(L.twist_class(), static_cast<int>(i)))
                           .boxed(box)
                           .annotated("iota^*"));
  return Sod("D(H(" + L.ambient() + "))", L.lattice(), std::move(blocks));
}

enum class SpecialCase {
  ClassicalLinear,   // L locally free: the dual is P(K^) itself
  HyperplaneBlowup,  // k = 1: universal hyperplane vs Bl_Z S
  TwoBlowups,        // k = N-1: both sides are blow-ups
  TwoResolutions,    // k = N: duality between two resolutions of Sing(L)
  Generic,
};

inline std::string to_string(SpecialCase c) {
  switch (c) {
    case SpecialCase::ClassicalLinear: return "classical_linear";
    case SpecialCase::HyperplaneBlowup: return "hyperplane_blowup";
    case SpecialCase::TwoBlowups: return "two_blowups";
    case SpecialCase::TwoResolutions: return "two_resolutions";
    case SpecialCase::Generic: return "generic";
  }
  return "generic";
}

inline SpecialCase classify_special_case(const GeometryInput& g) {
  if (g.locally_free()) return SpecialCase::ClassicalLinear;
  if (g.k == 1) return SpecialCase::HyperplaneBlowup;
  if (g.k == g.N - 1) return SpecialCase::TwoBlowups;
  if (g.k == g.N) return SpecialCase::TwoResolutions;
  return SpecialCase::Generic;
}

/// The two sides of the generalized linear duality, with the special-case
/// classification of the pair.
struct HpdPairDescriptor {
  GeometryInput geometry;
  std::string left_space;   // P(L) in P(V)
  std::string right_space;  // Bl_{X~} P(K^) -> P(V^)
  LefschetzStructure right_lefschetz;
  SpecialCase special_case = SpecialCase::Generic;
  std::string note;
};

inline HpdPairDescriptor generalized_linear_dual(const GeometryInput& g) {
  if (g.k < 1) throw ValidationError("generalized linear dual requires k >= 1");
  HpdPairDescriptor d;
  d.geometry = g;
  d.left_space = "P(L) in P(V)";
  d.right_space = "Bl_{X~} P(K^) -> P(V^)";
  d.right_lefschetz = lefschetz_blowup_dual(g);
  d.special_case = classify_special_case(g);
  if (g.k == g.N && g.N == 2 && g.locally_free())
    d.note = "k = N = 2 with locally free L: K and V coincide; the dual collapses "
             "to the full projective bundle P(V^)";
  return d;
}

/// Output of the fundamental theorem for a P(L)-section of an HPD pair of
/// lengths m and n: the two decompositions plus the recorded equivalence of
/// primitive parts.
struct SectionSods {
  Sod first;   // components of A_{P(L)-perp}, twists in H
  Sod second;  // components of A^nat_{P(L)}, twists in H'
  std::pair<std::string, std::string> primitive_equivalence{kSymPrim, kSymPrimDual};
};

inline SectionSods fundamental_section_sods(int m, int n, const GeometryInput& g) {
  const int l = g.l();
  if (m < 1 || n < 1) throw ValidationError("Lefschetz lengths m, n must be >= 1");
  if (l < 1 || l > g.N)
    throw ValidationError("section formulas need 1 <= l <= N (got l = " +
                          std::to_string(l) + ")");

  CategorySymbol correction = g.resolution_symbol();  // box of the epsilon terms
  auto component = [](int i) { return CategorySymbol("A_" + std::to_string(i)); };
  auto dual_component = [](int j) {
    return CategorySymbol("A^nat_" + std::to_string(j));
  };

  // First decomposition: <prim, A_1^eps(1), ..., A_{l-1}^eps(l-1),
  //                       <A_l, A_l^eps>(l), ..., <A_{m-1}, A_{m-1}^eps>(m-1)>.
  // Index ranges clamp to <= m-1; epsilon blocks vanish in the locally free
  // case through the usual elision.
  std::vector<Block> first;
  first.push_back(Block(CategorySymbol(kSymPrim)));
  for (int i = 1; i <= m - 1; ++i) {
    Twist t = Twist::single(kClassH, i);
    if (i >= l) first.push_back(Block(component(i), t));
    first.push_back(Block(component(i), t).boxed(correction));
  }

  // Second decomposition: <A^nat_{1-n}((l-n)H'), ..., A^nat_{-l}(-H'), prim>.
  std::vector<Block> second;
  for (int j = 1 - n; j <= -l; ++j)
    second.push_back(Block(dual_component(j), Twist::single(kClassHp, j + l - 1)));
  second.push_back(Block(CategorySymbol(kSymPrimDual)));

  SectionSods out;
  out.first = Sod("A_{P(L)^perp}", duality_lattice(false), std::move(first));
  out.second = Sod("A^nat_{P(L)}", duality_lattice(false), std::move(second));
  return out;
}

/// Decomposition of D(P(L)) predicted by the projectivization formula: one
/// D(X~) block plus l base blocks with consecutive H twists. Only the block
/// multiset and the total rank carry meaning; the twist offsets here are a
/// convention (base offset 0).
inline Sod projectivization_sod(const GeometryInput& g) {
  if (g.l() < 1) throw ValidationError("projectivization needs generic rank l >= 1");
  std::vector<Block> blocks;
  blocks.push_back(Block(g.resolution_symbol()).annotated("Rj_* Lp^*"));
  for (int i = 0; i < g.l(); ++i)
    blocks.push_back(Block(g.base_symbol(), Twist::single(kClassH, i)));
  return Sod(kSymSection, duality_lattice(g.locally_free()), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Scripted derivations.

/// Derivation for the dual Lefschetz structure: start from the blow-up
/// decomposition of Bl_{X~} P(K^), splice in the projective-bundle
/// decomposition of D(P(K^)) (k base blocks with H_K twists), then push each
/// base block S(c H_K) right through c center blocks; every pass tensors by
/// -E = H' - H_K, so the block lands at S(c H').
struct LemmaDerivation {
  Derivation derivation;
  RuleTable rules;
};

inline LemmaDerivation lemma_lefschetz_derivation(const GeometryInput& g) {
  if (g.k < 1) throw ValidationError("dual Lefschetz derivation requires k >= 1");
  DivisorClassLattice lattice = duality_lattice(g.locally_free());

  CategorySymbol S = g.base_symbol();
  CategorySymbol Xt = g.resolution_symbol();
  CategorySymbol PK = CategorySymbol(kSymPKDual).absorbing({kClassHK});

  LemmaDerivation out;
  out.rules = make_blowup_rules(kSymResolution, kClassE, kClassHp);

  const std::string ambient = "D(Bl_{X~} P(K^))";
  out.derivation.initial =
      blowup_sod(PK, Xt, g.N, SodForm::Right, lattice, ambient);
  Sod bundle = projective_bundle_sod(S, g.k, kClassHK, lattice, kSymPKDual);
  out.derivation.splices.push_back({0, bundle});

  Sod current = splice(out.derivation.initial, 0, bundle);
  const RewriteRule* bl_right = find_rule(out.rules, "BL-RIGHT");
  if (!g.locally_free()) {
    for (int c = g.k - 1; c >= 1; --c) {
      // S(c H_K) sits at position c; each application moves it one slot right.
      for (int pass = 0; pass < c; ++pass) {
        std::size_t pos = static_cast<std::size_t>(c + pass);
        current = apply_rule(current, *bl_right, pos);
        out.derivation.steps.push_back({"BL-RIGHT", pos, std::nullopt});
      }
    }
  }
  out.derivation.final_sod = right_form(lefschetz_blowup_dual(g));
  return out;
}

/// Full report of the duality proof replay: the derivation itself, its
/// replay, and the comparison of the (globally twisted) endpoint against the
/// universal-hyperplane decomposition of the dual Lefschetz structure.
struct DualityReplayReport {
  GeometryInput geometry;
  SpecialCase special_case = SpecialCase::Generic;
  Derivation derivation;
  RuleTable rules;
  ReplayReport replay_report;
  Sod final_post_twist;  // replay endpoint after the global H' twist
  Sod expected;          // universal hyperplane SOD with C_HPD identified
  Block hpd_identification;
  bool multiset_equal = false;
  bool ordered_equal = false;
  bool ok = false;
};

namespace detail {

/// Stable-sort the tail of a decomposition by its step-class twist degree,
/// keeping the leading (HPD) block pinned. Used to compare mutation output
/// against the grouped closed form.
inline Sod regroup_by_degree(const Sod& s, const std::string& step_class) {
  if (s.size() <= 1) return s;
  std::vector<Block> blocks = s.blocks();
  std::stable_sort(blocks.begin() + 1, blocks.end(),
                   [&step_class](const Block& a, const Block& b) {
                     return a.twist.coefficient(step_class) <
                            b.twist.coefficient(step_class);
                   });
  return s.with_blocks(std::move(blocks));
}

}  // namespace detail

/// Replay of the generalized-duality proof:
///   1. blow-up decomposition of the universal hyperplane of the blown-up
///      dual (center P(V) x X~, codimension N-1), center blocks boxed by
///      D(P(V));
///   2. splice the hyperplane placeholder with the Cayley decomposition
///      (rank-k bundle over P(V), unit twist H + H_K), transported along the
///      blow-up and globally twisted by -H_K;
///   3. push the base blocks right through the center blocks;
///   4. twist globally by +H' and compare with the universal-hyperplane form
///      of the dual Lefschetz structure, identifying C_HPD with the section
///      category image.
inline DualityReplayReport replay_duality_derivation(const GeometryInput& g) {
  if (g.k < 1) throw ValidationError("duality replay requires k >= 1");
  DivisorClassLattice lattice = duality_lattice(g.locally_free());

  CategorySymbol S = g.base_symbol();
  CategorySymbol Xt = g.resolution_symbol();
  CategorySymbol PVbox = CategorySymbol(kSymPV).absorbing({kClassH});
  CategorySymbol PL = CategorySymbol(kSymSection);
  CategorySymbol Hph = CategorySymbol(kSymHyperplane).absorbing({kClassH, kClassHK});

  DualityReplayReport report;
  report.geometry = g;
  report.special_case = classify_special_case(g);
  report.rules = make_blowup_rules(kSymResolution, kClassE, kClassHp);

  const std::string ambient = "D(U)";

  // (1) Blow-up of the universal hyperplane along P(V) x X~. For N = 2 the
  // center is a divisor and the blow-up is trivial.
  Sod initial;
  if (g.N >= 3) {
    Sod bl = blowup_sod(Hph, Xt, g.N - 1, SodForm::Right, lattice, ambient);
    std::vector<Block> blocks;
    for (Block b : bl.blocks()) {
      if (b.symbol.name == kSymResolution) b = b.boxed(PVbox);
      blocks.push_back(std::move(b));
    }
    initial = Sod(ambient, lattice, std::move(blocks));
  } else {
    initial = Sod(ambient, lattice, {Block(Hph).annotated("Lgamma^*")});
  }
  report.derivation.initial = initial;

  // (2) Cayley decomposition of the hyperplane, transported along the
  // blow-up: base blocks become D(S)-boxed-D(P(V)) blocks, the section block
  // becomes the HPD candidate. The global -H_K twist aligns the bundle
  // twists at 0..k-2.
  Sod cayley;
  if (g.k >= 2) {
    cayley = cayley_sod(PVbox, PL, g.k, SodForm::Right,
                        Twist::single(kClassH, 1) + Twist::single(kClassHK, 1),
                        lattice, kSymHyperplane);
  } else {
    cayley = Sod(kSymHyperplane, lattice, {Block(PL).annotated("Rj_{1*} Lp_1^*")});
  }
  cayley = twist_sod(cayley, Twist::single(kClassHK, -1));
  std::vector<Block> transported;
  for (Block b : cayley.blocks()) {
    if (b.symbol.name == kSymPV) {
      Block t = Block(S, b.twist).boxed(PVbox).annotated("Lgamma^* Lpi_1^*");
      transported.push_back(std::move(t));
    } else {
      transported.push_back(b.annotated("Psi"));
    }
  }
  Sod replacement = Sod(kSymHyperplane, lattice, std::move(transported));
  report.derivation.splices.push_back({0, replacement});

  // (3) The mutation loop: S(c H_K) starts at position c+1 and crosses c
  // center blocks.
  Sod current = splice(initial, 0, replacement);
  const RewriteRule* bl_right = find_rule(report.rules, "BL-RIGHT");
  if (!g.locally_free()) {
    for (int c = g.k - 2; c >= 1; --c) {
      for (int pass = 0; pass < c; ++pass) {
        std::size_t pos = static_cast<std::size_t>(c + 1 + pass);
        current = apply_rule(current, *bl_right, pos);
        report.derivation.steps.push_back({"BL-RIGHT", pos, std::nullopt});
      }
    }
  }
  report.derivation.final_sod = current;
  report.replay_report = replay(report.derivation, report.rules);

  // (4) Global H' twist and comparison against the closed form.
  report.final_post_twist =
      twist_sod(report.replay_report.computed, Twist::single(kClassHp, 1));

  Sod expected = universal_hyperplane_sod(lefschetz_blowup_dual(g), PVbox);
  if (report.final_post_twist.size() >= 1 && expected.size() >= 1 &&
      report.final_post_twist.blocks()[0].symbol.name == kSymSection) {
    report.hpd_identification = report.final_post_twist.blocks()[0];
    std::vector<Block> blocks = expected.blocks();
    blocks[0] = report.hpd_identification;
    expected = Sod(expected.ambient(), expected.lattice(), std::move(blocks));
  }
  report.expected = expected;

  report.multiset_equal =
      sod_equal(report.final_post_twist, report.expected, SodCompare::Multiset);
  report.ordered_equal =
      sod_equal(detail::regroup_by_degree(report.final_post_twist, kClassHp),
                detail::regroup_by_degree(report.expected, kClassHp),
                SodCompare::Ordered);
  report.ok = report.replay_report.ok && report.multiset_equal && report.ordered_equal;
  return report;
}

}  // namespace sodforge
