#pragma once

// Deterministic generators for property-style tests.

#include <random>
#include <string>
#include <vector>

#include "sodforge/lefschetz.hpp"
#include "sodforge/sod.hpp"

namespace sodforge::testing {

using Rng = std::mt19937;

inline int pick(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::string random_symbol_name(Rng& rng) {
  static const std::vector<std::string> pool = {
      "D(S)", "D(Z)", "D(X~)", "D(P(V))", "A_1", "A_2", "B", "prim", "D(Y)"};
  return pool[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(pool.size()) - 1))];
}

inline Twist random_twist(Rng& rng, const DivisorClassLattice& lattice) {
  Twist t;
  for (const auto& cls : lattice.generators())
    if (pick(rng, 0, 2) == 0) t += Twist::single(cls, pick(rng, -3, 3));
  return t;
}

inline Block random_block(Rng& rng, const DivisorClassLattice& lattice) {
  Block b(CategorySymbol(random_symbol_name(rng)), random_twist(rng, lattice));
  if (pick(rng, 0, 3) == 0) b.box = CategorySymbol("D(P(V^))");
  if (pick(rng, 0, 3) == 0) b.annotation = "phi_" + std::to_string(pick(rng, 0, 9));
  return b;
}

inline Sod random_sod(Rng& rng, const DivisorClassLattice& lattice,
                      int max_blocks = 6) {
  std::vector<Block> blocks;
  int n = pick(rng, 0, max_blocks);
  blocks.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) blocks.push_back(random_block(rng, lattice));
  return Sod("D(T)", lattice, std::move(blocks));
}

/// Random valid Lefschetz structure: draw row lengths (sorted descending
/// occupancy) so the chain condition holds by construction.
inline LefschetzStructure random_lefschetz(Rng& rng, int max_rows = 4,
                                           int max_len = 5) {
  int m = pick(rng, 1, max_len);
  int rows = pick(rng, 1, max_rows);
  std::vector<int> fill;
  fill.reserve(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) fill.push_back(pick(rng, 1, m));
  std::vector<std::vector<CategorySymbol>> comps(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < rows; ++r)
      if (c < fill[static_cast<std::size_t>(r)])
        comps[static_cast<std::size_t>(c)].emplace_back("R" + std::to_string(r));
  return LefschetzStructure("D(T)", duality_lattice(false), kClassHp, std::move(comps));
}

}  // namespace sodforge::testing
