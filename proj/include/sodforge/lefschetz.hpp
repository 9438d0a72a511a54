#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sodforge/sod.hpp"

namespace sodforge {

/// Validation report for the descending-chain condition. Failures are
/// entries, not exceptions.
struct ChainCheck {
  std::size_t index = 0;
  bool ok = true;
  std::string message;
};

struct LefschetzValidation {
  bool ok = true;
  std::optional<std::size_t> first_violation;
  std::vector<ChainCheck> entries;
};

/// A Lefschetz structure: an ambient label, a descending chain of component
/// symbol sets A_0 >= A_1 >= ... >= A_{m-1}, and the divisor class acting as
/// the twist. Components keep insertion order; empty symbols are dropped and
/// trailing empty components trimmed at construction.
class LefschetzStructure {
 public:
  LefschetzStructure() : lattice_(duality_lattice(false)), twist_class_(kClassH) {}

  LefschetzStructure(std::string ambient, DivisorClassLattice lattice,
                     std::string twist_class,
                     std::vector<std::vector<CategorySymbol>> components)
      : ambient_(std::move(ambient)),
        lattice_(std::move(lattice)),
        twist_class_(std::move(twist_class)) {
    if (!lattice_.has_class(twist_class_))
      throw ValidationError("lefschetz twist class not in lattice: " + twist_class_);
    for (auto& comp : components) {
      std::vector<CategorySymbol> kept;
      std::set<std::string> seen;
      for (auto& sym : comp) {
        if (sym.empty) continue;
        if (!seen.insert(sym.name).second)
          throw ValidationError("duplicate symbol in component: " + sym.name);
        kept.push_back(std::move(sym));
      }
      components_.push_back(std::move(kept));
    }
    while (!components_.empty() && components_.back().empty()) components_.pop_back();
  }

  const std::string& ambient() const { return ambient_; }
  const DivisorClassLattice& lattice() const { return lattice_; }
  const std::string& twist_class() const { return twist_class_; }
  const std::vector<std::vector<CategorySymbol>>& components() const { return components_; }
  std::size_t length() const { return components_.size(); }
  bool empty() const { return components_.empty(); }

 private:
  std::string ambient_;
  DivisorClassLattice lattice_;
  std::string twist_class_;
  std::vector<std::vector<CategorySymbol>> components_;
};

inline LefschetzValidation validate_lefschetz(const LefschetzStructure& L) {
  LefschetzValidation report;
  const auto& comps = L.components();
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    std::set<std::string> outer;
    for (const auto& s : comps[i]) outer.insert(s.name);
    ChainCheck check;
    check.index = i + 1;
    for (const auto& s : comps[i + 1]) {
      if (!outer.count(s.name)) {
        check.ok = false;
        check.message = "component " + std::to_string(i + 1) + " contains " + s.name +
                        " which is absent from component " + std::to_string(i);
        break;
      }
    }
    if (!check.ok && !report.first_violation) {
      report.ok = false;
      report.first_violation = check.index;
    }
    report.entries.push_back(std::move(check));
  }
  return report;
}

namespace detail {
inline void require_valid(const LefschetzStructure& L) {
  auto v = validate_lefschetz(L);
  if (!v.ok)
    throw ValidationError("lefschetz chain violated at component " +
                          std::to_string(*v.first_violation));
}
}  // namespace detail

/// <A_0, A_1(1), ..., A_{m-1}(m-1)>, components expanded in insertion order.
inline Sod right_form(const LefschetzStructure& L) {
  detail::require_valid(L);
  std::vector<Block> blocks;
  const auto& comps = L.components();
  for (std::size_t i = 0; i < comps.size(); ++i)
    for (const auto& sym : comps[i])
      blocks.emplace_back(sym, Twist::single(L.twist_class(), static_cast<int>(i)));
  return Sod(L.ambient(), L.lattice(), std::move(blocks));
}

/// <A_{1-m}(1-m), ..., A_{-1}(-1), A_0> with the symmetric convention
/// A_{-i} = A_i.
inline Sod left_form(const LefschetzStructure& L) {
  detail::require_valid(L);
  std::vector<Block> blocks;
  const auto& comps = L.components();
  for (std::size_t i = comps.size(); i-- > 1;)
    for (const auto& sym : comps[i])
      blocks.emplace_back(sym, Twist::single(L.twist_class(), -static_cast<int>(i)));
  if (!comps.empty())
    for (const auto& sym : comps[0]) blocks.emplace_back(sym);
  return Sod(L.ambient(), L.lattice(), std::move(blocks));
}

/// Occupancy tableau of a Lefschetz structure: one row per symbol, one
/// column per component, cell true iff the symbol sits in that component.
struct Grid {
  std::vector<std::string> rows;
  std::vector<std::vector<bool>> cells;  // cells[row][column]

  std::size_t columns() const { return cells.empty() ? 0 : cells.front().size(); }
};

/// Every row must be a prefix of filled cells.
inline bool is_staircase(const Grid& g) {
  for (const auto& row : g.cells) {
    bool gap = false;
    for (bool c : row) {
      if (!c) gap = true;
      else if (gap) return false;
    }
  }
  return true;
}

inline Grid grid_of(const LefschetzStructure& L) {
  detail::require_valid(L);
  Grid g;
  const auto& comps = L.components();
  for (const auto& comp : comps)
    for (const auto& sym : comp)
      if (std::find(g.rows.begin(), g.rows.end(), sym.name) == g.rows.end())
        g.rows.push_back(sym.name);
  g.cells.assign(g.rows.size(), std::vector<bool>(comps.size(), false));
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (const auto& sym : comps[c]) {
      auto it = std::find(g.rows.begin(), g.rows.end(), sym.name);
      g.cells[static_cast<std::size_t>(it - g.rows.begin())][c] = true;
    }
  return g;
}

/// Inverse of grid_of on staircase grids (symbol metadata is not recoverable
/// from a grid; plain symbols are used).
inline LefschetzStructure lefschetz_from_grid(const Grid& g, std::string ambient,
                                              DivisorClassLattice lattice,
                                              std::string twist_class) {
  if (!is_staircase(g)) throw ValidationError("grid violates the staircase property");
  std::vector<std::vector<CategorySymbol>> comps(g.columns());
  for (std::size_t c = 0; c < g.columns(); ++c)
    for (std::size_t r = 0; r < g.rows.size(); ++r)
      if (g.cells[r][c]) comps[c].emplace_back(g.rows[r]);
  return LefschetzStructure(std::move(ambient), std::move(lattice),
                            std::move(twist_class), std::move(comps));
}

}  // namespace sodforge
