#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sodforge/betti.hpp"
#include "sodforge/lefschetz.hpp"
#include "sodforge/sod.hpp"

namespace sodforge {

/// External rank assignment, overriding any rank carried by the symbols
/// themselves.
using RankAssignment = std::map<std::string, long long>;

inline long long effective_rank(const CategorySymbol& sym, const RankAssignment& ranks) {
  if (sym.empty) return 0;
  if (auto it = ranks.find(sym.name); it != ranks.end()) return it->second;
  if (sym.rank) return *sym.rank;
  throw ValidationError("no rank assigned to symbol: " + sym.name);
}

/// Sum over blocks of rank(symbol) * rank(box factor, default 1). Twists are
/// rank-invisible.
inline long long rank_of_sod(const Sod& s, const RankAssignment& ranks = {}) {
  long long total = 0;
  for (const auto& b : s.blocks()) {
    long long r = effective_rank(b.symbol, ranks);
    if (b.box) r *= effective_rank(*b.box, ranks);
    total += r;
  }
  return total;
}

struct CheckResult {
  std::string name;
  long long engine = 0;
  long long oracle = 0;

  bool pass() const { return engine == oracle; }

  std::string line() const {
    std::ostringstream os;
    os << "CHECK " << name << ": engine=" << engine << " oracle=" << oracle << " "
       << (pass() ? "PASS" : "FAIL");
    return os.str();
  }
};

/// Compare an engine-side rank with the Betti oracle on a toy instance.
inline CheckResult cross_check(const std::string& name, const Sod& s,
                               const RankAssignment& ranks, const ToyGeometry& toy) {
  CheckResult r;
  r.name = name;
  r.engine = rank_of_sod(s, ranks);
  r.oracle = betti_oracle(toy);
  return r;
}

inline CheckResult cross_check(const std::string& name, long long engine_rank,
                               const ToyGeometry& toy) {
  CheckResult r;
  r.name = name;
  r.engine = engine_rank;
  r.oracle = betti_oracle(toy);
  return r;
}

enum class GridFormat { Ascii, Svg };

/// Deterministic rendering of a staircase grid. Ascii: one row per symbol,
/// '#' filled and '.' unfilled, columns left to right in increasing twist.
/// Svg mirrors the gray-cell tableau convention.
inline std::string render_grid(const Grid& grid, GridFormat format) {
  if (!is_staircase(grid))
    throw ValidationError("cannot render: grid violates the staircase property");

  if (format == GridFormat::Ascii) {
    std::size_t width = 0;
    for (const auto& r : grid.rows) width = std::max(width, r.size());
    std::ostringstream os;
    for (std::size_t r = 0; r < grid.rows.size(); ++r) {
      os << grid.rows[r] << std::string(width - grid.rows[r].size() + 1, ' ');
      for (bool cell : grid.cells[r]) os << (cell ? '#' : '.');
      os << "\n";
    }
    return os.str();
  }

  const int cell = 24;
  const int label_width = 120;
  const int w = label_width + static_cast<int>(grid.columns()) * cell;
  const int h = static_cast<int>(grid.rows.size()) * cell;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
     << h << "\">\n";
  for (std::size_t r = 0; r < grid.rows.size(); ++r) {
    os << "<text x=\"4\" y=\"" << (r * cell + 16) << "\" font-size=\"12\">"
       << grid.rows[r] << "</text>\n";
    for (std::size_t c = 0; c < grid.cells[r].size(); ++c) {
      os << "<rect x=\"" << (label_width + c * cell) << "\" y=\"" << (r * cell)
         << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
         << (grid.cells[r][c] ? "lightgray" : "white")
         << "\" stroke=\"black\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sodforge
