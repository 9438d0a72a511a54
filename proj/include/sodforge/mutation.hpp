#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sodforge/sod.hpp"

namespace sodforge {

/// Raised when a rule's matcher rejects the (moving, neighbor) pair.
struct RuleError : ValidationError {
  using ValidationError::ValidationError;
};

/// An adjacent-transposition rewrite rule for the blow-up mutation
/// identities. A center block is an Orlov component D(Z)_j, recognized by
/// its symbol name and a twist equal to j times the (block-normalized)
/// class -E. A pullback block may move right through D(Z)_j if it has
/// accumulated exactly j steps of -E, measured by its coefficient of
/// `step_class` (the class through which -E surfaces after normalization);
/// moving left requires j+1 steps. The move tensors the pullback block by
/// -E (right) or E (left) and transposes the pair.
struct RewriteRule {
  std::string name;
  enum class Direction { Left, Right } direction = Direction::Right;
  std::string center_symbol;
  std::string exceptional_class = kClassE;
  std::string step_class = kClassHp;
  std::string citation;  // provenance only
};

inline std::vector<RewriteRule> make_blowup_rules(
    std::string center_symbol = kSymResolution,
    std::string exceptional_class = kClassE, std::string step_class = kClassHp) {
  RewriteRule left{"BL-LEFT", RewriteRule::Direction::Left, center_symbol,
                   exceptional_class, step_class, "blow-up mutation, left"};
  RewriteRule right{"BL-RIGHT", RewriteRule::Direction::Right, center_symbol,
                    exceptional_class, step_class, "blow-up mutation, right"};
  return {left, right};
}

using RuleTable = std::vector<RewriteRule>;

inline const RewriteRule* find_rule(const RuleTable& rules, const std::string& name) {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

namespace detail {

/// Solve j >= 0 with block.twist == j * (block-normalized -E), i.e. decide
/// whether the block is the Orlov component D(Z)_j and recover j.
inline std::optional<int> orlov_index(const Block& b, const RewriteRule& rule,
                                      const DivisorClassLattice& lattice) {
  if (b.symbol.name != rule.center_symbol) return std::nullopt;
  Block probe = b;
  probe.twist = Twist::single(rule.exceptional_class, -1);
  Twist delta = normalize_block(probe, lattice).twist;
  if (b.twist.shift != 0) return std::nullopt;
  if (delta.coeffs.empty()) return b.twist.coeffs.empty() ? std::optional<int>(0) : std::nullopt;
  const auto& [cls, unit] = *delta.coeffs.begin();
  int c = b.twist.coefficient(cls);
  if (c % unit != 0) return std::nullopt;
  int j = c / unit;
  if (j < 0) return std::nullopt;
  if (!(delta * j == b.twist)) return std::nullopt;
  return j;
}

}  // namespace detail

/// Apply a named rule at `pos` (the moving block). Throws RuleError when the
/// matcher rejects the pair, ValidationError when positions fall outside the
/// decomposition.
inline Sod apply_rule(const Sod& s, const RewriteRule& rule, std::size_t pos) {
  const bool right = rule.direction == RewriteRule::Direction::Right;
  if (pos >= s.size()) throw ValidationError("rule position out of range");
  std::size_t npos = right ? pos + 1 : pos - 1;
  if (right ? (npos >= s.size()) : (pos == 0))
    throw ValidationError("rule neighbor out of range");

  const Block& moving = s.blocks()[pos];
  const Block& neighbor = s.blocks()[npos];

  auto reject = [&](const std::string& why) {
    throw RuleError("rule " + rule.name + " not applicable to (" + moving.to_string() +
                    " | " + neighbor.to_string() + "): " + why);
  };

  if (moving.symbol.name == rule.center_symbol)
    reject("moving block is a center component");
  auto j = detail::orlov_index(neighbor, rule, s.lattice());
  if (!j) reject("neighbor is not a center component of the expected shape");
  int need = right ? *j : *j + 1;
  if (moving.twist.coefficient(rule.step_class) != need)
    reject("moving block has not accumulated " + std::to_string(need) +
           " exceptional steps");

  Twist delta = Twist::single(rule.exceptional_class, right ? -1 : 1);
  std::vector<Block> blocks = s.blocks();
  blocks[pos] = neighbor;
  blocks[npos] = moving.twisted(delta);
  return s.with_blocks(std::move(blocks));
}

/// Generic mutation when no named rule applies: transpose the pair and wrap
/// the moving block in an opaque formal mutation symbol. Mutations are
/// equivalences onto their images, so the wrapped symbol keeps the moving
/// block's rank.
inline Sod mutate_formal(const Sod& s, std::size_t pos,
                         RewriteRule::Direction direction) {
  const bool right = direction == RewriteRule::Direction::Right;
  if (pos >= s.size()) throw ValidationError("mutation position out of range");
  if (right ? pos + 1 >= s.size() : pos == 0)
    throw ValidationError("mutation neighbor out of range");
  std::size_t npos = right ? pos + 1 : pos - 1;

  const Block& moving = s.blocks()[pos];
  const Block& neighbor = s.blocks()[npos];

  CategorySymbol wrapped;
  wrapped.name = (right ? "R_{" : "L_{") + neighbor.to_string() + "}(" +
                 moving.to_string() + ")";
  if (moving.symbol.rank) {
    long long r = *moving.symbol.rank;
    if (moving.box) {
      if (moving.box->rank) r *= *moving.box->rank;
      else wrapped.rank = std::nullopt;
    }
    if (!moving.box || moving.box->rank) wrapped.rank = r;
  }

  std::vector<Block> blocks = s.blocks();
  blocks[pos] = neighbor;
  blocks[npos] = Block(std::move(wrapped));
  return s.with_blocks(std::move(blocks));
}

/// Replace a placeholder block by a whole decomposition. The placeholder's
/// symbol name must equal the replacement's ambient label; its accumulated
/// twist and box factor distribute over the spliced-in blocks.
inline Sod splice(const Sod& s, std::size_t pos, const Sod& replacement) {
  if (pos >= s.size()) throw ValidationError("splice position out of range");
  if (!(s.lattice() == replacement.lattice()))
    throw ValidationError("splice: replacement lives over a different lattice");
  const Block& placeholder = s.blocks()[pos];
  if (placeholder.symbol.name != replacement.ambient())
    throw ValidationError("splice ambient mismatch: placeholder " +
                          placeholder.symbol.name + " vs replacement ambient " +
                          replacement.ambient());
  std::vector<Block> blocks;
  blocks.reserve(s.size() + replacement.size());
  for (std::size_t i = 0; i < pos; ++i) blocks.push_back(s.blocks()[i]);
  for (Block b : replacement.blocks()) {
    b.twist += placeholder.twist;
    if (placeholder.box) {
      if (b.box)
        throw ValidationError("splice would stack box factors on " + b.to_string());
      b.box = placeholder.box;
    }
    blocks.push_back(std::move(b));
  }
  for (std::size_t i = pos + 1; i < s.size(); ++i) blocks.push_back(s.blocks()[i]);
  return s.with_blocks(std::move(blocks));
}

/// A replayable proof object: an initial decomposition, splice records
/// (executed first, in order), rule applications, and the final
/// decomposition the replay must reach exactly.
struct SpliceRecord {
  std::size_t pos = 0;
  Sod replacement;
};

struct DerivationStep {
  std::string rule;
  std::size_t pos = 0;
  std::optional<Sod> expect;  // optional intermediate checkpoint
};

struct Derivation {
  Sod initial;
  std::vector<SpliceRecord> splices;
  std::vector<DerivationStep> steps;
  Sod final_sod;
};

struct ReplayEntry {
  std::string stage;
  bool ok = true;
  std::string message;
};

struct ReplayReport {
  bool ok = true;
  std::vector<ReplayEntry> entries;
  Sod computed;
  std::vector<Sod> trace;  // state after every stage, for invariant checks

  std::optional<std::size_t> first_failure() const {
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (!entries[i].ok) return i;
    return std::nullopt;
  }
};

/// Execute a derivation from scratch, validating every splice, every rule
/// application and every declared checkpoint. Divergences become failed
/// entries and stop the replay; they never throw.
inline ReplayReport replay(const Derivation& d, const RuleTable& rules) {
  ReplayReport report;
  Sod current = d.initial;
  report.trace.push_back(current);

  auto fail = [&](std::string stage, std::string message) {
    report.entries.push_back({std::move(stage), false, std::move(message)});
    report.ok = false;
  };

  for (std::size_t i = 0; i < d.splices.size(); ++i) {
    std::string stage = "splice " + std::to_string(i);
    try {
      current = splice(current, d.splices[i].pos, d.splices[i].replacement);
    } catch (const ValidationError& e) {
      fail(stage, e.what());
      report.computed = current;
      return report;
    }
    report.entries.push_back({stage, true, ""});
    report.trace.push_back(current);
  }

  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& step = d.steps[i];
    std::string stage = "step " + std::to_string(i);
    const RewriteRule* rule = find_rule(rules, step.rule);
    if (!rule) {
      fail(stage, "unknown rule: " + step.rule);
      report.computed = current;
      return report;
    }
    try {
      current = apply_rule(current, *rule, step.pos);
    } catch (const ValidationError& e) {
      fail(stage, e.what());
      report.computed = current;
      return report;
    }
    if (step.expect && !sod_equal(current, *step.expect, SodCompare::Ordered)) {
      fail(stage, "diverged at step " + std::to_string(i) + ": expected " +
                      step.expect->to_string() + ", got " + current.to_string());
      report.computed = current;
      return report;
    }
    report.entries.push_back({stage, true, ""});
    report.trace.push_back(current);
  }

  bool final_ok = sod_equal(current, d.final_sod, SodCompare::Ordered);
  report.entries.push_back(
      {"final", final_ok,
       final_ok ? ""
                : "computed " + current.to_string() + " differs from declared final " +
                      d.final_sod.to_string()});
  if (!final_ok) report.ok = false;
  report.computed = current;
  return report;
}

}  // namespace sodforge
