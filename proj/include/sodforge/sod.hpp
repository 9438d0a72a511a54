#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sodforge/lattice.hpp"

namespace sodforge {

/// A named category appearing as (part of) an SOD component. `rank` is the
/// optional K0 rank used by the verification module; `support` is a free
/// descriptor tag; `absorbs` lists divisor classes under which the embedded
/// image is twist-stable, so those twist coordinates carry no information
/// and are erased during block normalization. Exceptional-divisor images
/// absorb the center's hyperplane class, pullback images absorb the source
/// hyperplane class; that stability is what lets a mutation chain land on a
/// closed form on the nose.
struct CategorySymbol {
  std::string name;
  std::optional<long long> rank;
  std::optional<std::string> support;
  bool empty = false;
  std::vector<std::string> absorbs;

  CategorySymbol() = default;
  explicit CategorySymbol(std::string n) : name(std::move(n)) {}

  static CategorySymbol empty_category(std::string n = "0") {
    CategorySymbol s(std::move(n));
    s.empty = true;
    s.rank = 0;
    return s;
  }

  CategorySymbol with_rank(long long r) const {
    CategorySymbol s = *this;
    s.rank = empty ? 0 : r;
    return s;
  }

  CategorySymbol absorbing(std::vector<std::string> classes) const {
    CategorySymbol s = *this;
    s.absorbs = std::move(classes);
    std::sort(s.absorbs.begin(), s.absorbs.end());
    s.absorbs.erase(std::unique(s.absorbs.begin(), s.absorbs.end()), s.absorbs.end());
    return s;
  }

  CategorySymbol supported_on(std::string tag) const {
    CategorySymbol s = *this;
    s.support = std::move(tag);
    return s;
  }

  /// Identity of a symbol is its name (plus emptiness); rank, support and
  /// absorption are attributes of the named category, not part of it.
  friend bool same_symbol(const CategorySymbol& a, const CategorySymbol& b) {
    return a.name == b.name && a.empty == b.empty;
  }
};

/// One SOD component: a symbol with a formal twist, an optional external
/// box factor, and an optional provenance annotation (the embedding
/// functor). Annotations never participate in equality.
struct Block {
  CategorySymbol symbol;
  Twist twist;
  std::optional<CategorySymbol> box;
  std::optional<std::string> annotation;

  Block() = default;
  explicit Block(CategorySymbol s, Twist t = {}) : symbol(std::move(s)), twist(std::move(t)) {}

  Block boxed(CategorySymbol b) const {
    Block r = *this;
    r.box = std::move(b);
    return r;
  }

  Block annotated(std::string a) const {
    Block r = *this;
    r.annotation = std::move(a);
    return r;
  }

  Block twisted(const Twist& t) const {
    Block r = *this;
    r.twist += t;
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << symbol.name;
    if (!twist.coeffs.empty() || twist.shift != 0) os << "(" << twist.to_string() << ")";
    if (box) os << " (x) " << box->name;
    return os.str();
  }
};

inline bool block_equal(const Block& a, const Block& b) {
  if (!same_symbol(a.symbol, b.symbol)) return false;
  if (a.twist != b.twist) return false;
  if (a.box.has_value() != b.box.has_value()) return false;
  if (a.box && !same_symbol(*a.box, *b.box)) return false;
  return true;
}

/// Lattice normal form plus erasure of twist coordinates absorbed by the
/// block's symbol or box factor.
inline Block normalize_block(Block b, const DivisorClassLattice& lattice) {
  b.twist = lattice.normalize(b.twist);
  auto absorb = [&b](const std::vector<std::string>& classes) {
    for (const auto& cls : classes) b.twist.coeffs.erase(cls);
  };
  absorb(b.symbol.absorbs);
  if (b.box) absorb(b.box->absorbs);
  return b;
}

/// An ordered semiorthogonal decomposition over a fixed divisor-class
/// lattice. Blocks are stored in normal form; blocks whose symbol or box
/// factor is an empty category are elided at construction.
class Sod {
 public:
  Sod() : lattice_(duality_lattice(false)) {}

  Sod(std::string ambient, DivisorClassLattice lattice, std::vector<Block> blocks)
      : ambient_(std::move(ambient)), lattice_(std::move(lattice)) {
    blocks_.reserve(blocks.size());
    for (auto& b : blocks) {
      if (b.symbol.empty) continue;
      if (b.box && b.box->empty) continue;
      blocks_.push_back(normalize_block(std::move(b), lattice_));
    }
  }

  const std::string& ambient() const { return ambient_; }
  const DivisorClassLattice& lattice() const { return lattice_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }

  const Block& at(std::size_t i) const {
    if (i >= blocks_.size()) throw ValidationError("block position out of range");
    return blocks_[i];
  }

  /// Rebuild with a different block list, keeping ambient and lattice.
  Sod with_blocks(std::vector<Block> blocks) const {
    return Sod(ambient_, lattice_, std::move(blocks));
  }

  Sod with_ambient(std::string ambient) const {
    Sod s = *this;
    s.ambient_ = std::move(ambient);
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "<";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) os << ", ";
      os << blocks_[i].to_string();
    }
    os << ">";
    return os.str();
  }

 private:
  std::string ambient_;
  DivisorClassLattice lattice_;
  std::vector<Block> blocks_;
};

enum class SodCompare { Ordered, Multiset };

/// Block-level equality of two SODs over the same lattice. The ambient
/// label is a descriptor and does not participate. Ordered equality implies
/// multiset equality.
inline bool sod_equal(const Sod& a, const Sod& b, SodCompare mode = SodCompare::Ordered) {
  if (!(a.lattice() == b.lattice()))
    throw ValidationError("sod_equal: operands live over different lattices");
  if (a.size() != b.size()) return false;
  if (mode == SodCompare::Ordered) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!block_equal(a.blocks()[i], b.blocks()[i])) return false;
    return true;
  }
  std::vector<bool> used(b.size(), false);
  for (const auto& blk : a.blocks()) {
    bool found = false;
    for (std::size_t j = 0; j < b.size() && !found; ++j) {
      if (!used[j] && block_equal(blk, b.blocks()[j])) {
        used[j] = true;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Twist every block by t (the autoequivalence "tensor by O(t)").
inline Sod twist_sod(const Sod& s, const Twist& t) {
  std::vector<Block> blocks = s.blocks();
  for (auto& b : blocks) b.twist += t;
  return s.with_blocks(std::move(blocks));
}

}  // namespace sodforge
