#pragma once

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodforge {

/// Error class for malformed inputs: unknown names, bad parameters,
/// inconsistent structures. The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Integer coefficient vector over named divisor classes. Zero entries are
/// never stored.
using ClassCoefficients = std::map<std::string, int>;

/// A formal twist: a multidegree over divisor classes plus a homological
/// shift. Shifts are carried through the whole engine but stay 0 in every
/// shipped rule.
struct Twist {
  ClassCoefficients coeffs;
  int shift = 0;

  static Twist single(const std::string& cls, int k) {
    Twist t;
    if (k != 0) t.coeffs[cls] = k;
    return t;
  }

  bool is_zero() const { return coeffs.empty() && shift == 0; }

  int coefficient(const std::string& cls) const {
    auto it = coeffs.find(cls);
    return it == coeffs.end() ? 0 : it->second;
  }

  Twist& operator+=(const Twist& o) {
    for (const auto& [cls, c] : o.coeffs) {
      int v = (coeffs[cls] += c);
      if (v == 0) coeffs.erase(cls);
    }
    shift += o.shift;
    return *this;
  }

  friend Twist operator+(Twist a, const Twist& b) { return a += b; }

  Twist operator-() const {
    Twist t;
    for (const auto& [cls, c] : coeffs) t.coeffs[cls] = -c;
    t.shift = -shift;
    return t;
  }

  friend Twist operator-(Twist a, const Twist& b) { return a + (-b); }

  Twist operator*(int k) const {
    Twist t;
    if (k != 0)
      for (const auto& [cls, c] : coeffs) t.coeffs[cls] = c * k;
    t.shift = shift * k;
    return t;
  }

  friend bool operator==(const Twist&, const Twist&) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [cls, c] : coeffs) {
      if (!first) os << (c >= 0 ? "+" : "");
      os << c << cls;
      first = false;
    }
    if (shift != 0) os << "[" << shift << "]";
    return os.str();
  }
};

/// Free abelian group on named generators modulo directed relations. Every
/// non-basis generator must be solvable (with unit coefficient) from some
/// relation; normalization substitutes non-basis generators until only
/// basis classes remain.
class DivisorClassLattice {
 public:
  DivisorClassLattice() = default;

  DivisorClassLattice(std::vector<std::string> generators,
                      std::vector<ClassCoefficients> relations,
                      std::vector<std::string> basis)
      : generators_(std::move(generators)),
        relations_(std::move(relations)),
        basis_(std::move(basis)) {
    build_substitutions();
  }

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<ClassCoefficients>& relations() const { return relations_; }
  const std::vector<std::string>& basis() const { return basis_; }

  bool has_class(const std::string& name) const {
    for (const auto& g : generators_)
      if (g == name) return true;
    return false;
  }

  bool is_basis(const std::string& name) const {
    for (const auto& b : basis_)
      if (b == name) return true;
    return false;
  }

  /// Unique basis-reduced form. Throws ValidationError naming any class the
  /// lattice does not know.
  ClassCoefficients normalize(const ClassCoefficients& coeffs) const {
    ClassCoefficients out;
    for (const auto& [cls, c] : coeffs) {
      if (c == 0) continue;
      if (is_basis(cls)) {
        add_term(out, cls, c);
      } else if (auto it = substitutions_.find(cls); it != substitutions_.end()) {
        for (const auto& [b, bc] : it->second) add_term(out, b, c * bc);
      } else {
        throw ValidationError("unknown divisor class: " + cls);
      }
    }
    return out;
  }

  Twist normalize(const Twist& t) const {
    Twist out;
    out.coeffs = normalize(t.coeffs);
    out.shift = t.shift;
    return out;
  }

  friend bool operator==(const DivisorClassLattice&, const DivisorClassLattice&) = default;

 private:
  static void add_term(ClassCoefficients& m, const std::string& cls, int c) {
    if (c == 0) return;
    int v = (m[cls] += c);
    if (v == 0) m.erase(cls);
  }

  void build_substitutions() {
    std::set<std::string> gen_set(generators_.begin(), generators_.end());
    if (gen_set.size() != generators_.size())
      throw ValidationError("duplicate generator name in lattice");
    for (const auto& b : basis_)
      if (!gen_set.count(b))
        throw ValidationError("basis class is not a generator: " + b);
    for (const auto& rel : relations_)
      for (const auto& [cls, c] : rel)
        if (!gen_set.count(cls))
          throw ValidationError("relation references unknown class: " + cls);

    // Triangularize: repeatedly take a relation whose only unsolved
    // non-basis generator appears with a unit coefficient and solve for it.
    // This keeps substitution integral and directed.
    std::set<std::string> unsolved;
    for (const auto& g : generators_)
      if (!is_basis(g)) unsolved.insert(g);
    std::vector<bool> used(relations_.size(), false);
    while (!unsolved.empty()) {
      bool progress = false;
      for (std::size_t i = 0; i < relations_.size(); ++i) {
        if (used[i]) continue;
        const std::string* candidate = nullptr;
        int candidates = 0;
        for (const auto& [cls, c] : relations_[i]) {
          if (unsolved.count(cls)) {
            ++candidates;
            if (c == 1 || c == -1) candidate = &cls;
          }
        }
        if (candidates != 1 || !candidate) continue;
        int sign = relations_[i].at(*candidate);
        ClassCoefficients expr;
        for (const auto& [cls, c] : relations_[i])
          if (cls != *candidate) add_term(expr, cls, -c * sign);
        substitutions_[*candidate] = std::move(expr);
        unsolved.erase(*candidate);
        used[i] = true;
        progress = true;
        break;
      }
      if (!progress)
        throw ValidationError("no relation solves non-basis class: " + *unsolved.begin());
    }

    // Expand chained substitutions; a pass count beyond the number of
    // non-basis generators means the relations are cyclic.
    for (std::size_t round = 0; round <= substitutions_.size(); ++round) {
      bool changed = false;
      for (auto& [g, expr] : substitutions_) {
        ClassCoefficients next;
        for (const auto& [cls, c] : expr) {
          if (is_basis(cls)) {
            add_term(next, cls, c);
          } else {
            auto it = substitutions_.find(cls);
            if (it == substitutions_.end())
              throw ValidationError("unsolvable class in relation: " + cls);
            for (const auto& [b, bc] : it->second) add_term(next, b, c * bc);
            changed = true;
          }
        }
        expr = std::move(next);
      }
      if (!changed) return;
    }
    throw ValidationError("cyclic relations: substitution does not terminate");
  }

  std::vector<std::string> generators_;
  std::vector<ClassCoefficients> relations_;
  std::vector<std::string> basis_;
  std::map<std::string, ClassCoefficients> substitutions_;
};

/// Normalize a twist through a lattice (free-function spelling).
inline Twist normalize_twist(const Twist& t, const DivisorClassLattice& lattice) {
  return lattice.normalize(t);
}

// Divisor classes used throughout the duality constructions.
inline const std::string kClassH = "H";      // O_{P(V)}(1)
inline const std::string kClassHp = "H'";    // O_{P(V^)}(1)
inline const std::string kClassHK = "H_K";   // O_{P(K^)}(1)
inline const std::string kClassE = "E";      // exceptional divisor

/// The working lattice of the duality constructions: classes H, H', H_K, E
/// with E = H_K - H'. When the quotient sheaf is locally free the blow-up
/// is trivial, H_K and H' agree and E collapses to zero.
inline DivisorClassLattice duality_lattice(bool locally_free = false) {
  std::vector<std::string> gens{kClassH, kClassHp, kClassHK, kClassE};
  ClassCoefficients exceptional{{kClassE, 1}, {kClassHK, -1}, {kClassHp, 1}};
  if (locally_free) {
    ClassCoefficients collapse{{kClassHK, 1}, {kClassHp, -1}};
    return DivisorClassLattice(gens, {exceptional, collapse}, {kClassH, kClassHp});
  }
  return DivisorClassLattice(gens, {exceptional}, {kClassH, kClassHp, kClassHK});
}

}  // namespace sodforge
