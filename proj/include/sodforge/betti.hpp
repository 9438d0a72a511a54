#pragma once

// Betti-number oracle for desk-scale test geometries.
//
// This header deliberately includes nothing from the rest of the library:
// the oracle must stay independent of the SOD generators it is used to
// cross-check. All geometries here have algebraic cohomology concentrated
// in even degrees, so the total Betti rank equals the K0 rank.

#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sodforge {

struct ToyGeometryError : std::runtime_error {
  explicit ToyGeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Recursive descriptor of a toy geometry. Build through the factory
/// functions below; the raw struct is immutable once constructed.
struct ToyGeometry {
  enum class Kind {
    Empty,
    Point,
    ProjectiveSpace,    // P^n
    Product,            // A x B
    ProjectiveBundle,   // fiber P^{r-1} over base
    Blowup,             // Bl_center(base), center of codimension r
    DivisorHyperplane,  // smooth divisor of multidegree d in a product of P^n
  };

  Kind kind = Kind::Point;
  int param = 0;  // n for P^n, fiber rank r for bundles, codim r for blowups
  std::shared_ptr<const ToyGeometry> base;
  std::shared_ptr<const ToyGeometry> center;
  std::vector<int> ambient_factors;  // DivisorHyperplane: n_i per P^{n_i} factor
  std::vector<int> degree;           // DivisorHyperplane: multidegree d_i

  int dim() const {
    switch (kind) {
      case Kind::Empty: return -1;
      case Kind::Point: return 0;
      case Kind::ProjectiveSpace: return param;
      case Kind::Product: return base->dim() + center->dim();
      case Kind::ProjectiveBundle: return base->dim() + param - 1;
      case Kind::Blowup: return base->dim();
      case Kind::DivisorHyperplane:
        return std::accumulate(ambient_factors.begin(), ambient_factors.end(), 0) - 1;
    }
    return 0;
  }
};

inline ToyGeometry toy_point() { return ToyGeometry{}; }

inline ToyGeometry toy_empty() {
  ToyGeometry t;
  t.kind = ToyGeometry::Kind::Empty;
  return t;
}

inline ToyGeometry toy_projective_space(int n) {
  if (n < 1) throw ToyGeometryError("projective space dimension must be >= 1");
  ToyGeometry t;
  t.kind = ToyGeometry::Kind::ProjectiveSpace;
  t.param = n;
  return t;
}

inline ToyGeometry toy_product(ToyGeometry a, ToyGeometry b) {
  ToyGeometry t;
  t.kind = ToyGeometry::Kind::Product;
  t.base = std::make_shared<ToyGeometry>(std::move(a));
  t.center = std::make_shared<ToyGeometry>(std::move(b));
  return t;
}

inline ToyGeometry toy_projective_bundle(ToyGeometry base, int fiber_rank) {
  if (fiber_rank < 1) throw ToyGeometryError("projective bundle needs fiber rank >= 1");
  ToyGeometry t;
  t.kind = ToyGeometry::Kind::ProjectiveBundle;
  t.param = fiber_rank;
  t.base = std::make_shared<ToyGeometry>(std::move(base));
  return t;
}

inline ToyGeometry toy_blowup(ToyGeometry base, ToyGeometry center, int codim) {
  if (codim < 2) throw ToyGeometryError("blow-up center must have codimension >= 2");
  if (codim > base.dim())
    throw ToyGeometryError("blow-up codimension exceeds base dimension");
  ToyGeometry t;
  t.kind = ToyGeometry::Kind::Blowup;
  t.param = codim;
  t.base = std::make_shared<ToyGeometry>(std::move(base));
  t.center = std::make_shared<ToyGeometry>(std::move(center));
  return t;
}

inline ToyGeometry toy_divisor_hyperplane(std::vector<int> ambient_factors,
                                          std::vector<int> degree) {
  if (ambient_factors.empty() || ambient_factors.size() != degree.size())
    throw ToyGeometryError("divisor descriptor needs one degree per ambient factor");
  for (int n : ambient_factors)
    if (n < 1) throw ToyGeometryError("ambient factor dimension must be >= 1");
  for (int d : degree)
    if (d < 0) throw ToyGeometryError("divisor multidegree must be nonnegative");
  ToyGeometry t;
  t.kind = ToyGeometry::Kind::DivisorHyperplane;
  t.ambient_factors = std::move(ambient_factors);
  t.degree = std::move(degree);
  return t;
}

namespace detail {

// Truncated multivariate polynomial over Z, exponents bounded per variable
// by the ambient factor dimensions. Used only for the divisor Euler
// characteristic below.
class TruncPoly {
 public:
  explicit TruncPoly(std::vector<int> bounds) : bounds_(std::move(bounds)) {}

  static TruncPoly constant(std::vector<int> bounds, long long c) {
    TruncPoly p(std::move(bounds));
    if (c != 0) p.terms_[std::vector<int>(p.bounds_.size(), 0)] = c;
    return p;
  }

  static TruncPoly variable(std::vector<int> bounds, std::size_t i) {
    TruncPoly p(std::move(bounds));
    std::vector<int> e(p.bounds_.size(), 0);
    e[i] = 1;
    if (e[i] <= p.bounds_[i]) p.terms_[std::move(e)] = 1;
    return p;
  }

  TruncPoly& operator+=(const TruncPoly& o) {
    for (const auto& [e, c] : o.terms_) {
      auto& v = terms_[e];
      v += c;
      if (v == 0) terms_.erase(e);
    }
    return *this;
  }

  TruncPoly operator*(const TruncPoly& o) const {
    TruncPoly r(bounds_);
    for (const auto& [ea, ca] : terms_) {
      for (const auto& [eb, cb] : o.terms_) {
        std::vector<int> e(bounds_.size());
        bool keep = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
          e[i] = ea[i] + eb[i];
          if (e[i] > bounds_[i]) { keep = false; break; }
        }
        if (!keep) continue;
        auto& v = r.terms_[std::move(e)];
        v += ca * cb;
        if (v == 0) r.terms_.erase(e);
      }
    }
    return r;
  }

  TruncPoly scaled(long long k) const {
    TruncPoly r(bounds_);
    if (k == 0) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * k;
    return r;
  }

  long long coefficient(const std::vector<int>& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  bool is_zero() const { return terms_.empty(); }

 private:
  std::vector<int> bounds_;
  std::map<std::vector<int>, long long> terms_;
};

// chi_top of a smooth divisor of class h in M = prod P^{n_i}:
//   chi = deg( h * c(T_M) / (1+h) ),
// evaluated in Z[H_1..H_m] / (H_i^{n_i + 1}).
inline long long divisor_euler_characteristic(const std::vector<int>& factors,
                                              const std::vector<int>& degree) {
  const std::size_t m = factors.size();
  std::vector<int> bounds(factors.begin(), factors.end());
  int total_dim = std::accumulate(factors.begin(), factors.end(), 0);

  TruncPoly tangent = TruncPoly::constant(bounds, 1);
  for (std::size_t i = 0; i < m; ++i) {
    TruncPoly one_plus_h = TruncPoly::constant(bounds, 1);
    one_plus_h += TruncPoly::variable(bounds, i);
    for (int j = 0; j < factors[i] + 1; ++j) tangent = tangent * one_plus_h;
  }

  TruncPoly h(bounds);
  for (std::size_t i = 0; i < m; ++i)
    h += TruncPoly::variable(bounds, i).scaled(degree[i]);
  if (h.is_zero()) throw ToyGeometryError("divisor class is zero");

  // 1/(1+h) = sum (-h)^j, truncated past the ambient dimension.
  TruncPoly inv = TruncPoly::constant(bounds, 1);
  TruncPoly pow = TruncPoly::constant(bounds, 1);
  for (int j = 1; j <= total_dim; ++j) {
    pow = pow * h;
    inv += pow.scaled(j % 2 == 0 ? 1 : -1);
  }

  TruncPoly integrand = h * tangent * inv;
  std::vector<int> top(factors.begin(), factors.end());
  return integrand.coefficient(top);
}

}  // namespace detail

/// Betti table: entry j is the rank of H^{2j}. Odd cohomology vanishes for
/// every geometry this oracle accepts.
using BettiTable = std::vector<long long>;

inline BettiTable betti_table(const ToyGeometry& t) {
  using Kind = ToyGeometry::Kind;
  switch (t.kind) {
    case Kind::Empty:
      return {};
    case Kind::Point:
      return {1};
    case Kind::ProjectiveSpace:
      return BettiTable(static_cast<std::size_t>(t.param) + 1, 1);
    case Kind::Product: {
      BettiTable a = betti_table(*t.base);
      BettiTable b = betti_table(*t.center);
      BettiTable r(a.size() + b.size() - 1, 0);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
      return r;
    }
    case Kind::ProjectiveBundle: {
      BettiTable base = betti_table(*t.base);
      BettiTable r(base.size() + t.param - 1, 0);
      for (int j = 0; j < t.param; ++j)
        for (std::size_t i = 0; i < base.size(); ++i) r[i + j] += base[i];
      return r;
    }
    case Kind::Blowup: {
      // b_i(Bl) = b_i(X) + sum_{j=1}^{r-1} b_{i-2j}(Z); identity when the
      // center is trivial contributes nothing extra only if r = codim is
      // honored, which the constructor checks.
      BettiTable base = betti_table(*t.base);
      BettiTable center = betti_table(*t.center);
      BettiTable r = base;
      std::size_t need = center.size() + t.param - 2;
      if (r.size() < need + 1) r.resize(need + 1, 0);
      for (int j = 1; j <= t.param - 1; ++j)
        for (std::size_t i = 0; i < center.size(); ++i) r[i + j] += center[i];
      return r;
    }
    case Kind::DivisorHyperplane:
      throw ToyGeometryError(
          "divisor hyperplanes report only a total rank; use betti_oracle");
  }
  throw ToyGeometryError("unknown toy geometry kind");
}

/// Total Betti rank of the geometry (= K0 rank for these instances).
inline long long betti_oracle(const ToyGeometry& t) {
  if (t.kind == ToyGeometry::Kind::DivisorHyperplane)
    return detail::divisor_euler_characteristic(t.ambient_factors, t.degree);
  BettiTable table = betti_table(t);
  return std::accumulate(table.begin(), table.end(), 0LL);
}

}  // namespace sodforge
