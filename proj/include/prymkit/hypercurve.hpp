#pragma once

// Split hyperelliptic models y^2 = lead * prod (x - alpha_i), their points
// and the place sets attached to them.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "prymkit/mqelem.hpp"
#include "prymkit/poly.hpp"

namespace prymkit {

/// A finite set of places of Q. The archimedean place is always a member
/// and is not stored; `finite()` lists the primes.
class PlaceSet {
 public:
  PlaceSet() = default;
  PlaceSet(std::initializer_list<std::int64_t> primes);
  /// Throws PreconditionError for non-prime entries.
  explicit PlaceSet(const std::set<std::int64_t>& primes);

  void insert(std::int64_t p);
  void insert_all(const PlaceSet& other);
  bool contains(std::int64_t p) const { return primes_.count(p) != 0; }
  const std::set<std::int64_t>& finite() const { return primes_; }
  bool includes(const PlaceSet& other) const;

  /// "{inf,2,3}".
  std::string str() const;

  friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

 private:
  std::set<std::int64_t> primes_;
};

class HyperCurve {
 public:
  const std::vector<Scalar>& roots() const { return roots_; }
  const Scalar& lead() const { return lead_; }
  int genus() const { return genus_; }
  int degree() const { return static_cast<int>(roots_.size()); }
  bool odd_degree() const { return roots_.size() % 2 == 1; }
  bool is_rational() const;

  /// The defining polynomial lead * prod (x - alpha_i).
  MQPoly poly() const;
  /// Same over Q; throws PreconditionError unless is_rational().
  RatPoly rat_poly() const;
  Scalar f(const Scalar& x) const;
  std::vector<Rat> rat_roots() const;
  Rat rat_lead() const;

  friend bool operator==(const HyperCurve&, const HyperCurve&) = default;

 private:
  friend HyperCurve make_curve(std::vector<Scalar> roots, Scalar lead);
  std::vector<Scalar> roots_;
  Scalar lead_;
  int genus_ = 0;
};

/// Validates and builds y^2 = lead * prod (x - roots[i]). Errors:
/// "singular model" for repeated roots, "genus < 1 unsupported" for fewer
/// than three roots, zero lead.
HyperCurve make_curve(std::vector<Scalar> roots, Scalar lead);
HyperCurve make_rat_curve(const std::vector<Rat>& roots, const Rat& lead);

struct CurvePoint {
  Scalar x;
  Scalar y;
  bool at_infinity = false;

  static CurvePoint affine(Scalar x, Scalar y) { return {std::move(x), std::move(y), false}; }
  static CurvePoint infinity() { return {Scalar(0), Scalar(0), true}; }

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Sort key: affine before infinity, then x, then y (canonical_less).
bool point_less(const CurvePoint& a, const CurvePoint& b);

/// Exact membership. Points at infinity are on every model (one or two
/// of them for even degree; this model-level check does not separate them).
bool is_on_curve(const HyperCurve& c, const CurvePoint& p);

CurvePoint hyperelliptic_involution(const HyperCurve& c, const CurvePoint& p);

/// The points (alpha_i, 0), plus infinity for odd-degree models.
std::vector<CurvePoint> weierstrass_points(const HyperCurve& c);

/// Primes at which this model fails to reduce to a nonsingular curve of
/// the same genus: 2, primes of the lead, of root denominators and of
/// pairwise root differences. Rational curves only.
PlaceSet bad_primes(const HyperCurve& c);

/// Bad places for the pair (C, f) with f in Q(x): S, bad_primes(C), 2,
/// primes where f reduces to 0 or infinity identically, and primes where
/// a zero and a pole of f meet (homogeneous resultant of numerator and
/// denominator). Throws PreconditionError("constant f") for constant f.
PlaceSet compute_T(const HyperCurve& c, const RatFunc& f, const PlaceSet& s);

/// Generators of Z_S^* modulo squares: -1 and the finite primes of S.
std::vector<Integer> mordell_weil_field(const PlaceSet& s);

/// Primes dividing the numerator or denominator of r (r != 0).
std::set<std::int64_t> prime_support(const Rat& r);

}  // namespace prymkit
