#include "prymkit/hypercurve.hpp"

#include <algorithm>
#include <sstream>

namespace prymkit {

PlaceSet::PlaceSet(std::initializer_list<std::int64_t> primes) {
  for (auto p : primes) insert(p);
}

PlaceSet::PlaceSet(const std::set<std::int64_t>& primes) {
  for (auto p : primes) insert(p);
}

void PlaceSet::insert(std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("S entry " + std::to_string(p) + " is not prime");
  primes_.insert(p);
}

void PlaceSet::insert_all(const PlaceSet& other) {
  primes_.insert(other.primes_.begin(), other.primes_.end());
}

bool PlaceSet::includes(const PlaceSet& other) const {
  return std::includes(primes_.begin(), primes_.end(), other.primes_.begin(),
                       other.primes_.end());
}

std::string PlaceSet::str() const {
  std::string s = "{inf";
  for (auto p : primes_) s += "," + std::to_string(p);
  return s + "}";
}

bool HyperCurve::is_rational() const {
  return lead_.is_rational() && std::all_of(roots_.begin(), roots_.end(),
                                            [](const Scalar& r) { return r.is_rational(); });
}

MQPoly HyperCurve::poly() const { return MQPoly::from_roots(roots_, lead_); }

RatPoly HyperCurve::rat_poly() const { return RatPoly::from_roots(rat_roots(), rat_lead()); }

Scalar HyperCurve::f(const Scalar& x) const {
  Scalar v = lead_;
  for (const auto& r : roots_) v *= x - r;
  return v;
}

std::vector<Rat> HyperCurve::rat_roots() const {
  std::vector<Rat> out;
  out.reserve(roots_.size());
  for (const auto& r : roots_) out.push_back(r.to_rat());
  return out;
}

Rat HyperCurve::rat_lead() const { return lead_.to_rat(); }

HyperCurve make_curve(std::vector<Scalar> roots, Scalar lead) {
  if (roots.size() < 3) throw PreconditionError("genus < 1 unsupported");
  if (lead.is_zero()) throw PreconditionError("zero leading coefficient");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (roots[i] == roots[j]) throw PreconditionError("singular model");
    }
  }
  HyperCurve c;
  c.genus_ = static_cast<int>((roots.size() + 1) / 2) - 1;
  c.roots_ = std::move(roots);
  c.lead_ = std::move(lead);
  return c;
}

HyperCurve make_rat_curve(const std::vector<Rat>& roots, const Rat& lead) {
  return make_curve(std::vector<Scalar>(roots.begin(), roots.end()), Scalar(lead));
}

bool point_less(const CurvePoint& a, const CurvePoint& b) {
  if (a.at_infinity != b.at_infinity) return b.at_infinity;
  if (a.at_infinity) return false;
  if (canonical_less(a.x, b.x)) return true;
  if (canonical_less(b.x, a.x)) return false;
  return canonical_less(a.y, b.y);
}

bool is_on_curve(const HyperCurve& c, const CurvePoint& p) {
  if (p.at_infinity) return true;
  return p.y * p.y == c.f(p.x);
}

CurvePoint hyperelliptic_involution(const HyperCurve& c, const CurvePoint& p) {
  if (!is_on_curve(c, p)) throw PreconditionError("point is not on the curve");
  if (p.at_infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

std::vector<CurvePoint> weierstrass_points(const HyperCurve& c) {
  std::vector<CurvePoint> out;
  for (const auto& r : c.roots()) out.push_back(CurvePoint::affine(r, Scalar(0)));
  if (c.odd_degree()) out.push_back(CurvePoint::infinity());
  return out;
}

std::set<std::int64_t> prime_support(const Rat& r) {
  if (r.is_zero()) throw PreconditionError("prime support of zero");
  std::set<std::int64_t> out;
  for (auto [p, e] : factor_integer(r.num())) out.insert(p);
  for (auto [p, e] : factor_integer(r.den())) out.insert(p);
  return out;
}

PlaceSet bad_primes(const HyperCurve& c) {
  if (!c.is_rational()) throw PreconditionError("bad_primes requires a curve over Q");
  std::set<std::int64_t> bad{2};
  auto add = [&](const Rat& r) {
    const auto s = prime_support(r);
    bad.insert(s.begin(), s.end());
  };
  add(c.rat_lead());
  const auto roots = c.rat_roots();
  for (const auto& a : roots) {
    if (!a.is_integer()) add(Rat(a.den()));
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) add(Rat((roots[i] - roots[j]).num()));
  }
  return PlaceSet(bad);
}

PlaceSet compute_T(const HyperCurve& c, const RatFunc& f, const PlaceSet& s) {
  if (f.is_constant()) throw PreconditionError("constant f");
  PlaceSet t = s;
  t.insert_all(bad_primes(c));
  t.insert(2);
  // f = ratio * A / B with A, B primitive integral.
  const auto a = primitive_integer_coeffs(f.num());
  const auto b = primitive_integer_coeffs(f.den());
  const Rat ratio = content(f.num()) / content(f.den());
  for (auto p : prime_support(ratio)) t.insert(p);
  const int d = std::max(f.num().degree(), f.den().degree());
  const Integer res = sylvester_resultant(a, d, b, d);
  if (res == 0) throw InvariantError("numerator and denominator of f share a root");
  for (auto p : prime_support(Rat(res))) t.insert(p);
  return t;
}

std::vector<Integer> mordell_weil_field(const PlaceSet& s) {
  std::vector<Integer> out{Integer(-1)};
  for (auto p : s.finite()) out.emplace_back(static_cast<long>(p));
  return out;
}

}  // namespace prymkit
