#include "prymkit/integral_points.hpp"

#include <map>
#include <numeric>
#include <set>

#include "prymkit/covers.hpp"

namespace prymkit {

namespace {

bool s_integer(const Rat& v, const PlaceSet& s) {
  for (auto [p, e] : factor_integer(v.den())) {
    if (!s.contains(p)) return false;
  }
  return true;
}

std::optional<Rat> value_at_infinity(const RatFunc& f) {
  const int dn = f.num().degree(), dd = f.den().degree();
  if (f.num().is_zero() || dn < dd) return Rat(0);
  if (dn > dd) return std::nullopt;
  return f.num().lead() / f.den().lead();
}

// Affine points above x (none, one Weierstrass point or a pair).
std::vector<CurvePoint> lift(const RatPoly& fc, const Rat& x) {
  const Rat v = fc(x);
  Rat y;
  if (v.sign() < 0 || !rational_sqrt(v, y)) return {};
  if (y.is_zero()) return {CurvePoint::affine(x, Scalar(0))};
  return {CurvePoint::affine(x, -y), CurvePoint::affine(x, y)};
}

void require_split_rational(const HyperCurve& c) {
  if (!c.is_rational()) throw PreconditionError("curve must be split over Q");
}

// Elements of A[z_0..z_3] / (z_i^2 - w_i), stored by monomial mask.
using ZElem = std::array<MQPoly, 16>;

ZElem zmul(const ZElem& a, const ZElem& b, const std::array<MQPoly, 16>& w) {
  ZElem r;
  for (std::size_t i = 0; i < 16; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < 16; ++j) {
      if (b[j].is_zero()) continue;
      r[i ^ j] += a[i] * b[j] * w[i & j];
    }
  }
  return r;
}

std::string join_idx(const std::array<std::size_t, 4>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < 4; ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

}  // namespace

void validate(const IntegralitySpec& spec) {
  if (spec.f.is_constant()) throw PreconditionError("constant f");
  if (spec.height_bound < 1) throw PreconditionError("height bound must be at least 1");
}

bool is_integral_point(const HyperCurve& c, const IntegralitySpec& spec, const CurvePoint& p) {
  if (!is_on_curve(c, p)) return false;
  if (p.at_infinity) {
    const auto v = value_at_infinity(spec.f);
    return v && s_integer(*v, spec.s);
  }
  if (!p.x.is_rational()) return false;
  const auto v = spec.f.eval(p.x.to_rat());
  return v && s_integer(*v, spec.s);
}

std::vector<CurvePoint> brute_force_points(const HyperCurve& c, const IntegralitySpec& spec) {
  validate(spec);
  require_split_rational(c);
  const RatPoly fc = c.rat_poly();
  std::vector<CurvePoint> out;
  const long h = spec.height_bound;
  for (long b = 1; b <= h; ++b) {
    for (long a = -h; a <= h; ++a) {
      if (std::gcd(a, b) != 1) continue;
      const Rat x{Integer(a), Integer(b)};
      const auto v = spec.f.eval(x);
      if (!v || !s_integer(*v, spec.s)) continue;
      for (auto& pt : lift(fc, x)) out.push_back(std::move(pt));
    }
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

RatPoly cr_elimination_poly(const HyperCurve& c, const CurvePoint& q,
                            const std::array<std::size_t, 4>& idx, const Rat& target) {
  require_split_rational(c);
  if (target.is_zero() || target == Rat(1)) throw PreconditionError("degenerate target");
  if (q.at_infinity) throw PreconditionError("Q must be affine");
  const auto& roots = c.roots();
  std::set<std::size_t> seen(idx.begin(), idx.end());
  if (seen.size() != 4 || *seen.rbegin() >= roots.size()) {
    throw PreconditionError("need four distinct root indices");
  }
  std::array<Scalar, 4> cs;
  std::array<MQPoly, 4> lin;
  for (std::size_t i = 0; i < 4; ++i) {
    const Scalar d = q.x - roots[idx[i]];
    if (d.is_zero()) throw PreconditionError("x_Q coincides with a root");
    cs[i] = sqrt_adjoin(d.to_rat());
    lin[i] = MQPoly{-roots[idx[i]], Scalar(1)};
  }
  std::array<MQPoly, 16> w;
  for (std::size_t m = 0; m < 16; ++m) {
    w[m] = MQPoly::constant(Scalar(1));
    for (std::size_t i = 0; i < 4; ++i) {
      if (m >> i & 1U) w[m] *= lin[i];
    }
  }
  // (c_i z_j - c_j z_i) as a z-linear element with signs s on z.
  const Scalar t(target);
  ZElem prod;
  prod[0] = MQPoly::constant(Scalar(1));
  for (unsigned signs = 0; signs < 8; ++signs) {
    std::array<Scalar, 4> sg{Scalar(1), Scalar(1), Scalar(1), Scalar(1)};
    for (std::size_t i = 1; i < 4; ++i) {
      if (signs >> (i - 1) & 1U) sg[i] = Scalar(-1);
    }
    auto diff = [&](std::size_t i, std::size_t j) {
      ZElem e;
      e[1U << j] = MQPoly::constant(cs[i] * sg[j]);
      e[1U << i] = MQPoly::constant(-(cs[j] * sg[i]));
      return e;
    };
    const ZElem num = zmul(diff(0, 2), diff(1, 3), w);
    const ZElem den = zmul(diff(1, 2), diff(0, 3), w);
    ZElem e;
    for (std::size_t m = 0; m < 16; ++m) e[m] = num[m] - den[m] * t;
    prod = zmul(prod, e, w);
  }
  for (std::size_t m = 1; m < 16; ++m) {
    if (!prod[m].is_zero()) throw InvariantError("elimination left a square root");
  }
  const RatPoly out = to_rat(prod[0]);
  if (out.is_zero()) throw InvariantError("elimination polynomial vanishes identically");
  return out;
}

std::vector<CurvePoint> rational_poles(const HyperCurve& c, const RatFunc& f) {
  require_split_rational(c);
  const RatPoly fc = c.rat_poly();
  std::vector<CurvePoint> out;
  if (f.den().degree() <= 0) return out;
  for (const auto& x : rational_roots(f.den())) {
    for (auto& pt : lift(fc, x)) {
      if (!pt.y.is_zero()) out.push_back(std::move(pt));
    }
  }
  std::sort(out.begin(), out.end(), point_less);
  return out;
}

Recovery recover_points(const HyperCurve& c, const IntegralitySpec& spec,
                        const std::vector<HyperCurve>& candidates) {
  validate(spec);
  require_split_rational(c);
  if (!c.odd_degree() || c.genus() < 2) {
    throw PreconditionError("recovery needs an odd-degree model of genus >= 2");
  }
  const auto poles = rational_poles(c, spec.f);
  if (poles.empty()) throw PreconditionError("enlarge base field required");
  Recovery rec{poles.front(), {}, {}};
  const RatPoly fc = c.rat_poly();
  std::map<std::vector<Rat>, std::string> found;  // (x, y) -> via
  auto keep = [&](const CurvePoint& pt, const std::string& via) {
    if (!is_integral_point(c, spec, pt)) return;
    std::vector<Rat> key;
    if (!pt.at_infinity) key = {pt.x.to_rat(), pt.y.to_rat()};
    if (found.count(key) == 0) {
      found.emplace(key, via);
      rec.points.push_back(pt);
      rec.provenance.push_back({pt, via});
    }
  };

  const std::array<std::size_t, 4> base_idx{0, 1, 2, 3};
  std::map<Rat, std::vector<Rat>> solved;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const auto& cand = candidates[ci];
    if (!cand.is_rational()) throw PreconditionError("candidate curves must be split over Q");
    const auto& g = cand.roots();
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          for (std::size_t l = 0; l < n; ++l) {
            if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
            const Rat cr = cross_ratio(g[i], g[j], g[k], g[l]).to_rat();
            auto it = solved.find(cr);
            if (it == solved.end()) {
              it = solved.emplace(cr, rational_roots(cr_elimination_poly(c, rec.q, base_idx, cr)))
                       .first;
            }
            const std::string via = "candidate " + std::to_string(ci) + ", roots " +
                                    join_idx({i, j, k, l}) + ", cr " + cr.str();
            for (const auto& x : it->second) {
              for (const auto& pt : lift(fc, x)) keep(pt, via);
            }
          }
        }
      }
    }
  }
  for (const auto& pt : weierstrass_points(c)) keep(pt, "exceptional set");
  keep(rec.q, "exceptional set");
  keep(hyperelliptic_involution(c, rec.q), "exceptional set");

  std::sort(rec.points.begin(), rec.points.end(), point_less);
  std::sort(rec.provenance.begin(), rec.provenance.end(),
            [](const RecoveredPoint& a, const RecoveredPoint& b) {
              return point_less(a.point, b.point);
            });
  return rec;
}

}  // namespace prymkit
