#include "prymkit/zeta.hpp"

#include <algorithm>

namespace prymkit {

namespace {

std::uint32_t reduce_or_bad(const Rat& r, std::uint32_t p, const char* what) {
  if (mpz_divisible_ui_p(r.den().get_mpz_t(), p) != 0) {
    throw PreconditionError(std::string("bad reduction: ") + what + " is not " +
                            std::to_string(p) + "-integral");
  }
  return reduce_mod(r, p);
}

std::vector<std::uint32_t> reduce_poly(const RatPoly& f, std::uint32_t p, const char* what) {
  std::vector<std::uint32_t> out;
  for (const auto& c : f.coeffs()) out.push_back(reduce_or_bad(c, p, what));
  return out;
}

std::uint32_t eval_mod(const std::vector<std::uint32_t>& c, std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % p;
  return static_cast<std::uint32_t>(acc);
}

}  // namespace

bool FpCurve::nonsingular() const {
  if (lead % p == 0) return false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (roots[i] == roots[j]) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> FpCurve::poly() const {
  std::vector<std::uint64_t> c{lead % p};
  for (auto r : roots) {
    std::vector<std::uint64_t> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] = (next[i + 1] + c[i]) % p;
      next[i] = (next[i] + c[i] * (p - r)) % p;
    }
    c = std::move(next);
  }
  return {c.begin(), c.end()};
}

FpCurve reduce_curve(const HyperCurve& c, std::uint32_t p) {
  if (bad_primes(c).contains(p)) throw PreconditionError("bad reduction");
  FpCurve out;
  out.p = p;
  out.lead = reduce_mod(c.rat_lead(), p);
  for (const auto& r : c.rat_roots()) out.roots.push_back(reduce_mod(r, p));
  if (!out.nonsingular()) throw InvariantError("good prime with singular reduction");
  return out;
}

std::uint64_t count_points(const FpCurve& c, const ExtensionField& k) {
  if (k.characteristic() != c.p) throw PreconditionError("field characteristic mismatch");
  std::uint64_t n = 0;
  const auto lead = k.from_base(c.lead);
  for (std::uint32_t x = 0; x < k.size(); ++x) {
    auto v = lead;
    for (auto r : c.roots) v = k.mul(v, k.sub_base(x, r));
    n += static_cast<std::uint64_t>(1 + k.chi(v));
  }
  if (c.odd_degree()) return n + 1;
  return n + static_cast<std::uint64_t>(1 + k.chi(lead));
}

std::uint64_t count_points(const FpCurve& c, unsigned i, std::uint64_t field_budget) {
  if (i < 1 || static_cast<int>(i) > 2 * c.genus()) {
    throw PreconditionError("extension degree out of range");
  }
  return count_points(c, ExtensionField(c.p, i, field_budget));
}

ReducedCover reduce_cover(const CoverCertificate& cert, std::uint32_t p) {
  const auto& base = cert.tuple.base;
  if (p % 2 == 0) throw PreconditionError("bad reduction: p must be odd");
  ReducedCover rc;
  rc.curve = reduce_curve(base.curve, p);
  const RatPoly h = to_rat(cert.h);
  const RatPoly f_poly = to_rat(cert.f_poly);
  rc.h = reduce_poly(h, p, "h");
  rc.f_poly = reduce_poly(f_poly, p, "F");
  rc.xp = reduce_or_bad(base.p.x.to_rat(), p, "x_P");
  rc.xq = reduce_or_bad(base.q.x.to_rat(), p, "x_Q");
  const auto yp = reduce_or_bad(base.p.y.to_rat(), p, "y_P");
  const auto yq = reduce_or_bad(base.q.y.to_rat(), p, "y_Q");
  if (rc.xp == rc.xq) throw PreconditionError("bad reduction: x_P = x_Q mod p");
  if (yp == 0 || yq == 0) throw PreconditionError("bad reduction: P or Q becomes Weierstrass");
  if (rc.h.back() == 0 || rc.f_poly.back() == 0) {
    throw PreconditionError("degenerate reduction: leading coefficient of h or F vanishes");
  }
  // A common root of F and f would add branch points above a Weierstrass
  // point. Repeated roots of F, or roots at x_P, x_Q, change nothing.
  for (auto r : rc.curve.roots) {
    if (eval_mod(rc.f_poly, r, p) == 0) throw PreconditionError("bad reduction: F meets f");
  }
  return rc;
}

std::uint64_t count_double_cover(const ReducedCover& cv, const ExtensionField& k) {
  const auto& c = cv.curve;
  if (k.characteristic() != c.p) throw PreconditionError("field characteristic mismatch");
  const auto lead = k.from_base(c.lead);
  std::uint64_t n = 0;
  for (std::uint32_t x = 0; x < k.size(); ++x) {
    auto fx = lead;
    for (auto r : c.roots) fx = k.mul(fx, k.sub_base(x, r));
    if (k.chi(fx) < 0) continue;
    const auto hx = k.eval(cv.h, x);
    const auto root = k.sqrt(fx);
    const std::uint32_t ys[2] = {root, k.neg(root)};
    const int fiber = (fx == 0) ? 1 : 2;
    for (int s = 0; s < fiber; ++s) {
      const auto v = k.add(ys[s], hx);
      if (v != 0) {
        n += static_cast<std::uint64_t>(1 + k.chi(v));
      } else if (x == cv.xp || x == cv.xq) {
        n += 1;
      } else {
        const auto w = k.mul(k.mul(k.add(hx, hx), k.sub_base(x, cv.xp)), k.sub_base(x, cv.xq));
        n += static_cast<std::uint64_t>(1 + k.chi(w));
      }
    }
  }
  auto at_inf = k.from_base(cv.h.back());
  for (int i = 0; i <= c.genus(); ++i) at_inf = k.mul(at_inf, lead);
  return n + static_cast<std::uint64_t>(1 + k.chi(at_inf));
}

std::uint64_t count_double_cover(const ReducedCover& cover, unsigned i,
                                 std::uint64_t field_budget) {
  if (i < 1 || static_cast<int>(i) > 4 * cover.curve.genus()) {
    throw PreconditionError("extension degree out of range");
  }
  return count_double_cover(cover, ExtensionField(cover.curve.p, i, field_budget));
}

Integer LPoly::jacobian_order() const {
  Integer s = 0;
  for (const auto& a : coeffs) s += a;
  return s;
}

LPoly l_polynomial(const std::vector<std::uint64_t>& counts, int genus, std::uint64_t q) {
  if (genus < 1 || counts.size() != static_cast<std::size_t>(genus)) {
    throw PreconditionError("need exactly genus many counts");
  }
  const Integer qq(static_cast<unsigned long>(q));
  std::vector<Integer> s(static_cast<std::size_t>(genus) + 1, 0);
  Integer qk = 1;
  for (int k = 1; k <= genus; ++k) {
    qk *= qq;
    const Integer n(static_cast<unsigned long>(counts[static_cast<std::size_t>(k - 1)]));
    s[static_cast<std::size_t>(k)] = qk + 1 - n;
    const Integer dev = s[static_cast<std::size_t>(k)];
    if (dev * dev > 4 * genus * genus * qk) throw PreconditionError("inconsistent counts");
  }
  LPoly lp;
  lp.q = q;
  lp.coeffs.assign(static_cast<std::size_t>(2 * genus) + 1, 0);
  lp.coeffs[0] = 1;
  for (int j = 1; j <= genus; ++j) {
    Integer acc = 0;
    for (int k = 1; k <= j; ++k) {
      acc += s[static_cast<std::size_t>(k)] * lp.coeffs[static_cast<std::size_t>(j - k)];
    }
    if (acc % j != 0) throw PreconditionError("inconsistent counts");
    lp.coeffs[static_cast<std::size_t>(j)] = -acc / j;
  }
  for (int j = 0; j < genus; ++j) {
    Integer scale = 1;
    for (int i = 0; i < genus - j; ++i) scale *= qq;
    lp.coeffs[static_cast<std::size_t>(2 * genus - j)] = scale * lp.coeffs[static_cast<std::size_t>(j)];
  }
  if (lp.jacobian_order() <= 0) throw PreconditionError("inconsistent counts");
  return lp;
}

std::string to_string(TwistMatch m) {
  switch (m) {
    case TwistMatch::kOne:
      return "1";
    case TwistMatch::kNonresidue:
      return "ns";
    case TwistMatch::kBoth:
      return "both";
    case TwistMatch::kNone:
      break;
  }
  return "none";
}

std::uint32_t least_nonresidue(std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw PreconditionError("least nonresidue needs an odd prime");
  const Integer pp(static_cast<unsigned long>(p));
  for (std::uint32_t a = 2; a < p; ++a) {
    if (mpz_legendre(Integer(static_cast<unsigned long>(a)).get_mpz_t(), pp.get_mpz_t()) == -1) {
      return a;
    }
  }
  throw InvariantError("no nonresidue");
}

namespace {

FpCurve reduce_prym_curve(const CoverCertificate& cert, std::uint32_t p) {
  const PrymModel x = prym_curve_equation(cert.tuple);
  FpCurve out;
  out.p = p;
  out.lead = 1;
  for (const auto& r : x.curve.roots()) {
    if (!r.is_rational()) throw PreconditionError("requires rational beta-tuple");
    out.roots.push_back(reduce_or_bad(r.to_rat(), p, "beta"));
  }
  if (!out.nonsingular()) throw PreconditionError("bad reduction: X is singular mod p");
  return out;
}

}  // namespace

bool prym_check_applicable(const CoverCertificate& cert, std::uint32_t p, std::string* reason) {
  try {
    if (p < 3 || !is_prime(p)) throw PreconditionError("bad reduction: p must be an odd prime");
    (void)reduce_cover(cert, p);
    (void)reduce_prym_curve(cert, p);
  } catch (const PreconditionError& e) {
    if (reason != nullptr) *reason = e.what();
    return false;
  }
  return true;
}

PrymCheckReport prym_product_check(const CoverCertificate& cert, std::uint32_t p,
                                   std::uint64_t field_budget) {
  if (p < 3 || !is_prime(p)) throw PreconditionError("bad reduction: p must be an odd prime");
  const ReducedCover cover = reduce_cover(cert, p);
  const FpCurve x_one = reduce_prym_curve(cert, p);
  FpCurve x_ns = x_one;
  PrymCheckReport rep;
  rep.p = p;
  rep.nonresidue = least_nonresidue(p);
  x_ns.lead = rep.nonresidue;

  const int g = cover.curve.genus();
  const int g_tilde = 2 * g;
  std::vector<ExtensionField> fields;
  for (int i = 1; i <= g_tilde; ++i) fields.emplace_back(p, static_cast<unsigned>(i), field_budget);
  for (int i = 0; i < g; ++i) {
    rep.counts_c.push_back(count_points(cover.curve, fields[static_cast<std::size_t>(i)]));
    rep.counts_x_one.push_back(count_points(x_one, fields[static_cast<std::size_t>(i)]));
    rep.counts_x_ns.push_back(count_points(x_ns, fields[static_cast<std::size_t>(i)]));
  }
  for (int i = 0; i < g_tilde; ++i) {
    rep.counts_ctilde.push_back(count_double_cover(cover, fields[static_cast<std::size_t>(i)]));
  }
  try {
    rep.order_c = l_polynomial(rep.counts_c, g, p).jacobian_order();
    rep.order_ctilde = l_polynomial(rep.counts_ctilde, g_tilde, p).jacobian_order();
    rep.order_x_one = l_polynomial(rep.counts_x_one, g, p).jacobian_order();
    rep.order_x_ns = l_polynomial(rep.counts_x_ns, g, p).jacobian_order();
  } catch (const PreconditionError& e) {
    throw InvariantError(std::string("point counts are not those of a curve: ") + e.what());
  }
  const bool one = rep.order_ctilde == rep.order_c * rep.order_x_one;
  const bool ns = rep.order_ctilde == rep.order_c * rep.order_x_ns;
  rep.matched = one && ns ? TwistMatch::kBoth
                          : (one ? TwistMatch::kOne : (ns ? TwistMatch::kNonresidue : TwistMatch::kNone));
  return rep;
}

}  // namespace prymkit
