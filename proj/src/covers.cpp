#include "prymkit/covers.hpp"

#include <algorithm>

namespace prymkit {

namespace {

void require_base(const HyperCurve& c, const CurvePoint& p, const CurvePoint& q) {
  if (!c.odd_degree()) throw PreconditionError("double covers need an odd-degree model");
  if (p.at_infinity || q.at_infinity) throw PreconditionError("P and Q must be affine");
  if (!is_on_curve(c, p)) throw PreconditionError("P is not on the curve");
  if (!is_on_curve(c, q)) throw PreconditionError("Q is not on the curve");
  if (p.x == q.x) throw PreconditionError("ramification points collide");
  if (p.y.is_zero() || q.y.is_zero()) throw PreconditionError("Weierstrass point not allowed");
}

Scalar product(const std::vector<Scalar>& v) {
  Scalar r(1);
  for (const auto& e : v) r *= e;
  return r;
}

}  // namespace

bool BetaTuple::is_rational() const {
  return std::all_of(betas.begin(), betas.end(), [](const Scalar& b) { return b.is_rational(); });
}

std::vector<Rat> BetaTuple::rat_betas() const {
  if (!is_rational()) throw PreconditionError("requires rational beta-tuple");
  std::vector<Rat> out;
  for (const auto& b : betas) out.push_back(b.to_rat());
  return out;
}

bool is_valid_tuple(const BetaTuple& t) {
  const auto& roots = t.base.curve.roots();
  if (t.betas.size() != roots.size()) return false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (t.betas[i] * t.betas[i] * (t.base.p.x - roots[i]) != t.base.q.x - roots[i]) return false;
  }
  return product(t.betas) * t.base.p.y == t.base.q.y;
}

std::vector<BetaTuple> beta_tuples(const HyperCurve& c, const CurvePoint& p, const CurvePoint& q) {
  require_base(c, p, q);
  const auto& roots = c.roots();
  const std::size_t n = roots.size();
  std::vector<Scalar> base;
  base.reserve(n);
  for (const auto& a : roots) {
    const Scalar ratio = (q.x - a) / (p.x - a);
    if (!ratio.is_rational()) {
      throw PreconditionError("square roots of irrational ratios are not supported");
    }
    base.push_back(sqrt_adjoin(ratio.to_rat()));
  }
  const Scalar target = q.y / p.y;
  const std::size_t free = n - 1;
  std::vector<BetaTuple> out;
  out.reserve(std::size_t{1} << free);
  for (std::size_t s = 0; s < (std::size_t{1} << free); ++s) {
    BetaTuple t{CoverBase{c, p, q}, {}};
    for (std::size_t i = 0; i < free; ++i) {
      const bool minus = ((s >> (free - 1 - i)) & 1U) != 0;
      t.betas.push_back(minus ? -base[i] : base[i]);
    }
    t.betas.push_back(target / product(t.betas));
    if (!is_valid_tuple(t)) throw InvariantError("forced beta does not square correctly");
    out.push_back(std::move(t));
  }
  return out;
}

PrymModel prym_curve_equation(const BetaTuple& t) {
  std::vector<Scalar> roots{Scalar(1)};
  for (const auto& b : t.betas) {
    if (std::find(roots.begin(), roots.end(), b) != roots.end()) {
      throw PreconditionError("degenerate cover model");
    }
    roots.push_back(b);
  }
  return PrymModel{make_curve(std::move(roots), Scalar(1)), true};
}

CertificateChecks verify_certificate(const CoverCertificate& cert) {
  const auto& base = cert.tuple.base;
  const MQPoly f = base.curve.poly();
  const MQPoly xp{-base.p.x, Scalar(1)};
  const MQPoly xq{-base.q.x, Scalar(1)};
  CertificateChecks c;
  c.identity = cert.h * cert.h - f == xp * xq * cert.f_poly * cert.f_poly;
  c.degree = cert.h.degree() == base.curve.genus() + 1;
  c.h_at_p = cert.h(base.p.x) == -base.p.y;
  c.h_at_q = cert.h(base.q.x) == -base.q.y;
  return c;
}

CoverCertificate reconstruct_h_F(const BetaTuple& t) {
  if (!is_valid_tuple(t)) throw PreconditionError("invalid beta-tuple");
  const auto& base = t.base;
  const int g = base.curve.genus();
  const Scalar eps(g % 2 == 1 ? 1 : -1);

  MQPoly monic_g{Scalar(-1), Scalar(1)};
  for (const auto& b : t.betas) monic_g *= MQPoly{-(eps * b), Scalar(1)};
  const Scalar c0 = -base.q.y / monic_g.coeff(0);
  const Scalar c0_limit = (g % 2 == 0) ? base.p.y : -base.p.y;
  if (c0 != c0_limit) throw InvariantError("leading coefficient derivations disagree");
  const MQPoly big_g = monic_g * c0;

  const MQPoly xp{-base.p.x, Scalar(1)};
  const MQPoly xq{-base.q.x, Scalar(1)};
  const Scalar d = base.q.x - base.p.x;
  Scalar scale(1);
  for (int i = 0; i <= g; ++i) scale *= d;
  scale = scale.inverse();

  MQPoly h;
  MQPoly f_poly;
  for (int k = 0; k <= g + 1; ++k) {
    const Scalar e = big_g.coeff(static_cast<std::size_t>(2 * k));
    if (!e.is_zero()) {
      h += pow(xq, static_cast<unsigned>(k)) * pow(xp, static_cast<unsigned>(g + 1 - k)) * e;
    }
  }
  for (int k = 0; k <= g; ++k) {
    const Scalar o = big_g.coeff(static_cast<std::size_t>(2 * k + 1));
    if (!o.is_zero()) {
      f_poly += pow(xq, static_cast<unsigned>(k)) * pow(xp, static_cast<unsigned>(g - k)) * o;
    }
  }
  CoverCertificate cert{t, h * scale, f_poly * scale};
  if (!verify_certificate(cert).all()) throw InvariantError("inconsistent tuple");
  return cert;
}

TowerEquations tower_equations(const CoverCertificate& cert) {
  const auto& base = cert.tuple.base;
  TowerEquations tw;
  tw.f = base.curve.poly();
  tw.h = cert.h;
  tw.c1 = cert.h * cert.h - tw.f;
  const MQPoly xp{-base.p.x, Scalar(1)};
  const MQPoly xq{-base.q.x, Scalar(1)};
  tw.c1_split = xp * xq * cert.f_poly * cert.f_poly;
  tw.x = prym_curve_equation(cert.tuple);
  tw.genus_c = base.curve.genus();
  // Riemann-Hurwitz for a double cover branched at two points.
  tw.genus_ctilde = 2 * tw.genus_c;
  tw.genus_x = tw.x.curve.genus();

  // (h + y)(h - y) in Q[x][y] / (y^2 - f): pairs (a, b) mean a + b*y.
  struct Elt {
    MQPoly a, b;
  };
  auto mul = [&](const Elt& u, const Elt& v) {
    return Elt{u.a * v.a + u.b * v.b * tw.f, u.a * v.b + u.b * v.a};
  };
  const MQPoly one = MQPoly::constant(Scalar(1));
  const Elt prod = mul(Elt{tw.h, one}, Elt{tw.h, -one});
  tw.consistent = prod.b.is_zero() && prod.a == tw.c1 && tw.c1 == tw.c1_split;
  return tw;
}

BacksolvedInstance backsolve_instance(const std::vector<Rat>& betas, const Rat& xq, const Rat& k) {
  if (betas.size() < 3 || betas.size() % 2 == 0) {
    throw PreconditionError("need an odd number (at least 3) of betas");
  }
  if (k.is_zero()) throw PreconditionError("k must be nonzero");
  Rat prod(1);
  for (const auto& b : betas) {
    if (b * b == Rat(1) || b.is_zero()) throw PreconditionError("beta must avoid 0 and +-1");
    prod *= Rat(1) - b * b;
  }
  const Rat d = Rat(square_free_split(prod).squarefree) * k * k;
  const Rat xp = xq + d;
  std::vector<Rat> alphas;
  for (const auto& b : betas) alphas.push_back((xq - b * b * xp) / (Rat(1) - b * b));
  BacksolvedInstance inst{make_rat_curve(alphas, Rat(1)), {}, {}, betas, 0};
  Rat fp(1);
  for (const auto& a : alphas) fp *= xp - a;
  Rat yp;
  if (!rational_sqrt(fp, yp)) throw InvariantError("f(x_P) is not a square");
  Rat yq = yp;
  for (const auto& b : betas) yq *= b;
  inst.p = CurvePoint::affine(xp, yp);
  inst.q = CurvePoint::affine(xq, yq);
  const std::size_t free = betas.size() - 1;
  for (std::size_t i = 0; i < free; ++i) {
    if (betas[i].sign() < 0) inst.tuple_index |= std::size_t{1} << (free - 1 - i);
  }
  return inst;
}

Scalar cross_ratio(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  if (a == b || a == c || a == d || b == c || b == d || c == d) {
    throw PreconditionError("degenerate cross-ratio");
  }
  return ((a - c) * (b - d)) / ((b - c) * (a - d));
}

}  // namespace prymkit
