#include <doctest.h>

#include <set>

#include "prymkit/covers.hpp"
#include "prymkit/integral_points.hpp"
#include "support.hpp"

using namespace prymkit;
using testsupport::R;

namespace {

HyperCurve five_root() {
  return make_rat_curve({Rat(0), Rat(1), Rat(2), Rat(3), Rat(4)}, Rat(1));
}

IntegralitySpec g2_spec(long h = kDefaultHeightBound) {
  return IntegralitySpec{RatFunc::parse("1/x"), PlaceSet{}, h};
}

// X-curves of every beta-tuple of every brute-force point against Q.
std::vector<HyperCurve> forward_candidates(const HyperCurve& c, const IntegralitySpec& spec,
                                           const CurvePoint& q) {
  std::vector<HyperCurve> out;
  for (const auto& p : brute_force_points(c, spec)) {
    if (p.y.is_zero() || p.x == q.x) continue;
    for (const auto& t : beta_tuples(c, p, q)) out.push_back(prym_curve_equation(t).curve);
  }
  return out;
}

std::set<std::vector<Rat>> keys(const std::vector<CurvePoint>& pts) {
  std::set<std::vector<Rat>> out;
  for (const auto& p : pts) {
    if (p.at_infinity) {
      out.insert(std::vector<Rat>{});
    } else {
      out.insert({p.x.to_rat(), p.y.to_rat()});
    }
  }
  return out;
}

}  // namespace

TEST_CASE("RatFunc parser") {
  CHECK(RatFunc::parse("1/x") == RatFunc(RatPoly{Rat(1)}, RatPoly{Rat(0), Rat(1)}));
  CHECK(RatFunc::parse("x") == RatFunc(RatPoly{Rat(0), Rat(1)}, RatPoly{Rat(1)}));
  CHECK(RatFunc::parse("(x^2 + 1)/(x - 3)") ==
        RatFunc(RatPoly{Rat(1), Rat(0), Rat(1)}, RatPoly{Rat(-3), Rat(1)}));
  CHECK(RatFunc::parse("2*x - 1/2") == RatFunc(RatPoly{R("-1/2"), Rat(2)}, RatPoly{Rat(1)}));
  CHECK(RatFunc::parse("x/(2*x)").is_constant());
  CHECK(RatFunc::parse(RatFunc::parse("(x^2 + 1)/(x - 3)").str()) ==
        RatFunc::parse("(x^2 + 1)/(x - 3)"));
  CHECK_THROWS_AS(RatFunc::parse("x +"), PreconditionError);
  CHECK_THROWS_AS(RatFunc::parse("1/(x - x)"), PreconditionError);
  CHECK_THROWS_AS(RatFunc::parse("y"), PreconditionError);
}

TEST_CASE("validate") {
  CHECK_NOTHROW(validate(g2_spec()));
  CHECK_THROWS_WITH_AS(validate(IntegralitySpec{RatFunc::parse("5"), PlaceSet{}, 10}),
                       "constant f", PreconditionError);
  CHECK_THROWS_AS(validate(IntegralitySpec{RatFunc::parse("x"), PlaceSet{}, 0}),
                  PreconditionError);
}

TEST_CASE("brute force on the five-root curve finds only Weierstrass points") {
  const IntegralitySpec spec{RatFunc::parse("x"), PlaceSet{}, 50};
  const auto pts = brute_force_points(five_root(), spec);
  REQUIRE(pts.size() == 5);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(pts[i] == CurvePoint::affine(Rat(static_cast<long>(i)), Rat(0)));
  }
}

TEST_CASE("brute force on G2 with f = 1/x") {
  const auto c = testsupport::g2_curve();
  const auto pts = brute_force_points(c, g2_spec());
  const auto k = keys(pts);
  CHECK(k.count({Rat(1), R("1/144")}) == 1);
  CHECK(k.count({Rat(1), R("-1/144")}) == 1);
  CHECK(k.count({R("-1/3"), Rat(0)}) == 1);
  for (const auto& p : pts) {
    CHECK(is_on_curve(c, p));
    CHECK(is_integral_point(c, g2_spec(), p));
  }
  CHECK(std::is_sorted(pts.begin(), pts.end(), point_less));
}

TEST_CASE("integrality predicate") {
  const auto c = testsupport::g2_curve();
  CHECK_FALSE(is_integral_point(c, g2_spec(), testsupport::g2_q()));
  CHECK(is_integral_point(c, g2_spec(), CurvePoint::infinity()));
  CHECK_FALSE(is_integral_point(c, IntegralitySpec{RatFunc::parse("x"), PlaceSet{}, 10},
                                CurvePoint::infinity()));
  const IntegralitySpec half{RatFunc::parse("x"), PlaceSet{3}, 10};
  CHECK(is_integral_point(c, half, CurvePoint::affine(R("-1/3"), Rat(0))));
  CHECK_FALSE(is_integral_point(c, IntegralitySpec{RatFunc::parse("x"), PlaceSet{2}, 10},
                                CurvePoint::affine(R("-1/3"), Rat(0))));
}

TEST_CASE("rational poles") {
  const auto c = testsupport::g2_curve();
  const auto poles = rational_poles(c, RatFunc::parse("1/x"));
  REQUIRE(poles.size() == 2);
  CHECK(poles[0] == CurvePoint::affine(Rat(0), R("-35/48")));
  CHECK(poles[1] == CurvePoint::affine(Rat(0), R("35/48")));
  CHECK(rational_poles(c, RatFunc::parse("x")).empty());
  // Pole at a Weierstrass point is not usable.
  CHECK(rational_poles(c, RatFunc::parse("1/(3*x + 1)")).empty());
}

TEST_CASE("elimination polynomial examples") {
  const auto c = testsupport::g2_curve();
  const auto q = testsupport::g2_q();
  const std::array<std::size_t, 4> idx{0, 1, 2, 3};
  const Rat target = cross_ratio(Scalar(R("1/2")), Scalar(3), Scalar(5), Scalar(2)).to_rat();
  const auto poly = cr_elimination_poly(c, q, idx, target);
  CHECK(poly.degree() == 8);
  CHECK(poly(Rat(1)).is_zero());
  CHECK_FALSE(cr_elimination_poly(c, q, idx, R("17/5")).is_zero());
  CHECK_THROWS_WITH_AS(cr_elimination_poly(c, q, idx, Rat(1)), "degenerate target",
                       PreconditionError);
  CHECK_THROWS_WITH_AS(cr_elimination_poly(c, q, idx, Rat(0)), "degenerate target",
                       PreconditionError);
  CHECK_THROWS_WITH_AS(cr_elimination_poly(c, q, {0, 1, 1, 3}, target),
                       "need four distinct root indices", PreconditionError);
  // Only x_Q matters.
  CHECK(cr_elimination_poly(c, hyperelliptic_involution(c, q), idx, target) == poly);
}

TEST_CASE("elimination roots include x_P for every tuple (property)") {
  testsupport::Gen gen(404);
  int done = 0;
  while (done < 25) {
    const int g = static_cast<int>(gen.integer(2, 3));
    std::vector<Rat> betas;
    while (static_cast<int>(betas.size()) < 2 * g + 1) {
      const Rat b = gen.nonzero_rat(9, 4);
      bool ok = b != Rat(1) && b != Rat(-1);
      for (const auto& o : betas) ok = ok && o * o != b * b;
      if (ok) betas.push_back(b);
    }
    BacksolvedInstance inst;
    try {
      inst = backsolve_instance(betas, gen.rat(3, 2), Rat(1));
    } catch (const PreconditionError&) {
      continue;
    }
    const auto ts = beta_tuples(inst.curve, inst.p, inst.q);
    const auto& t = ts[static_cast<std::size_t>(gen.integer(0, static_cast<long>(ts.size()) - 1))];
    const auto b = t.rat_betas();
    // Tuple entries follow the curve's root order, so idx picks matching alphas.
    std::array<std::size_t, 4> idx{};
    std::vector<std::size_t> perm(b.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    std::copy_n(perm.begin(), 4, idx.begin());
    const Rat target = cross_ratio(Scalar(b[idx[0]]), Scalar(b[idx[1]]), Scalar(b[idx[2]]),
                                   Scalar(b[idx[3]]))
                           .to_rat();
    const auto poly = cr_elimination_poly(inst.curve, inst.q, idx, target);
    CHECK(poly.degree() <= 8);
    CHECK(poly(inst.p.x.to_rat()).is_zero());
    ++done;
  }
}

TEST_CASE("elimination polynomial never vanishes (property)") {
  testsupport::Gen gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto roots = gen.distinct_rats(5, 20, 5);
    const auto c = make_rat_curve(roots, gen.nonzero_rat(5, 3));
    Rat xq = gen.rat(20, 5);
    if (std::find(roots.begin(), roots.end(), xq) != roots.end()) continue;
    const auto q = CurvePoint::affine(Scalar(xq), sqrt_adjoin(c.rat_poly()(xq)));
    Rat target = gen.nonzero_rat(30, 7);
    if (target == Rat(1)) target = Rat(2);
    std::vector<std::size_t> perm{0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    const auto poly = cr_elimination_poly(c, q, {perm[0], perm[1], perm[2], perm[3]}, target);
    CHECK_FALSE(poly.is_zero());
    CHECK(poly.degree() <= 8);
  }
}

TEST_CASE("recovery with no candidates keeps only the exceptional set") {
  const auto c = testsupport::g2_curve();
  const auto rec = recover_points(c, g2_spec(), {});
  CHECK(rec.q == CurvePoint::affine(Rat(0), R("-35/48")));
  std::set<std::vector<Rat>> allowed = keys(weierstrass_points(c));
  allowed.insert({Rat(0), R("35/48")});
  allowed.insert({Rat(0), R("-35/48")});
  for (const auto& p : rec.points) CHECK(allowed.count(*keys({p}).begin()) == 1);
  for (const auto& pv : rec.provenance) CHECK(pv.via == "exceptional set");
  CHECK(keys(rec.points).count({R("-1/3"), Rat(0)}) == 1);
  CHECK(keys(rec.points).count({}) == 1);
}

TEST_CASE("recovery preconditions") {
  CHECK_THROWS_WITH_AS(recover_points(five_root(), IntegralitySpec{RatFunc::parse("x"), PlaceSet{}, 10}, {}),
                       "enlarge base field required", PreconditionError);
  CHECK_THROWS_AS(recover_points(testsupport::e1_curve(), g2_spec(), {}), PreconditionError);
}

TEST_CASE("recovery on G2 is sound and contains the brute force set") {
  const auto c = testsupport::g2_curve();
  const auto spec = g2_spec();
  const auto rec = recover_points(c, spec, forward_candidates(c, spec, rational_poles(c, spec.f).front()));
  for (const auto& p : rec.points) {
    CHECK(is_on_curve(c, p));
    CHECK(is_integral_point(c, spec, p));
  }
  const auto found = keys(rec.points);
  for (const auto& k : keys(brute_force_points(c, spec))) CHECK(found.count(k) == 1);
  CHECK(found.count({Rat(1), R("1/144")}) == 1);
  CHECK(found.count({Rat(1), R("-1/144")}) == 1);
  REQUIRE(rec.provenance.size() == rec.points.size());
  bool via_candidate = false;
  for (const auto& pv : rec.provenance) via_candidate |= pv.via.rfind("candidate", 0) == 0;
  CHECK(via_candidate);
}
