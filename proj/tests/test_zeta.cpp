#include <doctest.h>

#include <map>
#include <set>

#include "prymkit/finite_field.hpp"
#include "prymkit/zeta.hpp"
#include "support.hpp"

using namespace prymkit;
using testsupport::R;

namespace {

using u64 = std::uint64_t;

u64 eval_mod(const std::vector<std::uint32_t>& c, u64 x, u64 p) {
  u64 acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = (acc * x + *it) % p;
  return acc;
}

u64 power_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int legendre(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  return power_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Pairs (y, x) with y^2 = f(x) over F_p, by enumerating both coordinates.
u64 affine_pairs(const std::vector<std::uint32_t>& f, u64 p) {
  u64 n = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 v = eval_mod(f, x, p);
    for (u64 y = 0; y < p; ++y) n += (y * y % p == v);
  }
  return n;
}

u64 infinity_points(const FpCurve& c) {
  if (c.odd_degree()) return 1;
  return static_cast<u64>(1 + legendre(c.lead, c.p));
}

// F_{p^2} as a + b sqrt(n) with n the least nonresidue found by Euler's test.
struct Fp2 {
  u64 p, n;
  using E = std::pair<u64, u64>;
  E mul(E a, E b) const {
    return {(a.first * b.first + a.second * b.second % p * n) % p,
            (a.first * b.second + a.second * b.first) % p};
  }
  E add(E a, E b) const { return {(a.first + b.first) % p, (a.second + b.second) % p}; }
};

u64 count_over_fp2_bruteforce(const FpCurve& c) {
  const u64 p = c.p;
  u64 n = 2;
  while (legendre(n, p) != -1) ++n;
  const Fp2 k{p, n};
  std::map<std::pair<u64, u64>, u64> sq_count;
  for (u64 a = 0; a < p; ++a) {
    for (u64 b = 0; b < p; ++b) ++sq_count[k.mul({a, b}, {a, b})];
  }
  u64 total = 0;
  for (u64 a = 0; a < p; ++a) {
    for (u64 b = 0; b < p; ++b) {
      Fp2::E v{c.lead % p, 0};
      for (auto r : c.roots) v = k.mul(v, {(a + p - r) % p, b});
      total += sq_count[v];
    }
  }
  // Points at infinity: lead is in F_p, hence a square in F_{p^2}.
  return total + (c.odd_degree() ? 1 : 2);
}

FpCurve random_curve(testsupport::Gen& gen, std::uint32_t p, std::size_t degree) {
  FpCurve c{p, {}, static_cast<std::uint32_t>(gen.integer(1, p - 1))};
  while (c.roots.size() < degree) {
    const auto r = static_cast<std::uint32_t>(gen.integer(0, p - 1));
    if (std::find(c.roots.begin(), c.roots.end(), r) == c.roots.end()) c.roots.push_back(r);
  }
  return c;
}

std::vector<CoverCertificate> certificates(const HyperCurve& c, const CurvePoint& p,
                                           const CurvePoint& q) {
  std::vector<CoverCertificate> out;
  for (const auto& t : beta_tuples(c, p, q)) out.push_back(reconstruct_h_F(t));
  return out;
}

// #Ctilde(F_p) from triples (x, y, z) on the affine model, with the
// normalization above the roots of F and the points at infinity added.
u64 double_cover_bruteforce(const ReducedCover& rc) {
  const u64 p = rc.curve.p;
  const auto f = rc.curve.poly();
  u64 n = 0;
  for (u64 x = 0; x < p; ++x) {
    const u64 fx = eval_mod(f, x, p);
    const u64 hx = eval_mod(rc.h, x, p);
    const bool f_root = eval_mod(rc.f_poly, x, p) == 0;
    for (u64 y = 0; y < p; ++y) {
      if (y * y % p != fx) continue;
      const u64 v = (y + hx) % p;
      if (f_root && v == 0) {
        // z^2 (2h) = (x - x_P)(x - x_Q) F^2 near this point.
        const u64 w = 2 * hx % p * ((x + p - rc.xp) % p) % p * ((x + p - rc.xq) % p) % p;
        n += static_cast<u64>(1 + legendre(w, p));
        continue;
      }
      for (u64 z = 0; z < p; ++z) n += (z * z % p == v);
    }
  }
  const int g = rc.curve.genus();
  u64 at_inf = rc.h.back();
  for (int i = 0; i <= g; ++i) at_inf = at_inf * rc.curve.lead % p;
  return n + static_cast<u64>(1 + legendre(at_inf, p));
}

// N_i predicted from an L-polynomial through power sums of its reciprocal
// roots (Newton's identities).
Integer predicted_count(const LPoly& l, unsigned i) {
  const int g2 = static_cast<int>(l.coeffs.size()) - 1;
  std::vector<Integer> e(l.coeffs.begin(), l.coeffs.end());  // e_k with signs (-1)^k
  std::vector<Integer> s(i + 1, 0);
  for (unsigned k = 1; k <= i; ++k) {
    Integer acc = 0;
    for (unsigned j = 1; j < k; ++j) {
      if (static_cast<int>(j) <= g2) acc += e[j] * s[k - j];
    }
    if (static_cast<int>(k) <= g2) acc += Integer(k) * e[k];
    s[k] = -acc;
  }
  Integer q = 1;
  for (unsigned k = 0; k < i; ++k) q *= static_cast<unsigned long>(l.q);
  return q + 1 - s[i];
}

}  // namespace

TEST_CASE("reduce_curve examples") {
  const auto e1 = reduce_curve(testsupport::e1_curve(), 13);
  CHECK(e1.roots == std::vector<std::uint32_t>{4, 6, 7});
  CHECK_THROWS_WITH_AS(reduce_curve(testsupport::e1_curve(), 7), "bad reduction",
                       PreconditionError);
  const auto c = reduce_curve(make_rat_curve({Rat(0), Rat(1), Rat(-1)}, Rat(1)), 5);
  CHECK(c.roots == std::vector<std::uint32_t>{0, 1, 4});
}

TEST_CASE("count_points examples") {
  const FpCurve c{5, {0, 1, 4}, 1};
  CHECK(count_points(c, 1) == 8);
  // y^2 = x^3 + x + 1 is not split over F_5; the oracle itself must give 9.
  CHECK(affine_pairs({1, 1, 0, 1}, 5) + 1 == 9);
  const FpCurve x13{13, {1, 7, 3, 5}, 1};
  CHECK(count_points(x13, 1) == affine_pairs(x13.poly(), 13) + 2);
  CHECK_THROWS_WITH_AS(count_points(FpCurve{97, {0, 1, 2, 3, 4}, 1}, 4), "field too large",
                       PreconditionError);
}

TEST_CASE("character sums agree with pair enumeration (property)") {
  testsupport::Gen gen(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t primes[] = {5, 7, 11, 13, 17, 19, 23};
    const auto p = primes[gen.integer(0, 6)];
    const auto c = random_curve(gen, p, static_cast<std::size_t>(gen.integer(3, std::min<long>(6, p))));
    CHECK(count_points(c, 1) == affine_pairs(c.poly(), p) + infinity_points(c));
  }
}

TEST_CASE("counts over F_{p^2} agree with an independent quadratic extension") {
  testsupport::Gen gen(12);
  for (int trial = 0; trial < 8; ++trial) {
    const std::uint32_t primes[] = {5, 7, 11, 13};
    const auto p = primes[gen.integer(0, 3)];
    const auto c = random_curve(gen, p, static_cast<std::size_t>(gen.integer(3, 5)));
    CHECK(count_points(c, 2) == count_over_fp2_bruteforce(c));
  }
}

TEST_CASE("extension fields") {
  CHECK(least_irreducible(3, 2) == FpPoly{1, 0, 1});  // x^2 + 1 over F_3
  CHECK(is_irreducible_mod_p({1, 1, 0, 1}, 5) == true);
  CHECK(is_irreducible_mod_p({0, 1, 1}, 5) == false);
  const ExtensionField k(5, 3);
  CHECK(k.size() == 125);
  // Multiplicative group is cyclic of order q - 1 and chi is multiplicative.
  std::set<ExtensionField::Elem> seen;
  ExtensionField::Elem a = 1;
  for (int i = 0; i < 124; ++i) {
    seen.insert(a);
    a = k.mul(a, k.generator());
  }
  CHECK(seen.size() == 124);
  CHECK(a == 1);
  for (ExtensionField::Elem u = 1; u < 125; u += 7) {
    for (ExtensionField::Elem v = 1; v < 125; v += 11) {
      CHECK(k.chi(k.mul(u, v)) == k.chi(u) * k.chi(v));
    }
    if (k.chi(u) == 1) CHECK(k.mul(k.sqrt(u), k.sqrt(u)) == u);
  }
  CHECK_THROWS_AS(ExtensionField(4, 1), PreconditionError);
  CHECK_THROWS_WITH_AS(ExtensionField(97, 4), "field too large", PreconditionError);
}

TEST_CASE("l_polynomial examples and invariants") {
  const auto a = l_polynomial({8}, 1, 5);
  CHECK(a.coeffs == std::vector<Integer>{1, 2, 5});
  CHECK(a.jacobian_order() == 8);
  const auto b = l_polynomial({9}, 1, 5);
  CHECK(b.coeffs == std::vector<Integer>{1, 3, 5});
  CHECK(b.jacobian_order() == 9);
  CHECK(l_polynomial({6}, 1, 5).jacobian_order() == 6);
  CHECK_THROWS_WITH_AS(l_polynomial({20}, 1, 5), "inconsistent counts", PreconditionError);

  testsupport::Gen gen(13);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t primes[] = {5, 7, 11, 13, 17, 19, 23, 29, 31};
    const auto p = primes[gen.integer(0, 8)];
    const auto c = random_curve(gen, p, 3);
    const auto n1 = count_points(c, 1);
    CHECK(l_polynomial({n1}, 1, p).jacobian_order() == n1);
  }
  for (int trial = 0; trial < 12; ++trial) {
    const std::uint32_t primes[] = {7, 11, 13};
    const auto p = primes[gen.integer(0, 2)];
    const auto c = random_curve(gen, p, static_cast<std::size_t>(gen.integer(5, 6)));
    const auto n1 = count_points(c, 1), n2 = count_points(c, 2);
    const auto l = l_polynomial({n1, n2}, 2, p);
    const Integer q = p;
    CHECK(l.coeffs[0] == 1);
    CHECK(l.coeffs[4] == q * q);
    CHECK(l.coeffs[3] == q * l.coeffs[1]);
    // Closed form from the Newton relations: P(1) = (N1^2 + N2) / 2 - q.
    const Integer n1z = static_cast<unsigned long>(n1), n2z = static_cast<unsigned long>(n2);
    CHECK(l.jacobian_order() == (n1z * n1z + n2z) / 2 - q);
    CHECK(predicted_count(l, 3) == static_cast<unsigned long>(count_points(c, 3)));
  }
}

TEST_CASE("double cover counts") {
  const auto certs = certificates(testsupport::e1_curve(), testsupport::e1_p(), testsupport::e1_q());
  for (std::uint32_t p : {13u, 17u, 19u, 23u, 29u, 31u}) {
    for (const auto& cert : certs) {
      std::string why;
      if (!prym_check_applicable(cert, p, &why)) continue;
      const auto rc = reduce_cover(cert, p);
      const auto n1 = count_double_cover(rc, 1);
      CHECK(n1 == double_cover_bruteforce(rc));
      CHECK(n1 <= 2 * count_points(rc.curve, 1) + 2);
      // Ctilde has genus 2: N3 is forced by N1 and N2.
      const auto l = l_polynomial({n1, count_double_cover(rc, 2)}, 2, p);
      CHECK(predicted_count(l, 3) == static_cast<unsigned long>(count_double_cover(rc, 3)));
    }
  }
  const auto g2 = certificates(testsupport::g2_curve(), testsupport::g2_p(), testsupport::g2_q());
  for (std::size_t i = 0; i < g2.size(); i += 5) {
    const auto rc = reduce_cover(g2[i], 17);
    CHECK(count_double_cover(rc, 1) == double_cover_bruteforce(rc));
  }
  CHECK_THROWS_AS(reduce_cover(certs[0], 7), PreconditionError);
}

TEST_CASE("Prym product check on E1") {
  const auto certs = certificates(testsupport::e1_curve(), testsupport::e1_p(), testsupport::e1_q());
  const auto rep = prym_product_check(certs[0], 13);
  CHECK(rep.holds());
  CHECK(rep.nonresidue == 2);
  CHECK(rep.counts_c.size() == 1);
  CHECK(rep.counts_ctilde.size() == 2);
  const Integer expect = rep.order_c * (rep.matched == TwistMatch::kOne ? rep.order_x_one
                                                                         : rep.order_x_ns);
  CHECK(rep.order_ctilde == expect);
  CHECK(least_nonresidue(17) == 3);
  CHECK_THROWS_AS(prym_product_check(certs[0], 11), PreconditionError);

  int cells = 0;
  for (std::uint32_t p : {13u, 17u, 19u, 23u, 29u, 31u}) {
    for (const auto& cert : certs) {
      std::string why;
      if (!prym_check_applicable(cert, p, &why)) continue;
      const auto r = prym_product_check(cert, p);
      CHECK(r.holds());
      // The twist by a nonresidue has L-polynomial P(-T); "both" means trace zero.
      CHECK((r.matched == TwistMatch::kBoth) == (r.order_x_one == r.order_x_ns));
      ++cells;
    }
  }
  CHECK(cells >= 12);
}

TEST_CASE("Prym product check on G2 at one prime") {
  const auto certs = certificates(testsupport::g2_curve(), testsupport::g2_p(), testsupport::g2_q());
  for (std::size_t i : {0u, 7u, 12u}) {
    const auto r = prym_product_check(certs[i], 17);
    CHECK(r.holds());
    CHECK(r.counts_ctilde.size() == 4);
  }
}
