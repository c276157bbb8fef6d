#pragma once

// Shared helpers for the test binaries: seeded generators and small
// independent oracles.

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "prymkit/binary_form.hpp"
#include "prymkit/covers.hpp"
#include "prymkit/hypercurve.hpp"
#include "prymkit/poly.hpp"
#include "prymkit/rational.hpp"

namespace testsupport {

using prymkit::Integer;
using prymkit::Rat;
using prymkit::RatPoly;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }
  Rat rat(long num_bound, long den_bound) {
    return Rat(Integer(integer(-num_bound, num_bound)), Integer(integer(1, den_bound)));
  }
  Rat nonzero_rat(long num_bound, long den_bound) {
    Rat r;
    do {
      r = rat(num_bound, den_bound);
    } while (r.is_zero());
    return r;
  }
  RatPoly poly(int degree, long num_bound, long den_bound) {
    std::vector<Rat> c;
    for (int i = 0; i < degree; ++i) c.push_back(rat(num_bound, den_bound));
    c.push_back(nonzero_rat(num_bound, den_bound));
    return RatPoly(std::move(c));
  }
  std::vector<Rat> distinct_rats(std::size_t n, long num_bound, long den_bound) {
    std::vector<Rat> out;
    while (out.size() < n) {
      Rat r = rat(num_bound, den_bound);
      if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
    }
    return out;
  }
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Rat R(const char* s) { return Rat::parse(s); }

/// Determinant by plain Gaussian elimination over Q.
inline Rat det_oracle(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    det *= m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Rat f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

/// Resultant from the Sylvester matrix with actual degrees.
inline Rat resultant_oracle(const RatPoly& f, const RatPoly& g) {
  const int m = f.degree();
  const int n = g.degree();
  if (m == 0 && n == 0) return Rat(1);
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rat>> s(size, std::vector<Rat>(size, Rat(0)));
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) s[r][r + k] = f.coeff(static_cast<std::size_t>(m - k));
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) s[n + r][r + k] = g.coeff(static_cast<std::size_t>(n - k));
  }
  return det_oracle(s);
}

/// Integer divisors of |n| (n != 0, small).
inline std::vector<long> divisors(long n) {
  std::vector<long> out;
  n = n < 0 ? -n : n;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

inline prymkit::HyperCurve e1_curve() {
  return prymkit::make_rat_curve({R("-1/3"), R("9/8"), R("25/24")}, Rat(1));
}
inline prymkit::CurvePoint e1_p() { return prymkit::CurvePoint::affine(Rat(1), R("1/12")); }
inline prymkit::CurvePoint e1_q() { return prymkit::CurvePoint::affine(Rat(0), R("5/8")); }

inline prymkit::HyperCurve g2_curve() {
  return prymkit::make_rat_curve({R("-1/3"), R("9/8"), R("25/24"), R("4/3"), R("49/48")}, Rat(1));
}
inline prymkit::CurvePoint g2_p() { return prymkit::CurvePoint::affine(Rat(1), R("1/144")); }
inline prymkit::CurvePoint g2_q() { return prymkit::CurvePoint::affine(Rat(0), R("35/48")); }

/// Back-solved instance whose betas are s_i + p^m t_i / u_i (s_i = -1 for
/// the first n) so that p divides x_P - x_Q to order m. The residues
/// s_i t_i / u_i mod p are kept distinct, otherwise p divides a root
/// difference and lands in S; that needs p > 2g + 1. Returns nullopt when
/// no draw succeeds.
inline std::optional<prymkit::BacksolvedInstance> targeted_instance(long p, long m, long n,
                                                                    int g, std::uint64_t seed) {
  Gen gen(seed);
  const long count = 2 * g + 1;
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<long> ts;
    while (static_cast<long>(ts.size()) < count) {
      const long t = gen.integer(1, p - 1);
      ts.push_back(t);
    }
    std::vector<Rat> betas;
    Integer pm = 1;
    for (long i = 0; i < m; ++i) pm *= p;
    for (long i = 0; i < count; ++i) {
      static constexpr long kUnits[] = {1, 3, 7, 11, 13};
      long u = gen.integer(0, 1) == 0 ? 1 : kUnits[gen.integer(0, 4)];
      if (u % p == 0) u = 1;
      const long t = ts[static_cast<std::size_t>(i)] + p * gen.integer(0, 2);
      betas.push_back(Rat(i < n ? -1 : 1) + Rat(pm * t, Integer(u)));
    }
    bool bad = false;
    for (std::size_t i = 0; i < betas.size() && !bad; ++i) {
      const Rat& b = betas[i];
      bad = b.is_zero() || b == Rat(1) || b == Rat(-1);
      for (std::size_t j = 0; j < i && !bad; ++j) bad = betas[j] * betas[j] == b * b;
    }
    std::vector<std::uint32_t> w;
    for (std::size_t i = 0; i < betas.size() && !bad; ++i) {
      const Rat s(static_cast<long>(i) < n ? -1 : 1);
      const auto r = prymkit::reduce_mod(s * (betas[i] - s) / Rat(pm), static_cast<std::uint32_t>(p));
      bad = r == 0 || std::find(w.begin(), w.end(), r) != w.end();
      w.push_back(r);
    }
    if (bad) continue;
    Integer k = 1;
    for (long i = 0; i < m / 2; ++i) k *= p;
    if (gen.integer(0, 2) == 2) k *= 3;
    static constexpr long kXq[] = {0, 1, -1, 2};
    const Rat xq(kXq[gen.integer(0, 3)]);
    try {
      return prymkit::backsolve_instance(betas, xq, Rat(k));
    } catch (const std::exception&) {
      continue;
    }
  }
  return std::nullopt;
}

/// Certified forms from targeted instances over g in {2, 3}, p in
/// {7, 11, 13}, m in {1, 2} and n in {1, 3, 5}.
inline std::vector<prymkit::FormConstruction> form_corpus() {
  std::vector<prymkit::FormConstruction> out;
  for (int g : {2, 3}) {
    for (long p : {7L, 11L, 13L}) {
      for (long m : {1L, 2L}) {
        for (long n : {1L, 3L, 5L}) {
          if (n > 2 * g + 1 || (g == 3 && p < 11)) continue;
          const auto inst = targeted_instance(p, m, n, g, 97 * p + 7 * m + n);
          if (!inst) continue;
          out.push_back(prymkit::integral_point_to_form(inst->curve, inst->p, inst->q,
                                                        prymkit::PlaceSet{}, inst->tuple_index));
        }
      }
    }
  }
  return out;
}

}  // namespace testsupport
