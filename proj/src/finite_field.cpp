#include "prymkit/finite_field.hpp"

#include <map>

#include "prymkit/errors.hpp"
#include "prymkit/rational.hpp"

namespace prymkit {

namespace {

using u64 = std::uint64_t;

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 inv_mod(u64 a, u64 p) {
  u64 r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1U) r = r * a % p;
    a = a * a % p;
    e >>= 1U;
  }
  return r;
}

FpPoly poly_rem(FpPoly a, const FpPoly& m, std::uint32_t p) {
  trim(a);
  const u64 inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const u64 coef = a.back() * inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) {
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + p - coef * m[j] % p) % p);
    }
    trim(a);
  }
  return a;
}

FpPoly poly_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + u64{a[i]} * b[j]) % p);
    }
  }
  return poly_rem(std::move(r), m, p);
}

FpPoly poly_powmod(FpPoly base, u64 e, const FpPoly& m, std::uint32_t p) {
  FpPoly r{1};
  base = poly_rem(std::move(base), m, p);
  while (e > 0) {
    if (e & 1U) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1U;
  }
  return r;
}

FpPoly poly_gcd(FpPoly a, FpPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

FpPoly sub_x(FpPoly a, std::uint32_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

// x^{p^j} mod m.
FpPoly frobenius_power(const FpPoly& m, std::uint32_t p, unsigned j) {
  FpPoly r{0, 1};
  for (unsigned i = 0; i < j; ++i) r = poly_powmod(r, p, m, p);
  return r;
}

}  // namespace

bool is_irreducible_mod_p(const FpPoly& m, std::uint32_t p) {
  const unsigned k = static_cast<unsigned>(m.size()) - 1;
  if (k == 1) return true;
  if (!sub_x(frobenius_power(m, p, k), p).empty()) return false;
  for (auto [r, e] : factor_integer(Integer(static_cast<unsigned long>(k)))) {
    const FpPoly t = sub_x(frobenius_power(m, p, k / static_cast<unsigned>(r)), p);
    if (poly_gcd(m, t, p).size() != 1) return false;
  }
  return true;
}

FpPoly least_irreducible(std::uint32_t p, unsigned k) {
  if (k == 0) throw PreconditionError("extension degree must be positive");
  u64 count = 1;
  for (unsigned i = 0; i < k; ++i) count *= p;
  // Encoding sum c_j p^j over the k low coefficients orders vectors
  // (c_{k-1}, ..., c_0) lexicographically.
  for (u64 code = 0; code < count; ++code) {
    FpPoly m(k + 1, 0);
    u64 c = code;
    for (unsigned j = 0; j < k; ++j) {
      m[j] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    m[k] = 1;
    if (is_irreducible_mod_p(m, p)) return m;
  }
  throw InvariantError("no irreducible polynomial found");
}

ExtensionField::ExtensionField(std::uint32_t p, unsigned k, std::uint64_t budget) : p_(p), k_(k) {
  if (p < 3 || !is_prime(p)) throw PreconditionError("field characteristic must be an odd prime");
  if (k == 0) throw PreconditionError("extension degree must be positive");
  u64 q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > budget || q > (u64{1} << 31)) throw PreconditionError("field too large");
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = least_irreducible(p, k);

  // Primitive element: smallest index g with g^{(q-1)/r} != 1 for every
  // prime r dividing q - 1.
  const auto factors = factor_integer(Integer(static_cast<unsigned long>(q_ - 1)));
  auto power = [&](Elem a, u64 e) {
    Elem r = 1;
    while (e > 0) {
      if (e & 1U) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1U;
    }
    return r;
  };
  Elem gen = 0;
  for (Elem cand = 2; cand < q_; ++cand) {
    bool primitive = true;
    for (auto [r, e] : factors) {
      if (power(cand, (q_ - 1) / static_cast<u64>(r)) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gen = cand;
      break;
    }
  }
  if (gen == 0) throw InvariantError("no primitive element");
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  Elem cur = 1;
  for (std::uint32_t i = 0; i < q_ - 1; ++i) {
    exp_[i] = cur;
    log_[cur] = i;
    cur = mul_slow(cur, gen);
  }
  if (cur != 1) throw InvariantError("generator order mismatch");
}

std::vector<std::uint32_t> ExtensionField::digits(Elem a) const {
  std::vector<std::uint32_t> d(k_);
  for (unsigned j = 0; j < k_; ++j) {
    d[j] = a % p_;
    a /= p_;
  }
  return d;
}

ExtensionField::Elem ExtensionField::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem a = 0;
  for (unsigned j = k_; j-- > 0;) a = a * p_ + (j < d.size() ? d[j] : 0);
  return a;
}

ExtensionField::Elem ExtensionField::mul_slow(Elem a, Elem b) const {
  FpPoly x = digits(a);
  FpPoly y = digits(b);
  trim(x);
  trim(y);
  return from_digits(poly_mulmod(x, y, modulus_, p_));
}

ExtensionField::Elem ExtensionField::add(Elem a, Elem b) const {
  Elem r = 0;
  Elem scale = 1;
  for (unsigned j = 0; j < k_; ++j) {
    std::uint32_t s = a % p_ + b % p_;
    if (s >= p_) s -= p_;
    r += s * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

ExtensionField::Elem ExtensionField::sub(Elem a, Elem b) const {
  Elem r = 0;
  Elem scale = 1;
  for (unsigned j = 0; j < k_; ++j) {
    const std::uint32_t da = a % p_;
    const std::uint32_t db = b % p_;
    r += (da >= db ? da - db : da + p_ - db) * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return r;
}

ExtensionField::Elem ExtensionField::sqrt(Elem a) const {
  if (a == 0) return 0;
  if (log_[a] % 2 != 0) throw PreconditionError("not a square");
  return exp_[log_[a] / 2];
}

ExtensionField::Elem ExtensionField::eval(const std::vector<std::uint32_t>& coeffs, Elem x) const {
  Elem acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = add(mul(acc, x), *it);
  return acc;
}

}  // namespace prymkit
