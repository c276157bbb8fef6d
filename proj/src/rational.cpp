#include "prymkit/rational.hpp"

#include <algorithm>
#include <array>

#include "prymkit/errors.hpp"

namespace prymkit {

Rat::Rat(const Integer& num, const Integer& den) {
  if (den == 0) throw PreconditionError("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  if (text.empty()) throw PreconditionError("empty rational literal");
  const std::string s(text);
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& part) {
    Integer z;
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (part.size() == start ||
        !std::all_of(part.begin() + static_cast<long>(start), part.end(),
                     [](char c) { return c >= '0' && c <= '9'; })) {
      throw PreconditionError("malformed rational literal '" + s + "'");
    }
    z.set_str(part[0] == '+' ? part.substr(1) : part, 10);
    return z;
  };
  if (slash == std::string::npos) return Rat(parse_int(s));
  const Integer d = parse_int(s.substr(slash + 1));
  if (d <= 0) throw PreconditionError("malformed rational literal '" + s + "'");
  return Rat(parse_int(s.substr(0, slash)), d);
}

Rat Rat::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero");
  return Rat(mpq_class(1) / v_);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw PreconditionError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rat::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat pow(const Rat& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rat(n, d);
}

long Valuation::value() const {
  if (infinite_) throw PreconditionError("valuation is infinite");
  return value_;
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  if (v.is_infinite()) return os << "inf";
  return os << v.value();
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1U) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1U;
  }
  return r;
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const u64 m = static_cast<u64>(n);
  for (u64 b : bases) {
    if (m % b == 0) return m == b;
  }
  u64 d = m - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : bases) {
    u64 x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

long ord_p(const Integer& n, std::int64_t p) {
  if (n == 0) throw PreconditionError("valuation of zero integer");
  Integer q = n;
  const Integer pp(static_cast<long>(p));
  long k = 0;
  while (mpz_divisible_p(q.get_mpz_t(), pp.get_mpz_t()) != 0) {
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t());
    ++k;
  }
  return k;
}

Valuation rat_ord_p(const Rat& r, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("not prime");
  if (r.is_zero()) return Valuation::infinity();
  return Valuation(ord_p(r.num(), p) - ord_p(r.den(), p));
}

std::map<std::int64_t, int> factor_integer(const Integer& n, std::int64_t bound) {
  if (n == 0) throw PreconditionError("cannot factor zero");
  std::map<std::int64_t, int> out;
  Integer m = ::abs(n);
  auto strip = [&](std::int64_t p) {
    const Integer pp(static_cast<long>(p));
    while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t()) != 0) {
      mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
      ++out[p];
    }
  };
  strip(2);
  for (std::int64_t p = 3; p <= bound; p += 2) {
    if (m == 1) break;
    const Integer pp(static_cast<long>(p));
    if (pp * pp > m) break;
    strip(p);
  }
  if (m == 1) return out;

  // Every prime factor of m now exceeds min(bound, sqrt(m)).
  const Integer bound_sq = Integer(static_cast<long>(bound)) * Integer(static_cast<long>(bound));
  auto certified_prime = [&](const Integer& c) {
    if (c <= bound_sq) return true;
    return mpz_fits_slong_p(c.get_mpz_t()) != 0 && is_prime(c.get_si());
  };
  if (certified_prime(m)) {
    if (!mpz_fits_slong_p(m.get_mpz_t())) throw PreconditionError("prime factor exceeds 64 bits");
    ++out[m.get_si()];
    return out;
  }
  for (unsigned long k = 2; k <= 64; ++k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), m.get_mpz_t(), k) != 0 && certified_prime(root) &&
        mpz_fits_slong_p(root.get_mpz_t()) != 0) {
      out[root.get_si()] += static_cast<int>(k);
      return out;
    }
  }
  throw PreconditionError("cannot certify factorization of " + n.get_str() +
                          " within trial-division bound");
}

SquareFreeSplit square_free_split(const Rat& r, std::int64_t bound) {
  if (r.is_zero()) return {Integer(0), Rat(0)};
  Integer s = 1;
  Integer t_num = 1;
  Integer t_den = 1;
  for (auto [p, e] : factor_integer(r.num(), bound)) {
    const Integer pp(static_cast<long>(p));
    if (e % 2 != 0) s *= pp;
    for (int i = 0; i < e / 2; ++i) t_num *= pp;
  }
  for (auto [p, e] : factor_integer(r.den(), bound)) {
    const Integer pp(static_cast<long>(p));
    // 1/p^e = p^{(e mod 2)} / p^{e + (e mod 2)}
    if (e % 2 != 0) s *= pp;
    for (int i = 0; i < (e + 1) / 2; ++i) t_den *= pp;
  }
  if (r.sign() < 0) s = -s;
  return {s, Rat(t_num, t_den)};
}

bool rational_sqrt(const Rat& r, Rat& root) {
  if (r.sign() < 0) return false;
  if (mpz_perfect_square_p(r.num().get_mpz_t()) == 0 ||
      mpz_perfect_square_p(r.den().get_mpz_t()) == 0) {
    return false;
  }
  Integer a, b;
  mpz_sqrt(a.get_mpz_t(), r.num().get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), r.den().get_mpz_t());
  root = Rat(a, b);
  return true;
}

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw PreconditionError("element not invertible modulo " + m.get_str());
  }
  return inv;
}

std::uint32_t reduce_mod(const Rat& r, std::uint32_t p) {
  const Integer pp(static_cast<unsigned long>(p));
  Integer d = r.den() % pp;
  if (d == 0) throw PreconditionError("denominator divisible by " + std::to_string(p));
  Integer n = r.num() % pp;
  if (n < 0) n += pp;
  Integer v = (n * mod_inverse(d, pp)) % pp;
  return static_cast<std::uint32_t>(v.get_ui());
}

}  // namespace prymkit
