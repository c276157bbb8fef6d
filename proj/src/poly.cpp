#include "prymkit/poly.hpp"

namespace prymkit {

MQPoly to_mq(const RatPoly& p) {
  std::vector<MQElem> c;
  c.reserve(p.coeffs().size());
  for (const auto& r : p.coeffs()) c.emplace_back(r);
  return MQPoly(std::move(c));
}

RatPoly to_rat(const MQPoly& p) {
  std::vector<Rat> c;
  c.reserve(p.coeffs().size());
  for (const auto& e : p.coeffs()) c.push_back(e.to_rat());
  return RatPoly(std::move(c));
}

std::vector<Integer> primitive_integer_coeffs(const RatPoly& p) {
  if (p.is_zero()) throw PreconditionError("primitive part of zero polynomial");
  Integer l = 1;
  for (const auto& c : p.coeffs()) l = lcm(l, c.den());
  std::vector<Integer> out;
  out.reserve(p.coeffs().size());
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    out.push_back(c.num() * (l / c.den()));
    g = gcd(g, out.back());
  }
  if (p.lead().sign() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

Rat content(const RatPoly& p) {
  const auto prim = primitive_integer_coeffs(p);
  return p.lead() / Rat(prim.back());
}

namespace {

// Horner evaluation of an integer polynomial modulo m.
Integer eval_mod(const std::vector<Integer>& f, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = (acc * x + *it) % m;
  }
  if (acc < 0) acc += m;
  return acc;
}

std::vector<Integer> derivative(const std::vector<Integer>& f) {
  std::vector<Integer> d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

// gcd test for square-freeness modulo a small prime.
bool squarefree_mod(const std::vector<Integer>& f, std::uint32_t p) {
  const Integer P(static_cast<unsigned long>(p));
  auto reduce = [&](const std::vector<Integer>& v) {
    std::vector<std::uint64_t> r;
    for (const auto& c : v) {
      Integer t = c % P;
      if (t < 0) t += P;
      r.push_back(t.get_ui());
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  };
  auto pmod = [p](std::vector<std::uint64_t> a, const std::vector<std::uint64_t>& b) {
    const std::uint64_t inv = mod_inverse(Integer(static_cast<unsigned long>(b.back())),
                                          Integer(static_cast<unsigned long>(p)))
                                  .get_ui();
    while (a.size() >= b.size()) {
      const std::uint64_t coef = a.back() * inv % p;
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        a[shift + j] = (a[shift + j] + p - coef * b[j] % p) % p;
      }
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
  };
  auto a = reduce(f);
  auto b = reduce(derivative(f));
  if (b.empty()) return false;
  while (!b.empty()) {
    auto r = pmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

// Smallest |a| <= n, 0 < b <= d with a = b*r mod m, if any.
std::optional<Rat> rational_reconstruct(const Integer& r, const Integer& m, const Integer& n,
                                        const Integer& d) {
  Integer r0 = m, r1 = r;
  Integer t0 = 0, t1 = 1;
  while (r1 > n) {
    const Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || ::abs(t1) > d) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  return Rat(r1, t1);
}

}  // namespace

std::vector<Rat> rational_roots(const RatPoly& p) {
  if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
  if (p.degree() == 0) return {};
  RatPoly sq = exact_div(p, gcd(p, p.derivative()));
  std::vector<Rat> roots;
  if (sq.coeff(0).is_zero()) {
    roots.emplace_back(0);
    sq = exact_div(sq, RatPoly::x());
  }
  if (sq.degree() >= 1) {
    const auto f = primitive_integer_coeffs(sq);
    const Integer lc = ::abs(f.back());
    const Integer a0 = ::abs(f.front());
    const Integer bound = std::max(lc, a0);
    // a/b root in lowest terms: |a| <= |a0|, b <= |lc|.
    std::uint32_t p = 3;
    while (true) {
      if (is_prime(p) && mpz_divisible_ui_p(lc.get_mpz_t(), p) == 0 &&
          mpz_divisible_ui_p(a0.get_mpz_t(), p) == 0 && squarefree_mod(f, p)) {
        break;
      }
      ++p;
    }
    const Integer P(static_cast<unsigned long>(p));
    std::vector<Integer> residues;
    for (std::uint32_t x = 1; x < p; ++x) {
      if (eval_mod(f, Integer(static_cast<unsigned long>(x)), P) == 0) residues.emplace_back(x);
    }
    const Integer target = 2 * bound * bound;
    const auto df = derivative(f);
    for (const auto& r0 : residues) {
      Integer r = r0;
      Integer mod = P;
      while (mod <= target) {
        mod *= mod;
        const Integer fr = eval_mod(f, r, mod);
        const Integer dfr = eval_mod(df, r, mod);
        r = (r - fr * mod_inverse(dfr, mod)) % mod;
        if (r < 0) r += mod;
      }
      if (auto q = rational_reconstruct(r, mod, a0, lc)) {
        if (sq(*q).is_zero()) roots.push_back(*q);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

Integer sylvester_resultant(const std::vector<Integer>& a, int da, const std::vector<Integer>& b,
                            int db) {
  const int n = da + db;
  if (n == 0) return 1;
  auto coeff = [](const std::vector<Integer>& v, int i) {
    return (i >= 0 && static_cast<std::size_t>(i) < v.size()) ? v[static_cast<std::size_t>(i)]
                                                             : Integer(0);
  };
  // Rows: db shifted copies of a, then da shifted copies of b, highest
  // coefficient first.
  std::vector<std::vector<Integer>> m(static_cast<std::size_t>(n),
                                      std::vector<Integer>(static_cast<std::size_t>(n), 0));
  for (int r = 0; r < db; ++r) {
    for (int k = 0; k <= da; ++k) m[r][r + k] = coeff(a, da - k);
  }
  for (int r = 0; r < da; ++r) {
    for (int k = 0; k <= db; ++k) m[db + r][r + k] = coeff(b, db - k);
  }
  // Bareiss fraction-free elimination.
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

RatFunc::RatFunc(RatPoly num, RatPoly den) {
  if (den.is_zero()) throw PreconditionError("rational function with zero denominator");
  const RatPoly g = gcd(num, den);
  if (!num.is_zero() && g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  if (num.is_zero()) den = RatPoly::constant(Rat(1));
  const Rat lc = den.lead();
  num_ = num * lc.inverse();
  den_ = den * lc.inverse();
}

std::optional<Rat> RatFunc::eval(const Rat& x) const {
  const Rat d = den_(x);
  if (d.is_zero()) return std::nullopt;
  return num_(x) / d;
}

namespace {

class ExprParser {
 public:
  explicit ExprParser(std::string_view t) : t_(t) {}

  RatFunc run() {
    RatFunc r = expr();
    skip();
    if (i_ != t_.size()) fail();
    return r;
  }

 private:
  [[noreturn]] void fail() const {
    throw PreconditionError("cannot parse rational function at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < t_.size() && t_[i_] == ' ') ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < t_.size() && t_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static RatFunc mul(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num() * b.num(), a.den() * b.den());
  }
  static RatFunc add(const RatFunc& a, const RatFunc& b, bool minus) {
    const RatPoly bn = minus ? b.num() * Rat(-1) : b.num();
    return RatFunc(a.num() * b.den() + bn * a.den(), a.den() * b.den());
  }

  RatFunc expr() {
    RatFunc r = term();
    while (true) {
      if (eat('+')) {
        r = add(r, term(), false);
      } else if (eat('-')) {
        r = add(r, term(), true);
      } else {
        return r;
      }
    }
  }

  RatFunc term() {
    RatFunc r = power();
    while (true) {
      if (eat('*')) {
        r = mul(r, power());
      } else if (eat('/')) {
        const RatFunc d = power();
        if (d.num().is_zero()) throw PreconditionError("division by zero in rational function");
        r = mul(r, RatFunc(d.den(), d.num()));
      } else {
        return r;
      }
    }
  }

  RatFunc power() {
    const RatFunc base = unary();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = i_;
    while (i_ < t_.size() && t_[i_] >= '0' && t_[i_] <= '9') ++i_;
    if (start == i_ || i_ - start > 4) fail();
    const auto e = static_cast<unsigned>(std::stoul(std::string(t_.substr(start, i_ - start))));
    return RatFunc(pow(base.num(), e), pow(base.den(), e));
  }

  RatFunc unary() {
    if (eat('-')) {
      const RatFunc r = unary();
      return RatFunc(r.num() * Rat(-1), r.den());
    }
    if (eat('(')) {
      RatFunc r = expr();
      if (!eat(')')) fail();
      return r;
    }
    if (eat('x')) return RatFunc::poly(RatPoly::x());
    skip();
    const std::size_t start = i_;
    while (i_ < t_.size() && t_[i_] >= '0' && t_[i_] <= '9') ++i_;
    if (start == i_) fail();
    return RatFunc::poly(RatPoly::constant(Rat(Integer(std::string(t_.substr(start, i_ - start))))));
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return ExprParser(text).run(); }

}  // namespace prymkit
