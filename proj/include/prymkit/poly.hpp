#pragma once

// Dense univariate polynomials over an exact field (Rat or MQElem),
// resultants, discriminants, rational roots and rational functions.

#include <algorithm>
#include <climits>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prymkit/errors.hpp"
#include "prymkit/mqelem.hpp"
#include "prymkit/rational.hpp"

namespace prymkit {

/// Degree of the zero polynomial; below every real degree.
inline constexpr int kDegreeMinusInfinity = INT_MIN;

/// Multiplication switches to Karatsuba when both operands have more
/// coefficients than this.
inline constexpr std::size_t kKaratsubaThreshold = 32;

template <class K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

  static Poly constant(const K& a) { return Poly(std::vector<K>{a}); }
  static Poly monomial(const K& a, std::size_t k) {
    std::vector<K> c(k + 1, K(0));
    c[k] = a;
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(K(1), 1); }
  /// lead * prod (x - r).
  static Poly from_roots(const std::vector<K>& roots, const K& lead) {
    Poly p = constant(lead);
    for (const auto& r : roots) p = p * Poly({-r, K(1)});
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kDegreeMinusInfinity : static_cast<int>(c_.size()) - 1; }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
  K lead() const { return c_.empty() ? K(0) : c_.back(); }

  template <class T>
  T eval(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }
  K operator()(const K& x) const { return eval<K>(x); }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<long>(i));
    return Poly(std::move(d));
  }

  Poly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inverse();
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(const Poly& a) {
    Poly r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return Poly(multiply(a.c_, b.c_));
  }
  friend Poly operator*(const Poly& a, const K& s) {
    if (s.is_zero()) return {};
    Poly r = a;
    for (auto& v : r.c_) v *= s;
    r.trim();
    return r;
  }
  friend Poly operator*(const K& s, const Poly& a) { return a * s; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// "c0 + c1*x + ..." in increasing degree; "0" for the zero polynomial.
  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!first) os << " + ";
      os << "(" << c_[i] << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  static std::vector<K> schoolbook(const std::vector<K>& a, const std::vector<K>& b) {
    std::vector<K> r(a.size() + b.size() - 1, K(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
  }

  static std::vector<K> multiply(const std::vector<K>& a, const std::vector<K>& b) {
    if (a.size() <= kKaratsubaThreshold || b.size() <= kKaratsubaThreshold) {
      return schoolbook(a, b);
    }
    const std::size_t half = std::max(a.size(), b.size()) / 2;
    auto split = [half](const std::vector<K>& v) {
      const std::size_t cut = std::min(half, v.size());
      std::vector<K> lo(v.begin(), v.begin() + static_cast<long>(cut));
      std::vector<K> hi(v.begin() + static_cast<long>(cut), v.end());
      if (lo.empty()) lo.push_back(K(0));
      if (hi.empty()) hi.push_back(K(0));
      return std::pair{lo, hi};
    };
    auto add = [](std::vector<K> x, const std::vector<K>& y) {
      if (y.size() > x.size()) x.resize(y.size(), K(0));
      for (std::size_t i = 0; i < y.size(); ++i) x[i] += y[i];
      return x;
    };
    const auto [a0, a1] = split(a);
    const auto [b0, b1] = split(b);
    const auto z0 = multiply(a0, b0);
    const auto z2 = multiply(a1, b1);
    auto z1 = multiply(add(a0, a1), add(b0, b1));
    for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
    for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
    std::vector<K> r(a.size() + b.size() - 1, K(0));
    for (std::size_t i = 0; i < z0.size(); ++i) r[i] += z0[i];
    for (std::size_t i = 0; i < z1.size() && i + half < r.size(); ++i) r[i + half] += z1[i];
    for (std::size_t i = 0; i < z2.size() && i + 2 * half < r.size(); ++i) r[i + 2 * half] += z2[i];
    return r;
  }

  std::vector<K> c_;
};

template <class K>
Poly<K> pow(const Poly<K>& base, unsigned exponent) {
  Poly<K> r = Poly<K>::constant(K(1));
  Poly<K> b = base;
  while (exponent > 0) {
    if (exponent & 1U) r *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return r;
}

/// Euclidean division a = q*b + r with deg r < deg b.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  std::vector<K> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<K>{}, a};
  const K inv = b.lead().inverse();
  std::vector<K> q(static_cast<std::size_t>(a.degree() - db + 1), K(0));
  for (int k = a.degree() - db; k >= 0; --k) {
    const K coef = rem[static_cast<std::size_t>(k + db)] * inv;
    q[static_cast<std::size_t>(k)] = coef;
    if (coef.is_zero()) continue;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= coef * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly<K>(std::move(q)), Poly<K>(std::move(rem))};
}

/// Exact quotient; throws InvariantError when b does not divide a.
template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw InvariantError("polynomial division is not exact");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Resultant via the Euclidean recurrence
///   res(A,B) = (-1)^{mn} lc(B)^{m - deg R} res(B, R),  R = A mod B.
template <class K>
K resultant(const Poly<K>& f, const Poly<K>& g) {
  if (f.is_zero() && g.is_zero()) throw PreconditionError("resultant of two zero polynomials");
  if (f.is_zero() || g.is_zero()) return K(0);
  Poly<K> a = f;
  Poly<K> b = g;
  K acc(1);
  while (true) {
    const int m = a.degree();
    const int n = b.degree();
    if (n == 0) {
      K lc = b.lead();
      K r(1);
      for (int i = 0; i < m; ++i) r *= lc;
      return acc * r;
    }
    if (m == 0) {
      K lc = a.lead();
      K r(1);
      for (int i = 0; i < n; ++i) r *= lc;
      return acc * r;
    }
    Poly<K> r = divmod(a, b).second;
    if (r.is_zero()) return K(0);
    if ((static_cast<long>(m) * n) % 2 != 0) acc = -acc;
    const K lc = b.lead();
    for (int i = 0; i < m - r.degree(); ++i) acc *= lc;
    a = std::move(b);
    b = std::move(r);
  }
}

/// disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f).
template <class K>
K poly_disc(const Poly<K>& f) {
  if (f.degree() < 1) throw PreconditionError("discriminant of a constant polynomial");
  const long n = f.degree();
  K r = resultant(f, f.derivative()) / f.lead();
  if ((n * (n - 1) / 2) % 2 != 0) r = -r;
  return r;
}

using RatPoly = Poly<Rat>;
using MQPoly = Poly<MQElem>;

MQPoly to_mq(const RatPoly& p);
/// Throws PreconditionError if some coefficient is irrational.
RatPoly to_rat(const MQPoly& p);

/// Primitive integer polynomial proportional to p (positive leading
/// coefficient); p must be nonzero.
std::vector<Integer> primitive_integer_coeffs(const RatPoly& p);

/// p = content * primitive, with primitive integral of positive lead.
Rat content(const RatPoly& p);

/// Distinct rational roots in ascending order. Roots are found by
/// lifting simple roots modulo a good prime p-adically, followed by
/// rational reconstruction and an exact check.
std::vector<Rat> rational_roots(const RatPoly& p);

/// Resultant of a and b regarded as binary forms of formal degrees da and
/// db (determinant of the Sylvester matrix), computed fraction-free over
/// the integers. Coefficients must be integral.
Integer sylvester_resultant(const std::vector<Integer>& a, int da, const std::vector<Integer>& b,
                            int db);

/// Reduced quotient num/den of polynomials in x, den monic.
class RatFunc {
 public:
  RatFunc(RatPoly num, RatPoly den);
  static RatFunc poly(const RatPoly& p) { return RatFunc(p, RatPoly::constant(Rat(1))); }

  const RatPoly& num() const { return num_; }
  const RatPoly& den() const { return den_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  /// Value at x; nullopt at a pole.
  std::optional<Rat> eval(const Rat& x) const;
  /// "(num)/(den)" in the Poly::str format; accepted by parse().
  std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

  /// Expressions in x built from integers, + - * /, ^ with a nonnegative
  /// integer exponent and parentheses, e.g. "1/x" or "(x^2+1)/(x-3)".
  /// Throws PreconditionError on syntax errors or division by zero.
  static RatFunc parse(std::string_view text);

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  RatPoly num_;
  RatPoly den_;
};

}  // namespace prymkit
