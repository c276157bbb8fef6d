#pragma once

// Arbitrary-precision integers and rationals, p-adic valuations on Q and
// certified integer factorization.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <string_view>

namespace prymkit {

using Integer = mpz_class;

/// Exact rational number, always in lowest terms with positive denominator.
class Rat {
 public:
  Rat() = default;
  template <std::integral I>
  Rat(I v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(const Integer& n) : v_(n) {}        // NOLINT(google-explicit-constructor)
  Rat(const Integer& num, const Integer& den);
  explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

  /// Parses "p", "-p", "p/q" or "-p/q" (whitespace not allowed).
  static Rat parse(std::string_view text);

  Integer num() const { return v_.get_num(); }
  Integer den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat inverse() const;
  Rat abs() const { return Rat(::abs(v_)); }

  /// "-p/q", with "/q" omitted when q = 1.
  std::string str() const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class v_;
};

Rat pow(const Rat& base, long exponent);

/// p-adic valuation with a distinguished infinite value for zero. The
/// infinite value compares above every finite one.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long v) : value_(v), infinite_(false) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  long value() const;

  friend constexpr bool operator==(const Valuation&, const Valuation&) = default;
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }
  friend Valuation operator+(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

 private:
  long value_ = 0;
  bool infinite_ = true;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// Deterministic primality for 64-bit integers (Miller-Rabin with a
/// base set that is exact below 2^64).
bool is_prime(std::int64_t n);

/// Exponent of the prime p in r; infinity for r = 0. Throws
/// PreconditionError("not prime") if p is not prime.
Valuation rat_ord_p(const Rat& r, std::int64_t p);

/// Exponent of p in a nonzero integer (p assumed prime).
long ord_p(const Integer& n, std::int64_t p);

inline constexpr std::int64_t kDefaultTrialBound = 1'000'000;

/// Prime factorization of |n| (n != 0) by trial division up to `bound`.
/// A cofactor left over is accepted only when it can be certified prime
/// (or a perfect power of a certified prime) deterministically; otherwise
/// PreconditionError is thrown.
std::map<std::int64_t, int> factor_integer(const Integer& n,
                                           std::int64_t bound = kDefaultTrialBound);

/// Decomposition r = s * t^2 with s a square-free integer and t > 0.
struct SquareFreeSplit {
  Integer squarefree;
  Rat root;
};
SquareFreeSplit square_free_split(const Rat& r, std::int64_t bound = kDefaultTrialBound);

/// Exact square root when r is the square of a rational (nonnegative root).
bool rational_sqrt(const Rat& r, Rat& root);

/// Modular inverse of a mod m (gcd must be 1).
Integer mod_inverse(const Integer& a, const Integer& m);

/// r reduced modulo the prime p; throws PreconditionError when p divides
/// the denominator.
std::uint32_t reduce_mod(const Rat& r, std::uint32_t p);

}  // namespace prymkit
