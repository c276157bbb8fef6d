#pragma once

// Small finite fields F_{p^k} with table-driven arithmetic. Elements are
// indices sum c_j p^j of their coefficient vectors modulo a fixed monic
// irreducible of degree k.

#include <cstdint>
#include <vector>

namespace prymkit {

inline constexpr std::uint64_t kDefaultFieldBudget = 10'000'000;
inline constexpr std::uint32_t kDefaultPrimeBudget = 97;

/// Monic polynomial over F_p, coefficients low to high.
using FpPoly = std::vector<std::uint32_t>;

/// True when the monic polynomial m of degree >= 1 is irreducible over
/// F_p (Rabin's test).
bool is_irreducible_mod_p(const FpPoly& m, std::uint32_t p);

/// The monic irreducible of degree k over F_p that is least when the
/// coefficient vectors (c_{k-1}, ..., c_0) are compared lexicographically.
FpPoly least_irreducible(std::uint32_t p, unsigned k);

class ExtensionField {
 public:
  using Elem = std::uint32_t;

  /// F_{p^k}; throws PreconditionError("field too large") when p^k exceeds
  /// the budget and for even or non-prime p.
  ExtensionField(std::uint32_t p, unsigned k, std::uint64_t budget = kDefaultFieldBudget);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint32_t size() const { return q_; }
  const FpPoly& modulus() const { return modulus_; }

  /// Image of a residue a in [0, p).
  Elem from_base(std::uint32_t a) const { return a; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const { return sub(0, a); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
  }
  /// Subtraction of a base-field constant only touches the constant digit.
  Elem sub_base(Elem a, std::uint32_t c) const {
    const std::uint32_t d0 = a % p_;
    return a - d0 + (d0 >= c ? d0 - c : d0 + p_ - c);
  }
  /// Quadratic character: 0, 1 or -1.
  int chi(Elem a) const {
    if (a == 0) return 0;
    return (log_[a] % 2 == 0) ? 1 : -1;
  }
  /// A square root of a square; the one with even discrete log / 2.
  Elem sqrt(Elem a) const;
  Elem generator() const { return exp_[1]; }

  /// Evaluates a polynomial with base-field coefficients (low to high).
  Elem eval(const std::vector<std::uint32_t>& coeffs, Elem x) const;

 private:
  std::vector<std::uint32_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint32_t>& d) const;
  Elem mul_slow(Elem a, Elem b) const;

  std::uint32_t p_;
  unsigned k_;
  std::uint32_t q_;
  FpPoly modulus_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
};

}  // namespace prymkit
