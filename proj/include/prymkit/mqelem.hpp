#pragma once

// Elements of multi-quadratic extensions Q(sqrt(d_1), ..., sqrt(d_n)).
//
// Every element carries its own generator list. Generators are always
// stored in a canonical multiplicatively independent basis: -1 and
// distinct primes, sorted ascending. The element is the sum over subsets
// T of coords[T] * prod_{i in T} sqrt(gens[i]), where sqrt(-1) is the
// imaginary unit and sqrt(p) the positive real root. A square-free d is
// identified with sqrt(d) := (sqrt(-1) if d < 0) * prod_{p | d} sqrt(p).
// Binary operations merge the generator lists of their operands.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "prymkit/rational.hpp"

namespace prymkit {

class MQElem {
 public:
  MQElem() : coords_{Rat(0)} {}
  MQElem(const Rat& r) : coords_{r} {}  // NOLINT(google-explicit-constructor)
  template <std::integral I>
  MQElem(I v) : coords_{Rat(v)} {}  // NOLINT(google-explicit-constructor)

  /// sqrt(d) for a nonzero square-free integer d (factorization certified).
  static MQElem sqrt_of_squarefree(const Integer& d);

  /// Builds an element from an arbitrary generator list (square-free,
  /// pairwise independent modulo squares) and subset-indexed coordinates
  /// (mask bit i <-> gens[i]). Re-expresses it in the canonical basis.
  static MQElem from_coords(const std::vector<Integer>& gens, const std::vector<Rat>& coords);

  const std::vector<std::int64_t>& gens() const { return gens_; }
  /// Coordinate of the monomial prod_{i in mask} sqrt(gens[i]).
  const Rat& coord(std::size_t mask) const { return coords_[mask]; }
  std::size_t dimension() const { return coords_.size(); }

  bool is_rational() const { return gens_.empty(); }
  bool is_zero() const;
  /// Lossless conversion; throws PreconditionError when irrational.
  Rat to_rat() const;

  /// Image under sqrt(gens[i]) -> -sqrt(gens[i]).
  MQElem conjugate(std::size_t gen_index) const;
  MQElem inverse() const;
  MQElem square() const { return *this * *this; }

  MQElem& operator+=(const MQElem& o);
  MQElem& operator-=(const MQElem& o);
  MQElem& operator*=(const MQElem& o) { return *this = *this * o; }
  MQElem& operator/=(const MQElem& o) { return *this = *this * o.inverse(); }

  friend MQElem operator+(MQElem a, const MQElem& b) { return a += b; }
  friend MQElem operator-(MQElem a, const MQElem& b) { return a -= b; }
  friend MQElem operator*(const MQElem& a, const MQElem& b);
  friend MQElem operator/(const MQElem& a, const MQElem& b) { return a * b.inverse(); }
  friend MQElem operator-(const MQElem& a);
  friend bool operator==(const MQElem& a, const MQElem& b);

  /// Human-readable form such as "1/2 + 3*sqrt(2) - sqrt(-1*3)".
  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const MQElem& e) { return os << e.str(); }

  /// Re-expresses the element over a superset of its generators.
  MQElem embed(const std::vector<std::int64_t>& super) const;

 private:
  MQElem(std::vector<std::int64_t> gens, std::vector<Rat> coords)
      : gens_(std::move(gens)), coords_(std::move(coords)) {}
  void trim();

  std::vector<std::int64_t> gens_;
  std::vector<Rat> coords_;
};

/// Total order used for deterministic sorting: rational elements first in
/// numeric order, then by generator list, then coordinate-wise.
bool canonical_less(const MQElem& a, const MQElem& b);

/// Square root of a nonzero rational: t*sqrt(s) with r = s t^2, s
/// square-free and t > 0. For r = 0 returns zero (degenerate).
MQElem sqrt_adjoin(const Rat& r);

using Scalar = MQElem;

}  // namespace prymkit
