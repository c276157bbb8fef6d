#pragma once

// Binary forms over Q, their discriminants and GL2 action, the sets B and
// B' relative to a place set S, the construction of a B'-form from a
// pair of points, and the reduction type at a special prime.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prymkit/covers.hpp"
#include "prymkit/hypercurve.hpp"
#include "prymkit/rational.hpp"
#include "prymkit/zeta.hpp"

namespace prymkit {

/// delta * X - gamma * Z.
struct LinearFactor {
  Rat delta;
  Rat gamma;

  friend bool operator==(const LinearFactor&, const LinearFactor&) = default;
};

/// A degree-r binary form, either split as lambda * prod (delta_i X -
/// gamma_i Z) or given densely as sum a_k X^k Z^{r-k}.
class BinaryForm {
 public:
  static BinaryForm factored(Rat lambda, std::vector<LinearFactor> factors);
  /// dense[k] is the coefficient of X^k Z^{r-k}; r = dense.size() - 1.
  static BinaryForm dense(std::vector<Rat> coeffs);

  int degree() const { return degree_; }
  bool is_split() const { return factors_.has_value(); }
  /// Throws PreconditionError("not split over base field") when the form
  /// does not factor into linear forms over Q.
  BinaryForm split() const;
  const Rat& lambda() const;
  const std::vector<LinearFactor>& factors() const;
  /// Coefficients a_0..a_r (always available).
  std::vector<Rat> coefficients() const;

  friend bool operator==(const BinaryForm& a, const BinaryForm& b) {
    return a.coefficients() == b.coefficients();
  }

 private:
  int degree_ = 0;
  std::optional<Rat> lambda_;
  std::optional<std::vector<LinearFactor>> factors_;
  std::optional<std::vector<Rat>> dense_;
};

struct GL2Matrix {
  Rat a, b, c, d;
  Rat det() const { return a * d - b * c; }
};

/// lambda^{2r-2} prod_{i<j} (gamma_i delta_j - gamma_j delta_i)^2.
Rat bf_disc(const BinaryForm& f);

/// F(aX + bZ, cX + dZ).
BinaryForm bf_transform(const BinaryForm& f, const GL2Matrix& u);

/// disc(F) is an S-unit.
bool in_B(const BinaryForm& f, const PlaceSet& s);

struct BPrimeEntry {
  std::int64_t p = 0;
  long m = 0;
  long n = 0;
  std::vector<std::size_t> roots;  // factor indices

  friend bool operator==(const BPrimeEntry&, const BPrimeEntry&) = default;
};

struct BPrimeCertificate {
  PlaceSet s;
  std::vector<BPrimeEntry> entries;
};

struct BPrimeResult {
  bool accepted = false;
  std::string reason;  // empty when accepted
  BPrimeCertificate certificate;
};

/// Decides the B' condition for this representative: every prime p
/// outside S with ord_p disc(F) > 0 must have ord_p disc(F) = 2mn(n-1)
/// with n odd in [3, 2 floor((r+1)/2) - 3] and exactly n roots of
/// F(x, 1) of valuation 2m.
BPrimeResult check_B_prime(const BinaryForm& f, const PlaceSet& s);

/// Per-prime record of the construction in integral_point_to_form.
struct PrimeCase {
  std::int64_t p = 0;
  int kind = 0;  // 2: ord_p(x_P - x_Q) < 0, 3: > 0
  long m = 0;    // |ord_p(x_P - x_Q)|
  long n = 0;    // number of beta_i = -1 mod p (kind 3)
  long oeq_expected = 0, oeq_actual = 0;
  long deq_expected = 0, deq_actual = 0;
  bool rescued = false;
};

struct FormConstruction {
  std::size_t tuple_index = 0;
  PlaceSet s;                // enlarged S
  BinaryForm base;           // (X - Z) prod (delta_i X - gamma_i Z)
  BinaryForm scaled;         // G
  BinaryForm normalized;     // H before shift and rescue
  BinaryForm form;           // certified output
  Rat c;                     // scaling constant of the negative case
  Integer b;                 // 2bc = -1 mod M
  Integer shift;             // X -> X + shift * Z
  std::vector<PrimeCase> cases;
  BPrimeCertificate certificate;
};

/// Builds a B'(2g+2, Q, S') form from (C, P, Q) using the rational tuple
/// beta_tuples(C, P, Q)[tuple_index], enlarging S as needed.
/// "requires rational beta-tuple" when that tuple is irrational.
FormConstruction integral_point_to_form(const HyperCurve& c, const CurvePoint& p,
                                        const CurvePoint& q, const PlaceSet& s,
                                        std::size_t tuple_index = 0);

enum class ReductionKind { kGoodIrreducible, kSplitProduct };

struct ReductionType {
  ReductionKind kind = ReductionKind::kGoodIrreducible;
  std::optional<FpCurve> c1;  // y^2 = x h(x)
  std::optional<FpCurve> c2;  // y^2 = h(0) prod (x - u_i)
  long m = 0;
  long n = 0;
};

/// Reduction type of y^2 = F(x, 1) at a prime p outside S for a form that
/// passes check_B_prime. Throws InvariantError("certificate inconsistent")
/// when the factor pattern or the residue curves do not match.
ReductionType reduction_classify(const BinaryForm& f, const PlaceSet& s, std::int64_t p);

}  // namespace prymkit
