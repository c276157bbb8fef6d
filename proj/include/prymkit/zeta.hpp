#pragma once

// Point counts of split hyperelliptic curves and of the double covers
// from covers.hpp over F_{p^i}, L-polynomials and the Jacobian order
// comparison #Jac(Ctilde) = #Jac(C) * #Jac(X_c).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "prymkit/covers.hpp"
#include "prymkit/finite_field.hpp"
#include "prymkit/hypercurve.hpp"

namespace prymkit {

/// y^2 = lead * prod (x - roots[i]) over F_p with distinct roots in F_p.
struct FpCurve {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> roots;
  std::uint32_t lead = 1;

  int genus() const { return static_cast<int>((roots.size() + 1) / 2) - 1; }
  bool odd_degree() const { return roots.size() % 2 == 1; }
  /// Distinct roots and a nonzero lead.
  bool nonsingular() const;
  /// Coefficients of lead * prod (x - r), low to high.
  std::vector<std::uint32_t> poly() const;

  friend bool operator==(const FpCurve&, const FpCurve&) = default;
};

/// Reduction of a rational curve; "bad reduction" when p is in
/// bad_primes(C).
FpCurve reduce_curve(const HyperCurve& c, std::uint32_t p);

/// Points on the smooth projective model over F_{p^i}. Requires
/// 1 <= i <= 2 * genus and p^i within the field budget.
std::uint64_t count_points(const FpCurve& c, unsigned i,
                           std::uint64_t field_budget = kDefaultFieldBudget);
std::uint64_t count_points(const FpCurve& c, const ExtensionField& field);

/// A cover certificate reduced modulo p.
struct ReducedCover {
  FpCurve curve;
  std::vector<std::uint32_t> h;
  std::vector<std::uint32_t> f_poly;  // F
  std::uint32_t xp = 0;
  std::uint32_t xq = 0;
};

/// Reduces a rational certificate; "bad reduction" unless p is odd, good
/// for C, all data p-integral, x_P != x_Q and y_P, y_Q nonzero mod p,
/// lc(h), lc(F) units and F coprime to f mod p.
ReducedCover reduce_cover(const CoverCertificate& cert, std::uint32_t p);

/// #Ctilde(F_{p^i}) for Ctilde: y^2 = f(x), z^2 = y + h(x), on the smooth
/// model. Above a point (x, y) of C with v = y + h(x): 1 + chi(v) points
/// when v != 0; one point when x is x_P or x_Q (branch points); over a
/// root of F the normalization splits according to
/// chi(2 h(x)(x - x_P)(x - x_Q)). Above infinity 1 + chi(lc(h) lead^{g+1}).
std::uint64_t count_double_cover(const ReducedCover& cover, unsigned i,
                                 std::uint64_t field_budget = kDefaultFieldBudget);
std::uint64_t count_double_cover(const ReducedCover& cover, const ExtensionField& field);

/// Numerator of the zeta function of a genus-gamma curve over F_q.
struct LPoly {
  std::uint64_t q = 0;
  std::vector<Integer> coeffs;  // a_0 .. a_{2 gamma}

  int genus() const { return static_cast<int>(coeffs.size() / 2); }
  /// P(1), the order of the Jacobian over F_q.
  Integer jacobian_order() const;
};

/// From counts N_1..N_gamma via Newton's identities and the functional
/// equation; "inconsistent counts" on Weil-bound violations or
/// non-integral coefficients.
LPoly l_polynomial(const std::vector<std::uint64_t>& counts, int genus, std::uint64_t q);

enum class TwistMatch { kOne, kNonresidue, kBoth, kNone };

std::string to_string(TwistMatch m);

struct PrymCheckReport {
  std::uint32_t p = 0;
  std::uint32_t nonresidue = 0;
  std::vector<std::uint64_t> counts_c;
  std::vector<std::uint64_t> counts_ctilde;
  std::vector<std::uint64_t> counts_x_one;
  std::vector<std::uint64_t> counts_x_ns;
  Integer order_c;
  Integer order_ctilde;
  Integer order_x_one;
  Integer order_x_ns;
  TwistMatch matched = TwistMatch::kNone;

  bool holds() const { return matched != TwistMatch::kNone; }
};

/// Least quadratic nonresidue modulo an odd prime.
std::uint32_t least_nonresidue(std::uint32_t p);

/// Whether the pair (certificate, p) satisfies every reduction
/// precondition of prym_product_check; the reason is filled otherwise.
bool prym_check_applicable(const CoverCertificate& cert, std::uint32_t p, std::string* reason);

/// Compares #Jac(Ctilde)(F_p) with #Jac(C)(F_p) #Jac(X_c)(F_p) for c = 1
/// and c = least nonresidue. Throws PreconditionError on bad reduction.
PrymCheckReport prym_product_check(const CoverCertificate& cert, std::uint32_t p,
                                   std::uint64_t field_budget = kDefaultFieldBudget);

}  // namespace prymkit
