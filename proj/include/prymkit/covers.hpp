#pragma once

// Double covers of a split odd-degree hyperelliptic curve ramified above
// two points P and Q: beta-tuples, the cover polynomials (h, F), the
// curve X attached to a tuple, tower equations and cross-ratios.

#include <string>
#include <vector>

#include "prymkit/hypercurve.hpp"
#include "prymkit/poly.hpp"

namespace prymkit {

struct CoverBase {
  HyperCurve curve;
  CurvePoint p;
  CurvePoint q;
};

/// beta_i^2 = (x_Q - alpha_i) / (x_P - alpha_i), prod beta_i = y_Q / y_P.
struct BetaTuple {
  CoverBase base;
  std::vector<Scalar> betas;

  bool is_rational() const;
  std::vector<Rat> rat_betas() const;
};

/// Checks the two defining invariants of a tuple exactly.
bool is_valid_tuple(const BetaTuple& t);

/// All 2^{2g} tuples. Signs of beta_1..beta_{2g} run through sign vectors
/// in lexicographic order (+ before -); beta_{2g+1} is forced by the
/// product. Base roots are the sqrt_adjoin roots. Requires an odd-degree
/// model with (x_Q - alpha_i)/(x_P - alpha_i) rational.
std::vector<BetaTuple> beta_tuples(const HyperCurve& c, const CurvePoint& p, const CurvePoint& q);

/// Even-degree model y^2 = (x - 1) prod (x - beta_i). The arithmetically
/// correct model is a quadratic twist of it by an unknown constant;
/// `twist_unknown` marks that.
struct PrymModel {
  HyperCurve curve;
  bool twist_unknown = true;
};

PrymModel prym_curve_equation(const BetaTuple& t);

/// (h, F) with h^2 - f = (x - x_P)(x - x_Q) F^2.
struct CoverCertificate {
  BetaTuple tuple;
  MQPoly h;
  MQPoly f_poly;  // F
};

struct CertificateChecks {
  bool identity = false;   // h^2 - f == (x - x_P)(x - x_Q) F^2
  bool degree = false;     // deg h == g + 1
  bool h_at_p = false;     // h(x_P) == -y_P
  bool h_at_q = false;     // h(x_Q) == -y_Q
  bool all() const { return identity && degree && h_at_p && h_at_q; }
};

CertificateChecks verify_certificate(const CoverCertificate& cert);

/// Builds G(t) = c0 (t - 1) prod (t - eps beta_i) with eps = (-1)^{g+1},
/// c0 fixed by G(0) = -y_Q, splits it into even and odd parts and
/// substitutes t^2 = (x - x_Q)/(x - x_P). Throws InvariantError when the
/// result fails a certificate check.
CoverCertificate reconstruct_h_F(const BetaTuple& t);

/// The curves of the tower attached to a certificate, as equation data.
///   Ctilde:  y^2 = f(x), z^2 = y + h(x)
///   Ctilde0: y^2 = f(x), z^2 = h(x)^2 - f(x)
///   C1:      z^2 = h(x)^2 - f(x) = (x - x_P)(x - x_Q) F(x)^2
///   X:       the curve of prym_curve_equation
struct TowerEquations {
  MQPoly f;
  MQPoly h;
  MQPoly c1;        // h^2 - f
  MQPoly c1_split;  // (x - x_P)(x - x_Q) F^2
  PrymModel x;
  int genus_c = 0;
  int genus_ctilde = 0;
  int genus_x = 0;
  /// (h + y)(h - y) reduces to h^2 - f modulo y^2 = f, and c1 == c1_split.
  bool consistent = false;
};

TowerEquations tower_equations(const CoverCertificate& cert);

/// Instance built from chosen rational betas: D = sqfree(prod (1 - beta_i^2))
/// k^2, x_P = x_Q + D, alpha_i = (x_Q - beta_i^2 x_P) / (1 - beta_i^2),
/// y_P = +sqrt f(x_P), y_Q = y_P prod beta_i. `tuple_index` is the position
/// of `betas` in beta_tuples(curve, p, q).
struct BacksolvedInstance {
  HyperCurve curve;
  CurvePoint p;
  CurvePoint q;
  std::vector<Rat> betas;
  std::size_t tuple_index = 0;
};

BacksolvedInstance backsolve_instance(const std::vector<Rat>& betas, const Rat& xq, const Rat& k);

/// ((a - c)(b - d)) / ((b - c)(a - d)); "degenerate cross-ratio" on repeats.
Scalar cross_ratio(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d);

}  // namespace prymkit
