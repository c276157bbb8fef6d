#pragma once

// S-integral points of y^2 = f(x) for a function in Q(x): a bounded brute
// force search and the recovery of points from a candidate set of curves
// by matching cross-ratios of beta-tuples.

#include <array>
#include <string>
#include <vector>

#include "prymkit/hypercurve.hpp"
#include "prymkit/poly.hpp"

namespace prymkit {

inline constexpr long kDefaultHeightBound = 100;

struct IntegralitySpec {
  RatFunc f;
  PlaceSet s;
  long height_bound = kDefaultHeightBound;
};

/// Throws PreconditionError for constant f or a bound below 1.
void validate(const IntegralitySpec& spec);

/// f(P) lies in O_S. Points at infinity use the value of f at x = inf.
bool is_integral_point(const HyperCurve& c, const IntegralitySpec& spec, const CurvePoint& p);

/// Affine points (a/b, y) with |a| <= H, 1 <= b <= H passing the
/// integrality predicate, sorted with point_less. Rational curves only.
std::vector<CurvePoint> brute_force_points(const HyperCurve& c, const IntegralitySpec& spec);

/// Nonzero polynomial in x whose rational roots include every x_P with
/// CR(beta_i0, .., beta_i3) = target, where beta_i^2 = (x_Q - alpha_i) /
/// (x - alpha_i). Built as the product of the 8 sign conjugates of
/// N - target * D over z_i^2 = x - alpha_i; depends on Q only through x_Q.
RatPoly cr_elimination_poly(const HyperCurve& c, const CurvePoint& q,
                            const std::array<std::size_t, 4>& idx, const Rat& target);

struct RecoveredPoint {
  CurvePoint point;
  std::string via;
};

struct Recovery {
  CurvePoint q;
  std::vector<CurvePoint> points;          // sorted, deduplicated
  std::vector<RecoveredPoint> provenance;  // first witness per point
};

/// Poles of f on C with rational coordinates and y != 0, sorted.
std::vector<CurvePoint> rational_poles(const HyperCurve& c, const RatFunc& f);

/// Candidate points from cross-ratio matching against each candidate
/// curve, plus the exceptional set (Weierstrass points, Q and its image),
/// all filtered by the integrality predicate. Requires a split rational
/// odd-degree model of genus >= 2; throws PreconditionError("enlarge base
/// field required") when f has no usable rational pole.
Recovery recover_points(const HyperCurve& c, const IntegralitySpec& spec,
                        const std::vector<HyperCurve>& candidates);

}  // namespace prymkit
