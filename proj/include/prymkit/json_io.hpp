#pragma once

// JSON encodings of the library's value types. Rationals are strings,
// never floating point. Every to_json has a matching *_from_json that
// re-parses it losslessly; malformed input raises PreconditionError.

#include <json.hpp>

#include "prymkit/binary_form.hpp"
#include "prymkit/covers.hpp"
#include "prymkit/hypercurve.hpp"
#include "prymkit/integral_points.hpp"
#include "prymkit/zeta.hpp"

namespace prymkit {

using Json = nlohmann::ordered_json;

Json to_json(const Rat& r);
Rat rat_from_json(const Json& j);

/// Rational scalars are plain strings; others use
/// {"gens":[..], "coords":{"0,1":"p/q", ..}} with 0-based generator indices.
Json to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json to_json(const HyperCurve& c);
HyperCurve curve_from_json(const Json& j);

Json to_json(const CurvePoint& p);
CurvePoint point_from_json(const Json& j);

/// Sorted list of finite primes.
Json to_json(const PlaceSet& s);
PlaceSet places_from_json(const Json& j);

Json to_json(const CoverCertificate& c, const CertificateChecks& checks);
/// Rebuilds the certificate against the given curve.
CoverCertificate certificate_from_json(const HyperCurve& c, const Json& j);

Json to_json(const PrymCheckReport& r);

/// {"degree":r,"lambda":"..","factors":[[delta,gamma],..]} when split,
/// {"degree":r,"coeffs":[a_0,..,a_r]} otherwise.
Json to_json(const BinaryForm& f);
BinaryForm form_from_json(const Json& j);

Json to_json(const BPrimeCertificate& c);
BPrimeCertificate bprime_certificate_from_json(const Json& j);

Json to_json(const PrimeCase& c);
Json to_json(const FormConstruction& fc);

Json to_json(const FpCurve& c);

/// {"genus":g,"curves":[curve, ..]}.
Json candidates_to_json(int genus, const std::vector<HyperCurve>& curves);
std::vector<HyperCurve> candidates_from_json(const Json& j);

Json points_to_json(const std::vector<CurvePoint>& pts);
Json to_json(const Recovery& r);

}  // namespace prymkit
