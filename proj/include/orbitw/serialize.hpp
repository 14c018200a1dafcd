#pragma once

#include <nlohmann/json_fwd.hpp>

#include "orbitw/kummer.hpp"
#include "orbitw/sieve.hpp"
#include "orbitw/torus.hpp"

// single vendored header build: map the fwd include onto it
#if !defined(ORBITW_HAVE_JSON_FWD)
#include <json.hpp>
#endif

namespace orbitw {

using Json = nlohmann::json;

// wire formats
// polynomial over F_p: [int] little-endian coefficients
// field element:       {"p": int, "n": int, "coeffs": [int]}
// curve file:          {"p": int, "f": [int], "label": string}
// point:               {"inf": true} | {"n": int, "x": [int], "y": [int]}
// mumford:             {"u": [[int]], "v": [[int]], "n": int}
// group structure:     {"order": int, "factors": [int]}
// witness:             {"a": mumford, "ell": int, "mu": int, "c": point,
//                       "n": int, "trace": {"N","M","m","scanned"}}

Json poly_to_json(const Poly& f);
Poly poly_from_json(const Json& j, Field field);

Json element_to_json(const FieldElement& x);
FieldElement element_from_json(const Json& j);

Json curve_to_json(const HyperellipticCurve& curve);
CurveHandle curve_from_json(const Json& j, bool allow_genus_one = false);

Json point_to_json(const CurvePoint& pt);
CurvePoint point_from_json(const Json& j, std::uint64_t p);

Json mumford_to_json(const MumfordDivisor& a);
MumfordDivisor mumford_from_json(const Json& j, CurveHandle curve);

Json structure_to_json(const GroupStructure& s);

Json witness_to_json(const Witness& w);

Json torus_curve_to_json(const ParametricCurve& curve);
ParametricCurve torus_curve_from_json(const Json& j);
Json torus_point_to_json(const TorusPoint& t);
Json torus_witness_to_json(const TorusWitness& w);

Json sieve_report_to_json(const PiSet& pi, const Fraction& density);
Json surjectivity_report_to_json(const SurjectivityReport& report);

Json kummer_point_to_json(const KummerPoint& y);
Json kummer_witness_to_json(const KummerWitness& w);

Json verify_all_report_to_json(const VerifyAllReport& report);

/// BigInt as a JSON number when it fits an unsigned 64-bit value, otherwise a
/// decimal string.
Json bigint_to_json(const BigInt& n);

}  // namespace orbitw
