#pragma once

#include "orbitw/curve.hpp"

namespace orbitw::indep {

/// Self-contained divisor arithmetic used only to re-verify search results.
/// Deliberately written apart from jacobian.cpp: it shares field and raw
/// polynomial arithmetic with the rest of the library and nothing else, so a
/// bug in the main group law cannot vouch for itself.
struct Divisor {
    Poly u;
    Poly v;
};

Divisor identity(Field stage);
Divisor from_point(const CurvePoint& c);
Divisor negate(const Divisor& a);
Divisor add(const Divisor& a, const Divisor& b, const Poly& f, unsigned genus);
Divisor scalar(const BigInt& k, const Divisor& a, const Poly& f, unsigned genus);
bool equal(const Divisor& a, const Divisor& b);

/// Lift a divisor given over F_{p^m} into the stage field coefficient-wise.
Divisor lift(const Divisor& a, Field stage);

/// mu = 1 (mod ell) and mu * [(c) - (inf)] equals a lifted to c's field.
bool verify_witness(const HyperellipticCurve& curve, const Poly& a_u, const Poly& a_v,
                    std::uint64_t ell, const BigInt& mu, const CurvePoint& c);

/// Sum of the Frobenius images of a over F_{p^m} (the trace to the base).
Divisor trace_to_base(const Divisor& a, unsigned base_degree, const Poly& f, unsigned genus);

/// ell-primary projection computed from scratch: multiplier M * (M^-1 mod
/// ell^k) for |G| = ell^k * M, applied with the independent ladder.
Divisor project_ell(const Divisor& a, std::uint64_t ell, const BigInt& group_order, const Poly& f,
                    unsigned genus);

}  // namespace orbitw::indep
