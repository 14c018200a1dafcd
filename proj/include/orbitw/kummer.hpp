#pragma once

#include "orbitw/witness.hpp"

namespace orbitw {

/// Unordered pair {a, -a}, stored by the canonically smaller representative.
/// Smooth iff a is not 2-torsion (the fixed locus of negation).
struct KummerPoint {
    MumfordDivisor rep;
    bool smooth;

    bool operator==(const KummerPoint& rhs) const { return rep == rhs.rep; }
};

KummerPoint kummer_quotient(const MumfordDivisor& a);

struct KummerWitness {
    KummerPoint y;
    BigInt mu;
    CurvePoint c;
    unsigned n;  // relative degree of c's field over the base
};

/// Lifts y to a class, finds a = mu * [c] with mu = 1 (mod ell), and checks
/// that mu * [c] descends into {a, -a}: y lies on the image of mu * C under
/// the quotient. y must be smooth.
KummerWitness rational_curve_witness(const KummerPoint& y, WitnessEngine& engine, std::uint64_t ell = 1);

struct KummerSweepReport {
    std::vector<KummerWitness> witnesses;   // one per smooth point, canonical order
    std::uint64_t smooth_count = 0;
    std::uint64_t non_smooth_count = 0;     // = |J[2]| at the stage
    std::vector<KummerPoint> missed;
    bool complete() const { return missed.empty(); }
};

/// Witness sweep over every smooth Kummer point at the engine's base stage.
KummerSweepReport kummer_sweep(WitnessEngine& engine, std::uint64_t ell = 1);

}  // namespace orbitw
