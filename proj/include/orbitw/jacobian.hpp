#pragma once

#include "orbitw/curve.hpp"

namespace orbitw {

/// Reduced Mumford representative (u, v) of a divisor class over F_{p^n}:
/// u monic with deg u <= g, deg v < deg u, u | v^2 - f. The reduced pair is
/// the unique representative, so class equality is structural equality.
class MumfordDivisor {
public:
    static MumfordDivisor identity(CurveHandle curve, unsigned n);
    /// Validates the Mumford invariants.
    static MumfordDivisor make(CurveHandle curve, Poly u, Poly v);

    const CurveHandle& curve() const { return curve_; }
    const Poly& u() const { return u_; }
    const Poly& v() const { return v_; }
    Field stage_field() const { return u_.field(); }
    unsigned stage_degree() const { return u_.field()->degree(); }
    bool is_identity() const { return u_.degree() == 0; }

    bool operator==(const MumfordDivisor& rhs) const;
    bool operator!=(const MumfordDivisor& rhs) const { return !(*this == rhs); }
    /// Canonical ordering key: (deg u, u coefficients leading-first, v padded
    /// likewise). Total order on each stage group.
    std::vector<std::uint64_t> order_key() const;

private:
    MumfordDivisor(CurveHandle curve, Poly u, Poly v)
        : curve_(std::move(curve)), u_(std::move(u)), v_(std::move(v)) {}

    CurveHandle curve_;
    Poly u_;
    Poly v_;
};

/// Class of (c) - (infinity); infinity maps to the identity.
MumfordDivisor embed_point(const CurvePoint& c, CurveHandle curve);

/// Cantor composition + reduction.
MumfordDivisor jac_add(const MumfordDivisor& a, const MumfordDivisor& b);
MumfordDivisor jac_neg(const MumfordDivisor& a);
MumfordDivisor jac_sub(const MumfordDivisor& a, const MumfordDivisor& b);
MumfordDivisor jac_scalar(const BigInt& m, const MumfordDivisor& a);

/// Coefficient-wise embedding into the stage of degree n_target (a multiple
/// of the current stage degree).
MumfordDivisor divisor_embed(const MumfordDivisor& a, unsigned n_target);

/// Coefficient-wise Frobenius over F_{p^m}; a group homomorphism.
MumfordDivisor frobenius_on_class(const MumfordDivisor& a, unsigned base_degree);

/// Coefficient-wise restriction to F_{p^m}; requires the class to be fixed by
/// frobenius_on_class(., m).
MumfordDivisor restrict_class(const MumfordDivisor& a, unsigned base_degree);

/// All reduced pairs over F_{p^n} in canonical order. Throws CapExceeded when
/// the group order is beyond caps.max_group.
std::vector<MumfordDivisor> enumerate_group(CurveHandle curve, unsigned n, const Caps& caps = {});

/// |J(F_{p^(m*n)})| computed exactly from the characteristic polynomial of
/// Frobenius over F_{p^m} (itself derived from exhaustive curve counts at
/// degrees m, 2m, ..., g*m).
BigInt order_at_stage(CurveHandle curve, unsigned base_degree, unsigned rel_degree, const Caps& caps = {});

/// Characteristic polynomial of Frobenius over F_{p^m}: monic, degree 2g,
/// integer coefficients, little-endian constant last (returned leading-first).
std::vector<BigInt> frobenius_charpoly(CurveHandle curve, unsigned base_degree, const Caps& caps = {});

/// Least N >= 1 with N*a = identity; divides the stage group order.
BigInt element_order(const MumfordDivisor& a, const Caps& caps = {});
BigInt element_order(const MumfordDivisor& a, const BigInt& group_order);

/// Projection onto the ell-Sylow component: a -> (M * (M^-1 mod ell^k)) * a
/// where |J| = ell^k * M with gcd(ell, M) = 1. Idempotent homomorphism.
MumfordDivisor ell_primary_projection(const MumfordDivisor& a, std::uint64_t ell, const Caps& caps = {});

struct GroupStructure {
    BigInt order;
    std::vector<BigInt> invariant_factors;  // d_1 | d_2 | ... | d_r
    std::vector<MumfordDivisor> generators;  // generators[i] has order invariant_factors[i]
};

/// Invariant-factor decomposition with verified generators. Generator orders
/// are re-checked by jac_scalar and independence by counting distinct
/// combinations.
GroupStructure group_structure(CurveHandle curve, unsigned n, const Caps& caps = {});

/// The subgroup of elements of ell-power order at the given stage, in
/// canonical order. Materialized by saturating projections of point classes.
std::vector<MumfordDivisor> sylow_subgroup(CurveHandle curve, unsigned n, std::uint64_t ell,
                                           const Caps& caps = {});

}  // namespace orbitw
