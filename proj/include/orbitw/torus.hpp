#pragma once

#include <optional>

#include "orbitw/poly.hpp"

namespace orbitw {

/// Rational map component f_i = num_i / den_i over F_p.
struct RationalMap {
    Poly num;
    Poly den;
};

/// Parametrized curve inside the split torus G_m^d: tau -> (f_1(tau), ...,
/// f_d(tau)), defined away from the zeros of every numerator and denominator.
struct ParametricCurve {
    std::uint64_t p;
    unsigned d;
    std::vector<RationalMap> maps;
};

ParametricCurve torus_curve_validate(std::uint64_t p, std::vector<RationalMap> maps);

/// Point of (F_{p^n}^*)^d.
struct TorusPoint {
    std::vector<FieldElement> coords;

    Field parent() const { return coords.front().parent(); }
    bool operator==(const TorusPoint& rhs) const { return coords == rhs.coords; }
    std::vector<std::uint64_t> value_key() const;
};

/// Admitted parameter values in canonical order, mapped into the torus.
std::vector<TorusPoint> curve_points_torus(const ParametricCurve& curve, unsigned n,
                                           const Caps& caps = {});

/// Component-wise E-th power, E = (p^n-1)/(p^m-1); the product of the
/// Frobenius conjugates. Lands in the degree-m stage.
TorusPoint norm_power(const TorusPoint& c, unsigned base_degree);

struct GenerationResult {
    bool generates;
    BigInt subgroup_order;
};

/// Order of the subgroup of (F_{p^n}^*)^d generated by the curve points,
/// computed exactly via discrete logarithms and a lattice index.
GenerationResult generation_check(const ParametricCurve& curve, unsigned n, const Caps& caps = {});

struct TorusWitness {
    TorusPoint t;
    TorusPoint c;
    unsigned n;
    std::uint64_t exponent;  // E = (p^n-1)/(p-1)
};

struct TorusStageReport {
    unsigned n;
    std::optional<GenerationResult> generation;  // absent when past the probe cap
};

struct TorusSweepReport {
    std::vector<TorusStageReport> stages;
    std::vector<TorusWitness> witnesses;          // one per covered target
    std::vector<TorusPoint> missed;               // targets with no witness
    bool generation_passed = false;
    unsigned generation_stage = 0;
    bool complete() const { return missed.empty(); }
};

/// Smallest n <= n_max and first admitted parameter in canonical order with
/// component-wise c^E = t. Requires the generation hypothesis to hold at some
/// probed stage; refuses with HypothesisFailed otherwise.
TorusWitness torus_witness(const TorusPoint& t, const ParametricCurve& curve, unsigned n_max,
                           const Caps& caps = {});

/// All targets of (F_p^*)^d at once (same per-target result as repeated
/// torus_witness calls).
TorusSweepReport torus_sweep(const ParametricCurve& curve, unsigned n_max, const Caps& caps = {});

/// Coverage of (F_p^*)^d by norms from exactly stage n: target -> first c.
std::vector<std::optional<TorusPoint>> stage_coverage(const ParametricCurve& curve, unsigned n,
                                                      const Caps& caps = {});

}  // namespace orbitw
