#pragma once

#include <functional>
#include <memory>
#include <string>

#include "orbitw/poly.hpp"

namespace orbitw {

/// Odd-degree hyperelliptic model y^2 = f(x) over F_p, f monic squarefree of
/// degree 2g+1. The smooth projective curve is this affine part plus the one
/// rational Weierstrass point at infinity.
struct HyperellipticCurve {
    std::uint64_t p;
    Poly f;  // over F_p
    unsigned genus;
    std::string label;

    HyperellipticCurve(std::uint64_t p_, Poly f_, unsigned genus_, std::string label_)
        : p(p_), f(std::move(f_)), genus(genus_), label(std::move(label_)) {}
    Field base_field() const { return f.field(); }
    bool same_curve(const HyperellipticCurve& other) const;
};

using CurveHandle = std::shared_ptr<const HyperellipticCurve>;

/// Validates the model and computes the genus. Rejects even degree,
/// non-squarefree f, and genus < 2 (genus 1 allowed only with the self-test
/// flag).
CurveHandle curve_validate(std::uint64_t p, const Poly& f, bool allow_genus_one = false,
                           const std::string& label = "");
CurveHandle curve_validate_values(std::uint64_t p, const std::vector<std::uint64_t>& f_values,
                                  bool allow_genus_one = false, const std::string& label = "");

/// Point of C(F_{p^n}): infinity or an affine pair satisfying y^2 = f(x).
class CurvePoint {
public:
    static CurvePoint infinity(Field f);
    static CurvePoint affine(FieldElement x, FieldElement y);

    bool is_infinity() const { return infinity_; }
    const FieldElement& x() const;
    const FieldElement& y() const;
    Field parent() const { return field_; }

    bool operator==(const CurvePoint& rhs) const;
    bool operator!=(const CurvePoint& rhs) const { return !(*this == rhs); }

private:
    CurvePoint(Field f, bool inf, FieldElement x, FieldElement y)
        : field_(f), infinity_(inf), x_(std::move(x)), y_(std::move(y)) {}

    Field field_;
    bool infinity_;
    FieldElement x_, y_;
};

/// Lazy enumeration of C(F_{p^n}) in canonical order: infinity first, then
/// affine points by (x, y) element value.
class PointStream {
public:
    PointStream(CurveHandle curve, unsigned n, const Caps& caps = {});
    std::optional<CurvePoint> next();
    Field stage_field() const { return field_; }

private:
    CurveHandle curve_;
    Field field_;
    Poly f_lifted_;
    std::uint64_t next_x_ = 0;
    bool emitted_infinity_ = false;
    std::optional<CurvePoint> pending_;
};

/// Full materialization (canonical order), with the quadratic-character count
/// as an internal cross-check. Budgeted by caps.max_group.
std::vector<CurvePoint> points_over(CurveHandle curve, unsigned n, const Caps& caps = {});

/// #C(F_{p^n}) by exhaustive scan.
std::uint64_t count_points(CurveHandle curve, unsigned n, const Caps& caps = {});

/// The curve polynomial with coefficients lifted to F_{p^n}.
Poly lift_curve_poly(const HyperellipticCurve& curve, Field stage);

bool on_curve(const HyperellipticCurve& curve, const CurvePoint& pt);

/// Hyperelliptic involution (x, y) -> (x, -y); fixes infinity.
CurvePoint involute(const CurvePoint& pt);

/// Coordinate-wise Frobenius over F_{p^m}.
CurvePoint frobenius_point(const CurvePoint& pt, unsigned base_degree);

/// Size of the Frobenius orbit over F_{p^m}; the degree of the least field of
/// definition of the point over that base.
unsigned point_degree(const CurvePoint& pt, unsigned base_degree = 1);

/// The ordered orbit [c, Fr(c), Fr^2(c), ...] of length point_degree(c).
std::vector<CurvePoint> frobenius_orbit(const CurvePoint& pt, unsigned base_degree = 1);

/// Hasse-Weil window [q + 1 - 2g sqrt(q), q + 1 + 2g sqrt(q)] check, used as
/// a sanity test on point counts.
bool in_hasse_weil_window(std::uint64_t count, std::uint64_t q, unsigned genus);

}  // namespace orbitw
