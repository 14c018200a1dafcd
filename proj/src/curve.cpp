#include "orbitw/curve.hpp"

#include <cmath>

namespace orbitw {

bool HyperellipticCurve::same_curve(const HyperellipticCurve& other) const {
    return p == other.p && f == other.f;
}

CurveHandle curve_validate(std::uint64_t p, const Poly& f, bool allow_genus_one, const std::string& label) {
    PrimeModulus pm(p);
    Field base = ext_construct(p, 1);
    if (f.field() != base) throw Error(ErrorCode::MismatchedParents, "curve polynomial must live over F_p");
    const int deg = f.degree();
    if (deg < 0 || deg % 2 == 0) throw Error(ErrorCode::EvenDegreeModel, "deg f must be odd");
    if (!f.is_monic()) throw Error(ErrorCode::MalformedInput, "f must be monic");
    const unsigned genus = static_cast<unsigned>(deg - 1) / 2;
    if (genus < (allow_genus_one ? 1u : 2u))
        throw Error(ErrorCode::GenusTooSmall, "genus below the supported minimum");
    if (!is_squarefree(f)) throw Error(ErrorCode::NotSquarefree, "f has a repeated factor");
    return std::make_shared<HyperellipticCurve>(p, f, genus, label);
}

CurveHandle curve_validate_values(std::uint64_t p, const std::vector<std::uint64_t>& f_values,
                                  bool allow_genus_one, const std::string& label) {
    PrimeModulus pm(p);
    return curve_validate(p, Poly::from_values(ext_construct(p, 1), f_values), allow_genus_one, label);
}

CurvePoint CurvePoint::infinity(Field f) {
    return CurvePoint(f, true, FieldElement::zero(f), FieldElement::zero(f));
}

CurvePoint CurvePoint::affine(FieldElement x, FieldElement y) {
    if (x.parent() != y.parent()) throw Error(ErrorCode::MismatchedParents, "point coordinates from different fields");
    Field f = x.parent();
    return CurvePoint(f, false, std::move(x), std::move(y));
}

const FieldElement& CurvePoint::x() const {
    if (infinity_) throw Error(ErrorCode::MalformedInput, "infinity has no affine coordinates");
    return x_;
}

const FieldElement& CurvePoint::y() const {
    if (infinity_) throw Error(ErrorCode::MalformedInput, "infinity has no affine coordinates");
    return y_;
}

bool CurvePoint::operator==(const CurvePoint& rhs) const {
    if (field_ != rhs.field_ || infinity_ != rhs.infinity_) return false;
    return infinity_ || (x_ == rhs.x_ && y_ == rhs.y_);
}

Poly lift_curve_poly(const HyperellipticCurve& curve, Field stage) {
    if (stage->p() != curve.p) throw Error(ErrorCode::MismatchedParents, "stage field over a different prime");
    std::vector<FieldElement> coeffs;
    coeffs.reserve(static_cast<std::size_t>(curve.f.degree()) + 1);
    for (const auto& c : curve.f.coeffs()) coeffs.push_back(FieldElement::constant(stage, c.coeffs()[0]));
    return Poly::from_coeffs(stage, std::move(coeffs));
}

bool on_curve(const HyperellipticCurve& curve, const CurvePoint& pt) {
    if (pt.is_infinity()) return true;
    Poly f = lift_curve_poly(curve, pt.parent());
    return pt.y() * pt.y() == f(pt.x());
}

PointStream::PointStream(CurveHandle curve, unsigned n, const Caps& caps)
    : curve_(std::move(curve)), field_(ext_construct(curve_->p, n, caps)), f_lifted_(lift_curve_poly(*curve_, field_)) {}

std::optional<CurvePoint> PointStream::next() {
    if (!emitted_infinity_) {
        emitted_infinity_ = true;
        return CurvePoint::infinity(field_);
    }
    if (pending_) {
        CurvePoint out = *pending_;
        pending_.reset();
        return out;
    }
    while (next_x_ < field_->size()) {
        FieldElement x = FieldElement::from_value(field_, next_x_);
        ++next_x_;
        FieldElement s = f_lifted_(x);
        if (s.is_zero()) return CurvePoint::affine(x, s);
        std::optional<FieldElement> r = field_sqrt(s);
        if (!r) continue;
        FieldElement other = -*r;
        // canonical order: smaller y first
        if (r->value() > other.value()) std::swap(*r, other);
        pending_ = CurvePoint::affine(x, other);
        return CurvePoint::affine(x, *r);
    }
    return std::nullopt;
}

std::vector<CurvePoint> points_over(CurveHandle curve, unsigned n, const Caps& caps) {
    Field stage = ext_construct(curve->p, n, caps);
    if (2 * stage->size() + 1 > caps.max_group)
        throw Error(ErrorCode::CapExceeded, "point enumeration exceeds the group budget");
    std::vector<CurvePoint> out;
    PointStream stream(curve, n, caps);
    while (auto pt = stream.next()) out.push_back(*pt);

    // cross-check the count against the quadratic-character sum
    Poly f = lift_curve_poly(*curve, stage);
    const std::uint64_t q = stage->size();
    std::uint64_t expected = 1;
    for (std::uint64_t v = 0; v < q; ++v) {
        FieldElement s = f(FieldElement::from_value(stage, v));
        if (s.is_zero())
            expected += 1;
        else if (s.pow((q - 1) / 2).is_one())
            expected += 2;
    }
    if (expected != out.size())
        throw Error(ErrorCode::VerificationFailed, "point count disagrees with the character sum");
    return out;
}

std::uint64_t count_points(CurveHandle curve, unsigned n, const Caps& caps) {
    Field stage = ext_construct(curve->p, n, caps);
    Poly f = lift_curve_poly(*curve, stage);
    const std::uint64_t q = stage->size();
    std::uint64_t count = 1;
    for (std::uint64_t v = 0; v < q; ++v) {
        FieldElement s = f(FieldElement::from_value(stage, v));
        if (s.is_zero())
            count += 1;
        else if (s.pow((q - 1) / 2).is_one())
            count += 2;
    }
    return count;
}

CurvePoint involute(const CurvePoint& pt) {
    if (pt.is_infinity()) return pt;
    return CurvePoint::affine(pt.x(), -pt.y());
}

CurvePoint frobenius_point(const CurvePoint& pt, unsigned base_degree) {
    if (pt.is_infinity()) return pt;
    return CurvePoint::affine(frobenius(pt.x(), base_degree), frobenius(pt.y(), base_degree));
}

unsigned point_degree(const CurvePoint& pt, unsigned base_degree) {
    if (pt.is_infinity()) return 1;
    unsigned n = pt.parent()->degree();
    if (base_degree == 0 || n % base_degree != 0)
        throw Error(ErrorCode::NonDividingBaseDegree, "base degree must divide stage degree");
    CurvePoint cur = frobenius_point(pt, base_degree);
    unsigned d = 1;
    while (cur != pt) {
        cur = frobenius_point(cur, base_degree);
        ++d;
    }
    return d;
}

std::vector<CurvePoint> frobenius_orbit(const CurvePoint& pt, unsigned base_degree) {
    std::vector<CurvePoint> orbit{pt};
    if (pt.is_infinity()) return orbit;
    CurvePoint cur = frobenius_point(pt, base_degree);
    while (cur != pt) {
        orbit.push_back(cur);
        cur = frobenius_point(cur, base_degree);
    }
    return orbit;
}

bool in_hasse_weil_window(std::uint64_t count, std::uint64_t q, unsigned genus) {
    double sq = std::sqrt(static_cast<double>(q));
    double lo = static_cast<double>(q) + 1.0 - 2.0 * genus * sq;
    double hi = static_cast<double>(q) + 1.0 + 2.0 * genus * sq;
    return static_cast<double>(count) >= lo - 1e-9 && static_cast<double>(count) <= hi + 1e-9;
}

}  // namespace orbitw
