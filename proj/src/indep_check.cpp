#include "orbitw/indep_check.hpp"

namespace orbitw::indep {

namespace {

// plain recursive extended gcd, in contrast to the iterative loop in poly.cpp
struct Bezout {
    Poly g, s, t;
};

Bezout xgcd_rec(const Poly& a, const Poly& b) {
    Field k = a.field();
    if (b.is_zero()) {
        if (a.is_zero()) return {a, Poly::zero(k), Poly::zero(k)};
        FieldElement inv = a.leading().inverse();
        return {a.scaled(inv), Poly::constant(inv), Poly::zero(k)};
    }
    PolyDivMod dm = poly_divmod(a, b);
    Bezout sub = xgcd_rec(b, dm.remainder);
    // g = s*b + t*(a - q*b) = t*a + (s - q*t)*b
    return {sub.g, sub.t, sub.s - dm.quotient * sub.t};
}

}  // namespace

Divisor identity(Field stage) { return {Poly::one(stage), Poly::zero(stage)}; }

Divisor from_point(const CurvePoint& c) {
    Field stage = c.parent();
    if (c.is_infinity()) return identity(stage);
    Poly u = Poly::x(stage) - Poly::constant(c.x());
    return {u, Poly::constant(c.y())};
}

Divisor negate(const Divisor& a) { return {a.u, -a.v}; }

Divisor add(const Divisor& a, const Divisor& b, const Poly& f, unsigned genus) {
    // composition
    Bezout inner = xgcd_rec(a.u, b.u);
    Bezout outer = xgcd_rec(inner.g, a.v + b.v);
    Poly d = outer.g;
    Poly h1 = outer.s * inner.s;  // d = h1 a.u + h2 b.u + h3 (a.v + b.v)
    Poly h2 = outer.s * inner.t;
    Poly h3 = outer.t;

    Poly u = poly_div_exact(a.u * b.u, d * d);
    Poly numerator = h1 * a.u * b.v + h2 * b.u * a.v + h3 * (a.v * b.v + f);
    Poly v = poly_mod(poly_div_exact(numerator, d), u);

    // reduction, written as a do-while on the degree bound
    while (u.degree() > static_cast<int>(genus)) {
        u = poly_div_exact(f - v * v, u);
        v = poly_mod(-v, u);
        u = u.monic();
        v = poly_mod(v, u);
    }
    return {u.monic(), v};
}

Divisor scalar(const BigInt& k, const Divisor& a, const Poly& f, unsigned genus) {
    if (k < 0) return scalar(-k, negate(a), f, genus);
    // left-to-right binary ladder (the main implementation walks right-to-left)
    Divisor acc = identity(a.u.field());
    if (k == 0) return acc;
    unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(k)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        acc = add(acc, acc, f, genus);
        if (boost::multiprecision::bit_test(k, i)) acc = add(acc, a, f, genus);
    }
    return acc;
}

bool equal(const Divisor& a, const Divisor& b) { return a.u == b.u && a.v == b.v; }

Divisor lift(const Divisor& a, Field stage) {
    auto lift_poly = [&](const Poly& src) {
        std::vector<FieldElement> out;
        out.reserve(src.coeffs().size());
        for (const auto& c : src.coeffs()) out.push_back(embed(c, stage));
        return Poly::from_coeffs(stage, std::move(out));
    };
    return {lift_poly(a.u), lift_poly(a.v)};
}

bool verify_witness(const HyperellipticCurve& curve, const Poly& a_u, const Poly& a_v,
                    std::uint64_t ell, const BigInt& mu, const CurvePoint& c) {
    if (ell >= 1 && mu % ell != 1 % BigInt(ell)) return false;
    Field stage = c.parent();
    Poly f = lift_curve_poly(curve, stage);
    Divisor target = lift({a_u, a_v}, stage);
    Divisor got = scalar(mu, from_point(c), f, curve.genus);
    return equal(got, target);
}

Divisor trace_to_base(const Divisor& a, unsigned base_degree, const Poly& f, unsigned genus) {
    Field stage = a.u.field();
    if (base_degree == 0 || stage->degree() % base_degree != 0)
        throw Error(ErrorCode::NonDividingBaseDegree, "base degree must divide stage degree");
    auto frob_poly = [&](const Poly& src) {
        std::vector<FieldElement> out;
        out.reserve(src.coeffs().size());
        for (const auto& coeff : src.coeffs()) out.push_back(frobenius(coeff, base_degree));
        return Poly::from_coeffs(stage, std::move(out));
    };
    Divisor acc = a;
    Divisor conj = a;
    const unsigned steps = stage->degree() / base_degree;
    for (unsigned j = 1; j < steps; ++j) {
        conj = {frob_poly(conj.u), frob_poly(conj.v)};
        acc = add(acc, conj, f, genus);
    }
    return acc;
}

Divisor project_ell(const Divisor& a, std::uint64_t ell, const BigInt& group_order, const Poly& f,
                    unsigned genus) {
    BigInt ell_part = 1, cofactor = group_order;
    while (cofactor % ell == 0) {
        cofactor /= ell;
        ell_part *= ell;
    }
    if (ell_part == 1) return identity(a.u.field());
    // fresh extended Euclid over the integers for the inverse
    BigInt r0 = ell_part, r1 = cofactor % ell_part, t0 = 0, t1 = 1;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw Error(ErrorCode::NotCoprime, "cofactor shares a factor with the ell-part");
    BigInt inv = t0 % ell_part;
    if (inv < 0) inv += ell_part;
    return scalar(cofactor * inv, a, f, genus);
}

}  // namespace orbitw::indep
