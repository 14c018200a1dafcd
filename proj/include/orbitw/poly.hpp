#pragma once

#include <vector>

#include "orbitw/fields.hpp"
#include "orbitw/rng.hpp"

namespace orbitw {

/// Dense univariate polynomial over an ExtField. No trailing zeros are
/// stored; the zero polynomial has degree -1 (standing in for -infinity).
class Poly {
public:
    explicit Poly(Field f) : field_(f) {}
    static Poly zero(Field f) { return Poly(f); }
    static Poly one(Field f);
    static Poly x(Field f);
    static Poly from_coeffs(Field f, std::vector<FieldElement> coeffs);
    /// Coefficients given by canonical element values, little-endian.
    static Poly from_values(Field f, const std::vector<std::uint64_t>& values);
    static Poly constant(const FieldElement& c);

    Field field() const { return field_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const;
    bool is_monic() const;
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    /// Coefficient of x^i (zero beyond the degree).
    FieldElement coeff(std::size_t i) const;
    const FieldElement& leading() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& rhs) { return *this = *this + rhs; }
    Poly& operator-=(const Poly& rhs) { return *this = *this - rhs; }
    Poly& operator*=(const Poly& rhs) { return *this = *this * rhs; }
    bool operator==(const Poly& rhs) const;
    bool operator!=(const Poly& rhs) const { return !(*this == rhs); }

    Poly monic() const;
    Poly scaled(const FieldElement& c) const;
    /// Multiply by x^k.
    Poly shifted(unsigned k) const;
    FieldElement operator()(const FieldElement& at) const;

    /// Key for the canonical polynomial order: (degree, then coefficient
    /// values from the leading term down). Mirrors base-p digit order.
    std::vector<std::uint64_t> order_key() const;

private:
    void prune();

    Field field_;
    std::vector<FieldElement> coeffs_;
};

struct PolyDivMod {
    Poly quotient;
    Poly remainder;
};
PolyDivMod poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
/// Exact division; throws VerificationFailed on a nonzero remainder.
Poly poly_div_exact(const Poly& a, const Poly& b);

/// Monic gcd; gcd(f, 0) is the monic scaling of f.
Poly poly_gcd(const Poly& a, const Poly& b);

struct PolyXgcd {
    Poly g;  // monic gcd
    Poly s;
    Poly t;  // g = s*a + t*b
};
PolyXgcd poly_xgcd(const Poly& a, const Poly& b);

Poly poly_derivative(const Poly& f);

/// base^e mod m (e may be huge).
Poly poly_powmod(const Poly& base, const BigInt& e, const Poly& m);

/// gcd(f, f') = 1.
bool is_squarefree(const Poly& f);

/// Rabin's deterministic irreducibility test. Degree >= 1 required.
bool is_irreducible(const Poly& f);

struct PolyFactor {
    Poly factor;  // monic irreducible
    unsigned multiplicity;
};

/// Monic irreducible factors with multiplicities; the product times the
/// leading coefficient recombines to f. Distinct-degree splitting first,
/// then randomized equal-degree splitting fed from rng. The returned list is
/// sorted canonically, so the output does not depend on the random draws.
std::vector<PolyFactor> poly_factor(const Poly& f, Rng& rng);

/// All roots of f in its coefficient field, sorted by element value.
std::vector<FieldElement> poly_roots(const Poly& f, Rng& rng);

}  // namespace orbitw
