#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orbitw/bigint.hpp"
#include "orbitw/errors.hpp"

namespace orbitw {

/// Desk-scale resource limits. Operations that would blow past them throw
/// CapExceeded instead of thrashing.
struct Caps {
    unsigned max_degree = 24;       // extension degree over F_p
    unsigned max_field_bits = 40;   // p^n <= 2^max_field_bits
    std::uint64_t max_group = 1000000;  // enumerable group / point-set size
};

/// Validated odd prime small enough for single-word arithmetic.
struct PrimeModulus {
    std::uint64_t p;
    explicit PrimeModulus(std::uint64_t prime);
};

class ExtField;

/// Fields are interned per (p, n) and live for the program's lifetime, so a
/// raw pointer is a stable identity: two elements share a parent iff their
/// Field pointers compare equal.
using Field = const ExtField*;

/// F_{p^n} = F_p[x]/(modulus), modulus the canonical irreducible for (p, n):
/// the first monic irreducible in base-p digit order (constant term fastest).
class ExtField {
public:
    std::uint64_t p() const { return p_; }
    unsigned degree() const { return n_; }
    std::uint64_t size() const { return q_; }
    /// Monic modulus, little-endian, length degree()+1.
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }

    ExtField(const ExtField&) = delete;
    ExtField& operator=(const ExtField&) = delete;

private:
    ExtField(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus);
    friend Field ext_construct(std::uint64_t, unsigned, const Caps&);
    friend class FieldElement;
    friend struct FieldInternals;

    std::uint64_t p_;
    unsigned n_;
    std::uint64_t q_;
    std::vector<std::uint64_t> modulus_;
};

/// The field with the canonical modulus for (p, n). Cached; repeated calls
/// return the same pointer.
Field ext_construct(std::uint64_t p, unsigned n, const Caps& caps = {});

/// Element of F_{p^n}: residues little-endian, always exactly n coefficients.
class FieldElement {
public:
    static FieldElement zero(Field f);
    static FieldElement one(Field f);
    /// Constant c in [0, p).
    static FieldElement constant(Field f, std::uint64_t c);
    /// Decode sum c_i p^i (the canonical enumeration order of the field).
    static FieldElement from_value(Field f, std::uint64_t v);
    static FieldElement from_coeffs(Field f, std::vector<std::uint64_t> coeffs);

    Field parent() const { return field_; }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    bool is_zero() const;
    bool is_one() const;
    /// Encode as sum c_i p^i; total order on the field used everywhere a
    /// canonical scan/choice is required.
    std::uint64_t value() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);
    FieldElement& operator/=(const FieldElement& rhs);
    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;
    FieldElement pow(const BigInt& e) const;

private:
    FieldElement(Field f, std::vector<std::uint64_t> coeffs) : field_(f), coeffs_(std::move(coeffs)) {}

    Field field_;
    std::vector<std::uint64_t> coeffs_;
};

/// x^(p^m), the generator of Gal(F_{p^n}/F_{p^m}) applied to x. m must divide n.
FieldElement frobenius(const FieldElement& x, unsigned base_degree);

/// x^((p^n-1)/(p^m-1)) returned as an element of F_{p^m}; equals the product
/// of the n/m Frobenius conjugates. x must be nonzero, m | n.
FieldElement norm_to_base(const FieldElement& x, unsigned base_degree);

/// Ring-homomorphic embedding F_{p^m} -> target of degree n, m | n. The image
/// of the generator of F_{p^m} is the least root (canonical element order) of
/// its minimal polynomial in the target.
FieldElement embed(const FieldElement& x, Field target);

/// Partial inverse of embed: x must be fixed by frobenius(., m).
FieldElement restrict_to(const FieldElement& x, unsigned base_degree);

/// True iff x lies in the embedded copy of F_{p^m}.
bool in_subfield(const FieldElement& x, unsigned base_degree);

/// Canonical square root (the smaller of the two by element order), if any.
/// sqrt(0) = 0.
std::optional<FieldElement> field_sqrt(const FieldElement& x);

/// Least e >= 1 with x^e = 1. x must be nonzero.
std::uint64_t multiplicative_order(const FieldElement& x);

/// Same for an integer residue x mod prime p, x != 0 mod p.
std::uint64_t multiplicative_order_mod(std::uint64_t x, std::uint64_t p);

}  // namespace orbitw
