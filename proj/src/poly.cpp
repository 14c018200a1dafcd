#include "orbitw/poly.hpp"

#include <algorithm>

namespace orbitw {

Poly Poly::one(Field f) { return constant(FieldElement::one(f)); }

Poly Poly::x(Field f) {
    Poly r(f);
    r.coeffs_ = {FieldElement::zero(f), FieldElement::one(f)};
    return r;
}

Poly Poly::from_coeffs(Field f, std::vector<FieldElement> coeffs) {
    for (const auto& c : coeffs)
        if (c.parent() != f) throw Error(ErrorCode::MismatchedParents, "coefficient from a different field");
    Poly r(f);
    r.coeffs_ = std::move(coeffs);
    r.prune();
    return r;
}

Poly Poly::from_values(Field f, const std::vector<std::uint64_t>& values) {
    std::vector<FieldElement> coeffs;
    coeffs.reserve(values.size());
    for (std::uint64_t v : values) coeffs.push_back(FieldElement::from_value(f, v));
    return from_coeffs(f, std::move(coeffs));
}

Poly Poly::constant(const FieldElement& c) {
    Poly r(c.parent());
    if (!c.is_zero()) r.coeffs_ = {c};
    return r;
}

bool Poly::is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back().is_one(); }

FieldElement Poly::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : FieldElement::zero(field_);
}

const FieldElement& Poly::leading() const {
    if (coeffs_.empty()) throw Error(ErrorCode::ZeroInput, "leading coefficient of zero polynomial");
    return coeffs_.back();
}

void Poly::prune() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::operator-() const {
    Poly r(field_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.field_ != b.field_) throw Error(ErrorCode::MismatchedParents, "polynomials over different fields");
    Poly r(a.field_);
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    r.coeffs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        FieldElement c = a.coeff(i);
        c += b.coeff(i);
        r.coeffs_.push_back(std::move(c));
    }
    r.prune();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.field_ != b.field_) throw Error(ErrorCode::MismatchedParents, "polynomials over different fields");
    Poly r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElement::zero(a.field_));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    r.prune();
    return r;
}

bool Poly::operator==(const Poly& rhs) const { return field_ == rhs.field_ && coeffs_ == rhs.coeffs_; }

Poly Poly::monic() const {
    if (is_zero() || leading().is_one()) return *this;
    return scaled(leading().inverse());
}

Poly Poly::scaled(const FieldElement& c) const {
    Poly r(field_);
    if (c.is_zero()) return r;
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& a : coeffs_) r.coeffs_.push_back(a * c);
    r.prune();
    return r;
}

Poly Poly::shifted(unsigned k) const {
    if (is_zero() || k == 0) return *this;
    Poly r(field_);
    r.coeffs_.assign(k, FieldElement::zero(field_));
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

FieldElement Poly::operator()(const FieldElement& at) const {
    FieldElement acc = FieldElement::zero(field_);
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc *= at;
        acc += coeffs_[i];
    }
    return acc;
}

std::vector<std::uint64_t> Poly::order_key() const {
    std::vector<std::uint64_t> key;
    key.reserve(coeffs_.size() + 1);
    key.push_back(coeffs_.size());
    for (std::size_t i = coeffs_.size(); i-- > 0;) key.push_back(coeffs_[i].value());
    return key;
}

PolyDivMod poly_divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    Field f = a.field();
    if (f != b.field()) throw Error(ErrorCode::MismatchedParents, "polynomials over different fields");
    if (a.degree() < b.degree()) return {Poly::zero(f), a};
    std::vector<FieldElement> rem(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    std::vector<FieldElement> quot(a.degree() - db + 1, FieldElement::zero(f));
    FieldElement lead_inv = b.leading().inverse();
    for (int i = a.degree(); i >= db; --i) {
        FieldElement c = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (c.is_zero()) continue;
        quot[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    return {Poly::from_coeffs(f, std::move(quot)), Poly::from_coeffs(f, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).remainder; }

Poly poly_div_exact(const Poly& a, const Poly& b) {
    PolyDivMod dm = poly_divmod(a, b);
    if (!dm.remainder.is_zero()) throw Error(ErrorCode::VerificationFailed, "division expected to be exact");
    return dm.quotient;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    while (!r1.is_zero()) {
        Poly r2 = poly_mod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
    }
    return r0.monic();
}

PolyXgcd poly_xgcd(const Poly& a, const Poly& b) {
    Field f = a.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::one(f), s1 = Poly::zero(f);
    Poly t0 = Poly::zero(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        PolyDivMod dm = poly_divmod(r0, r1);
        Poly r2 = dm.remainder;
        Poly s2 = s0 - dm.quotient * s1;
        Poly t2 = t0 - dm.quotient * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && !r0.leading().is_one()) {
        FieldElement inv = r0.leading().inverse();
        r0 = r0.scaled(inv);
        s0 = s0.scaled(inv);
        t0 = t0.scaled(inv);
    }
    return {r0, s0, t0};
}

Poly poly_derivative(const Poly& f) {
    Field k = f.field();
    if (f.degree() <= 0) return Poly::zero(k);
    std::vector<FieldElement> out;
    out.reserve(static_cast<std::size_t>(f.degree()));
    for (int i = 1; i <= f.degree(); ++i) {
        FieldElement scalar = FieldElement::constant(k, static_cast<std::uint64_t>(i) % k->p());
        out.push_back(f.coeffs()[static_cast<std::size_t>(i)] * scalar);
    }
    return Poly::from_coeffs(k, std::move(out));
}

Poly poly_powmod(const Poly& base, const BigInt& e, const Poly& m) {
    Poly acc = Poly::one(base.field());
    Poly b = poly_mod(base, m);
    BigInt r = e;
    while (r > 0) {
        if ((r & 1) != 0) acc = poly_mod(acc * b, m);
        b = poly_mod(b * b, m);
        r >>= 1;
    }
    return acc;
}

bool is_squarefree(const Poly& f) { return poly_gcd(f, poly_derivative(f)).is_one(); }

bool is_irreducible(const Poly& f) {
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    Field k = f.field();
    const BigInt q = k->size();
    Poly x = Poly::x(k);
    // Rabin: x^(q^n) = x mod f, and gcd(x^(q^(n/r)) - x, f) = 1 for prime r | n
    Poly xq = poly_powmod(x, big_pow(q, static_cast<unsigned>(n)), f);
    if (xq != poly_mod(x, f)) return false;
    for (auto& [r, e] : factorize(BigInt(n))) {
        unsigned sub = static_cast<unsigned>(n) / static_cast<unsigned>(r);
        Poly xs = poly_powmod(x, big_pow(q, sub), f);
        if (!poly_gcd(xs - x, f).is_one()) return false;
    }
    return true;
}

namespace {

// p-th root of a coefficient: a^(q/p) since a^q = a
FieldElement coeff_pth_root(const FieldElement& a) {
    Field k = a.parent();
    return a.pow(k->size() / k->p());
}

// squarefree decomposition in characteristic p (monic input)
void squarefree_decompose(const Poly& f, unsigned outer_mult, std::vector<std::pair<Poly, unsigned>>& out) {
    Field k = f.field();
    const std::uint64_t p = k->p();
    Poly d = poly_derivative(f);
    if (d.is_zero()) {
        // f = g(x^p)
        std::vector<FieldElement> g;
        for (int i = 0; i <= f.degree(); i += static_cast<int>(p))
            g.push_back(coeff_pth_root(f.coeffs()[static_cast<std::size_t>(i)]));
        squarefree_decompose(Poly::from_coeffs(k, std::move(g)), outer_mult * static_cast<unsigned>(p), out);
        return;
    }
    Poly c = poly_gcd(f, d);
    Poly w = poly_div_exact(f, c);
    unsigned i = 1;
    while (!w.is_one()) {
        Poly y = poly_gcd(w, c);
        Poly z = poly_div_exact(w, y);
        if (!z.is_one()) out.emplace_back(z, i * outer_mult);
        w = std::move(y);
        c = poly_div_exact(c, w);
        ++i;
    }
    if (!c.is_one()) squarefree_decompose(c, outer_mult, out);
}

// equal-degree splitting of a squarefree product of degree-d irreducibles
void edf(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
    Field k = f.field();
    if (f.degree() == static_cast<int>(d)) {
        out.push_back(f.monic());
        return;
    }
    const BigInt exponent = (big_pow(BigInt(k->size()), d) - 1) / 2;
    while (true) {
        std::vector<FieldElement> av;
        av.reserve(static_cast<std::size_t>(f.degree()));
        for (int i = 0; i < f.degree(); ++i)
            av.push_back(FieldElement::from_value(k, rng.below(k->size())));
        Poly a = Poly::from_coeffs(k, std::move(av));
        if (a.degree() < 1) continue;
        Poly g = poly_gcd(a, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(poly_div_exact(f, g).monic(), d, rng, out);
            return;
        }
        Poly w = poly_powmod(a, exponent, f) - Poly::one(k);
        g = poly_gcd(w, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf(g, d, rng, out);
            edf(poly_div_exact(f, g).monic(), d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<PolyFactor> poly_factor(const Poly& f, Rng& rng) {
    Field k = f.field();
    std::vector<PolyFactor> out;
    if (f.degree() < 1) return out;
    Poly work = f.monic();

    std::vector<std::pair<Poly, unsigned>> parts;
    squarefree_decompose(work, 1, parts);

    for (auto& [part, mult] : parts) {
        // distinct-degree splitting of the squarefree part
        Poly rest = part.monic();
        Poly x = Poly::x(k);
        Poly h = poly_mod(x, rest);
        unsigned d = 0;
        while (rest.degree() > 0 && 2 * static_cast<int>(d + 1) <= rest.degree()) {
            ++d;
            h = poly_powmod(h, BigInt(k->size()), rest);
            Poly g = poly_gcd(h - x, rest);
            if (g.degree() > 0) {
                std::vector<Poly> irreducibles;
                edf(g, d, rng, irreducibles);
                for (auto& irr : irreducibles) out.push_back({irr, mult});
                rest = poly_div_exact(rest, g).monic();
                h = poly_mod(h, rest);
            }
        }
        if (rest.degree() > 0) out.push_back({rest, mult});
    }

    std::sort(out.begin(), out.end(),
              [](const PolyFactor& a, const PolyFactor& b) { return a.factor.order_key() < b.factor.order_key(); });
    return out;
}

std::vector<FieldElement> poly_roots(const Poly& f, Rng& rng) {
    std::vector<FieldElement> roots;
    if (f.degree() < 1) return roots;
    Field k = f.field();
    // restrict to the part that splits over k before full factorization
    Poly x = Poly::x(k);
    Poly xq = poly_powmod(x, BigInt(k->size()), f);
    Poly split = poly_gcd(xq - x, f);
    if (split.degree() < 1) return roots;
    for (auto& pf : poly_factor(split, rng)) {
        if (pf.factor.degree() == 1) roots.push_back(-pf.factor.coeffs()[0]);
    }
    std::sort(roots.begin(), roots.end(),
              [](const FieldElement& a, const FieldElement& b) { return a.value() < b.value(); });
    return roots;
}

}  // namespace orbitw
