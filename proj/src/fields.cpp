#include "orbitw/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "orbitw/poly.hpp"

namespace orbitw {

namespace {

std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}
std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }
// p < 2^20, so products stay well inside 64 bits
std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powm(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulm(r, a, p);
        a = mulm(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invm(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero residue");
    return powm(a, p - 2, p);
}

using Coeffs = std::vector<std::uint64_t>;

// in-place c := c * b mod (p, modulus); schoolbook then reduce by the monic modulus
Coeffs mul_mod(const Coeffs& a, const Coeffs& b, const Coeffs& modulus, std::uint64_t p) {
    const std::size_t n = modulus.size() - 1;
    std::vector<std::uint64_t> prod(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    for (std::size_t i = 2 * n - 2; i + 1 > n; --i) {
        std::uint64_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            prod[i - n + j] = subm(prod[i - n + j], mulm(c, modulus[j], p), p);
        }
    }
    prod.resize(n);
    return prod;
}

int poly_deg(const Coeffs& a) {
    int d = static_cast<int>(a.size()) - 1;
    while (d >= 0 && a[static_cast<std::size_t>(d)] == 0) --d;
    return d;
}

// extended Euclid over F_p[x]; returns s with s*a == gcd (mod m), gcd expected constant
Coeffs inv_mod(const Coeffs& a, const Coeffs& modulus, std::uint64_t p) {
    const std::size_t n = modulus.size() - 1;
    Coeffs r0 = modulus, r1 = a;
    r1.resize(std::max(r1.size(), std::size_t(1)));
    Coeffs t0(1, 0), t1(1, 1);
    while (poly_deg(r1) >= 0) {
        int d0 = poly_deg(r0), d1 = poly_deg(r1);
        if (d0 < d1) {
            std::swap(r0, r1);
            std::swap(t0, t1);
            continue;
        }
        // r0 -= (lead ratio) x^(d0-d1) r1, mirrored on t
        std::uint64_t c = mulm(r0[static_cast<std::size_t>(d0)], invm(r1[static_cast<std::size_t>(d1)], p), p);
        int shift = d0 - d1;
        for (int i = 0; i <= d1; ++i) {
            auto k = static_cast<std::size_t>(i + shift);
            if (r0.size() <= k) r0.resize(k + 1, 0);
            r0[k] = subm(r0[k], mulm(c, r1[static_cast<std::size_t>(i)], p), p);
        }
        int dt = poly_deg(t1);
        for (int i = 0; i <= dt; ++i) {
            auto k = static_cast<std::size_t>(i + shift);
            if (t0.size() <= k) t0.resize(k + 1, 0);
            t0[k] = subm(t0[k], mulm(c, t1[static_cast<std::size_t>(i)], p), p);
        }
    }
    int dg = poly_deg(r0);
    if (dg != 0) throw Error(ErrorCode::DivisionByZero, "element not invertible");
    std::uint64_t scale = invm(r0[0], p);
    Coeffs out(n, 0);
    for (std::size_t i = 0; i < t0.size() && i < n; ++i) out[i] = mulm(t0[i], scale, p);
    return out;
}

struct EmbedTable {
    // phi: F_{p^m} -> F_{p^n} as an F_p-linear map; columns are images of the
    // generator powers. left_inverse * column-vector recovers the preimage.
    unsigned m;
    std::vector<Coeffs> gen_powers;            // m entries, each length n
    std::vector<std::vector<std::uint64_t>> left_inverse;  // m x n
};

struct Registry {
    std::mutex mu;
    std::map<std::pair<std::uint64_t, unsigned>, std::unique_ptr<ExtField>> fields;
    std::map<std::pair<Field, unsigned>, EmbedTable> embeds;  // (target, base degree)
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

struct FieldInternals {
    static const Coeffs& modulus(Field f) { return f->modulus_; }

    static EmbedTable build_embed_table(Field target, unsigned m);
    static const EmbedTable& embed_table(Field target, unsigned m) {
        auto& reg = registry();
        auto key = std::make_pair(target, m);
        {
            std::scoped_lock lock(reg.mu);
            auto it = reg.embeds.find(key);
            if (it != reg.embeds.end()) return it->second;
        }
        EmbedTable t = build_embed_table(target, m);  // outside the lock; may construct fields
        std::scoped_lock lock(reg.mu);
        return reg.embeds.emplace(key, std::move(t)).first->second;
    }
};

PrimeModulus::PrimeModulus(std::uint64_t prime) : p(prime) {
    if (p < 3 || p % 2 == 0 || p >= (1ULL << 20) || !is_prime_u64(p))
        throw Error(ErrorCode::MalformedInput, "modulus must be an odd prime below 2^20");
}

ExtField::ExtField(std::uint64_t p, unsigned n, std::vector<std::uint64_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
    q_ = 1;
    for (unsigned i = 0; i < n_; ++i) q_ *= p_;
}

Field ext_construct(std::uint64_t p, unsigned n, const Caps& caps) {
    PrimeModulus check(p);
    if (n < 1) throw Error(ErrorCode::MalformedInput, "extension degree must be >= 1");
    if (n > caps.max_degree) throw Error(ErrorCode::CapExceeded, "extension degree exceeds cap");
    double bits = n * std::log2(static_cast<double>(p));
    if (bits > caps.max_field_bits + 1e-9) throw Error(ErrorCode::CapExceeded, "field size exceeds cap");

    auto& reg = registry();
    {
        std::scoped_lock lock(reg.mu);
        auto it = reg.fields.find({p, n});
        if (it != reg.fields.end()) return it->second.get();
    }

    std::vector<std::uint64_t> modulus;
    if (n == 1) {
        modulus = {0, 1};
    } else {
        // scan monic candidates in base-p digit order, constant term fastest
        Field base = ext_construct(p, 1, caps);
        std::uint64_t total = 1;
        for (unsigned i = 0; i < n; ++i) total *= p;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::vector<std::uint64_t> cand(n + 1, 0);
            std::uint64_t t = idx;
            for (unsigned i = 0; i < n; ++i) {
                cand[i] = t % p;
                t /= p;
            }
            cand[n] = 1;
            if (is_irreducible(Poly::from_values(base, cand))) {
                modulus = std::move(cand);
                break;
            }
        }
    }

    std::scoped_lock lock(reg.mu);
    auto it = reg.fields.find({p, n});
    if (it != reg.fields.end()) return it->second.get();
    auto field = std::unique_ptr<ExtField>(new ExtField(p, n, std::move(modulus)));
    Field out = field.get();
    reg.fields.emplace(std::make_pair(p, n), std::move(field));
    return out;
}

FieldElement FieldElement::zero(Field f) { return FieldElement(f, Coeffs(f->degree(), 0)); }

FieldElement FieldElement::one(Field f) { return constant(f, 1); }

FieldElement FieldElement::constant(Field f, std::uint64_t c) {
    Coeffs v(f->degree(), 0);
    v[0] = c % f->p();
    return FieldElement(f, std::move(v));
}

FieldElement FieldElement::from_value(Field f, std::uint64_t v) {
    Coeffs c(f->degree(), 0);
    for (unsigned i = 0; i < f->degree(); ++i) {
        c[i] = v % f->p();
        v /= f->p();
    }
    return FieldElement(f, std::move(c));
}

FieldElement FieldElement::from_coeffs(Field f, std::vector<std::uint64_t> coeffs) {
    if (coeffs.size() > f->degree()) throw Error(ErrorCode::MalformedInput, "coefficient count exceeds degree");
    coeffs.resize(f->degree(), 0);
    for (auto& c : coeffs) c %= f->p();
    return FieldElement(f, std::move(coeffs));
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::uint64_t c) { return c == 0; });
}

bool FieldElement::is_one() const {
    if (coeffs_[0] != 1) return false;
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](std::uint64_t c) { return c == 0; });
}

std::uint64_t FieldElement::value() const {
    std::uint64_t v = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * field_->p() + coeffs_[i];
    return v;
}

namespace {
void check_same_parent(const FieldElement& a, const FieldElement& b) {
    if (a.parent() != b.parent()) throw Error(ErrorCode::MismatchedParents, "elements from different fields");
}
}  // namespace

FieldElement FieldElement::operator-() const {
    Coeffs v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeffs_[i] ? field_->p() - coeffs_[i] : 0;
    return FieldElement(field_, std::move(v));
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    check_same_parent(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = addm(coeffs_[i], rhs.coeffs_[i], field_->p());
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    check_same_parent(*this, rhs);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = subm(coeffs_[i], rhs.coeffs_[i], field_->p());
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    check_same_parent(*this, rhs);
    coeffs_ = mul_mod(coeffs_, rhs.coeffs_, field_->modulus_, field_->p());
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
    check_same_parent(*this, rhs);
    return *this *= rhs.inverse();
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    return field_ == rhs.field_ && coeffs_ == rhs.coeffs_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return FieldElement(field_, inv_mod(coeffs_, field_->modulus_, field_->p()));
}

FieldElement FieldElement::pow(std::uint64_t e) const { return pow(BigInt(e)); }

FieldElement FieldElement::pow(const BigInt& e) const {
    if (e < 0) return inverse().pow(-e);
    if (is_zero()) {
        if (e == 0) return one(field_);
        return *this;
    }
    BigInt r = e % (field_->size() - 1);
    FieldElement acc = one(field_);
    FieldElement base = *this;
    while (r > 0) {
        if ((r & 1) != 0) acc *= base;
        base *= base;
        r >>= 1;
    }
    return acc;
}

FieldElement frobenius(const FieldElement& x, unsigned base_degree) {
    Field f = x.parent();
    if (base_degree == 0 || f->degree() % base_degree != 0)
        throw Error(ErrorCode::NonDividingBaseDegree, "base degree must divide field degree");
    std::uint64_t e = 1;
    for (unsigned i = 0; i < base_degree; ++i) e *= f->p();
    return x.pow(e);
}

FieldElement norm_to_base(const FieldElement& x, unsigned base_degree) {
    Field f = x.parent();
    if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "norm of zero");
    if (base_degree == 0 || f->degree() % base_degree != 0)
        throw Error(ErrorCode::NonDividingBaseDegree, "base degree must divide field degree");
    std::uint64_t qm = 1;
    for (unsigned i = 0; i < base_degree; ++i) qm *= f->p();
    std::uint64_t e = (f->size() - 1) / (qm - 1);
    return restrict_to(x.pow(e), base_degree);
}

EmbedTable FieldInternals::build_embed_table(Field target, unsigned m) {
    const unsigned n = target->degree();
    const std::uint64_t p = target->p();
    Field base = ext_construct(p, m);

    // image of the generator: least root of the base modulus inside target
    FieldElement gen_image = FieldElement::zero(target);
    if (m == 1) {
        gen_image = FieldElement::zero(target);  // generator of F_p is 0-degree; unused
    } else {
        std::vector<FieldElement> lifted;
        lifted.reserve(m + 1);
        for (std::uint64_t c : base->modulus()) lifted.push_back(FieldElement::constant(target, c));
        Poly min_poly = Poly::from_coeffs(target, std::move(lifted));
        // the root set is one Frobenius orbit; any root plus conjugation yields all
        Rng rng(0x6d62edc0d174ULL ^ (p << 24) ^ (std::uint64_t(m) << 8) ^ n);
        std::vector<FieldElement> roots = poly_roots(min_poly, rng);
        if (roots.size() != m)
            throw Error(ErrorCode::VerificationFailed, "modulus does not split in the target field");
        gen_image = roots.front();  // poly_roots sorts by value
    }

    EmbedTable table;
    table.m = m;
    table.gen_powers.reserve(m);
    FieldElement acc = FieldElement::one(target);
    for (unsigned j = 0; j < m; ++j) {
        table.gen_powers.push_back(acc.coeffs());
        if (j + 1 < m) acc *= gen_image;
    }

    // left inverse of the n x m coefficient matrix by Gauss-Jordan on [M | I]
    std::vector<std::vector<std::uint64_t>> aug(n, std::vector<std::uint64_t>(m + n, 0));
    for (unsigned j = 0; j < m; ++j)
        for (unsigned i = 0; i < n; ++i) aug[i][j] = table.gen_powers[j][i];
    for (unsigned i = 0; i < n; ++i) aug[i][m + i] = 1;

    unsigned row = 0;
    std::vector<unsigned> pivot_rows;
    for (unsigned col = 0; col < m && row < n; ++col) {
        unsigned sel = row;
        while (sel < n && aug[sel][col] == 0) ++sel;
        if (sel == n) continue;
        std::swap(aug[sel], aug[row]);
        std::uint64_t inv = invm(aug[row][col], p);
        for (auto& v : aug[row]) v = mulm(v, inv, p);
        for (unsigned r = 0; r < n; ++r) {
            if (r == row || aug[r][col] == 0) continue;
            std::uint64_t c = aug[r][col];
            for (unsigned k = 0; k < m + n; ++k) aug[r][k] = subm(aug[r][k], mulm(c, aug[row][k], p), p);
        }
        pivot_rows.push_back(row);
        ++row;
    }
    if (pivot_rows.size() != m) throw Error(ErrorCode::VerificationFailed, "embedding matrix is singular");
    table.left_inverse.assign(m, std::vector<std::uint64_t>(n, 0));
    for (unsigned j = 0; j < m; ++j)
        for (unsigned i = 0; i < n; ++i) table.left_inverse[j][i] = aug[pivot_rows[j]][m + i];
    return table;
}

FieldElement embed(const FieldElement& x, Field target) {
    Field src = x.parent();
    if (src == target) return x;
    if (src->p() != target->p() || target->degree() % src->degree() != 0)
        throw Error(ErrorCode::NonDividingDegree, "no embedding between these fields");
    const unsigned m = src->degree();
    if (m == 1) return FieldElement::constant(target, x.coeffs()[0]);
    const EmbedTable& table = FieldInternals::embed_table(target, m);
    FieldElement out = FieldElement::zero(target);
    const std::uint64_t p = target->p();
    Coeffs acc(target->degree(), 0);
    for (unsigned j = 0; j < m; ++j) {
        std::uint64_t c = x.coeffs()[j];
        if (c == 0) continue;
        for (unsigned i = 0; i < target->degree(); ++i)
            acc[i] = (acc[i] + c * table.gen_powers[j][i]) % p;
    }
    return FieldElement::from_coeffs(target, std::move(acc));
}

FieldElement restrict_to(const FieldElement& x, unsigned base_degree) {
    Field src = x.parent();
    const unsigned n = src->degree();
    if (base_degree == 0 || n % base_degree != 0)
        throw Error(ErrorCode::NonDividingBaseDegree, "base degree must divide field degree");
    if (base_degree == n) return x;
    Field base = ext_construct(src->p(), base_degree);
    const std::uint64_t p = src->p();
    if (base_degree == 1) {
        for (unsigned i = 1; i < n; ++i)
            if (x.coeffs()[i] != 0)
                throw Error(ErrorCode::VerificationFailed, "element does not lie in the prime field");
        return FieldElement::constant(base, x.coeffs()[0]);
    }
    const EmbedTable& table = FieldInternals::embed_table(src, base_degree);
    Coeffs w(base_degree, 0);
    for (unsigned j = 0; j < base_degree; ++j) {
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < n; ++i) acc = (acc + table.left_inverse[j][i] * x.coeffs()[i]) % p;
        w[j] = acc;
    }
    FieldElement candidate = FieldElement::from_coeffs(base, w);
    if (embed(candidate, src) != x)
        throw Error(ErrorCode::VerificationFailed, "element does not lie in the requested subfield");
    return candidate;
}

bool in_subfield(const FieldElement& x, unsigned base_degree) {
    Field src = x.parent();
    if (base_degree == 0 || src->degree() % base_degree != 0) return false;
    return frobenius(x, base_degree) == x;
}

std::optional<FieldElement> field_sqrt(const FieldElement& x) {
    Field f = x.parent();
    if (x.is_zero()) return x;
    const std::uint64_t q = f->size();
    // Euler criterion
    if (!x.pow((q - 1) / 2).is_one()) return std::nullopt;

    // Tonelli-Shanks; q odd always (p odd)
    std::uint64_t t = q - 1;
    unsigned s = 0;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    FieldElement z = FieldElement::zero(f);
    for (std::uint64_t v = 2;; ++v) {
        z = FieldElement::from_value(f, v);
        if (!z.is_zero() && !z.pow((q - 1) / 2).is_one()) break;
    }
    FieldElement m_acc = x.pow((t + 1) / 2);
    FieldElement w = x.pow(t);
    FieldElement g = z.pow(t);
    unsigned r = s;
    while (!w.is_one()) {
        unsigned i = 0;
        FieldElement w2 = w;
        while (!w2.is_one()) {
            w2 *= w2;
            ++i;
        }
        FieldElement gs = g;
        for (unsigned j = 0; j + i + 1 < r; ++j) gs *= gs;
        m_acc *= gs;
        g = gs * gs;
        w *= g;
        r = i;
    }
    FieldElement other = -m_acc;
    return m_acc.value() <= other.value() ? m_acc : other;
}

std::uint64_t multiplicative_order(const FieldElement& x) {
    if (x.is_zero()) throw Error(ErrorCode::ZeroInput, "order of zero");
    std::uint64_t group = x.parent()->size() - 1;
    std::uint64_t order = group;
    for (auto& [prime, exp] : factorize_u64(group)) {
        for (unsigned i = 0; i < exp; ++i) {
            if (x.pow(order / prime).is_one())
                order /= prime;
            else
                break;
        }
    }
    return order;
}

std::uint64_t multiplicative_order_mod(std::uint64_t x, std::uint64_t p) {
    x %= p;
    if (x == 0) throw Error(ErrorCode::ZeroInput, "order of zero residue");
    std::uint64_t order = p - 1;
    for (auto& [prime, exp] : factorize_u64(p - 1)) {
        for (unsigned i = 0; i < exp; ++i) {
            if (powm(x, order / prime, p) == 1)
                order /= prime;
            else
                break;
        }
    }
    return order;
}

}  // namespace orbitw
