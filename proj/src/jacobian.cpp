#include "orbitw/jacobian.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace orbitw {

namespace {

void check_same_group(const MumfordDivisor& a, const MumfordDivisor& b) {
    if (!a.curve()->same_curve(*b.curve()))
        throw Error(ErrorCode::MismatchedCurve, "divisors on different curves");
    if (a.stage_field() != b.stage_field())
        throw Error(ErrorCode::MismatchedCurve, "divisors over different stage fields");
}

bool mumford_invariant_holds(const HyperellipticCurve& curve, const Poly& u, const Poly& v) {
    if (u.is_zero() || !u.is_monic()) return false;
    if (u.degree() > static_cast<int>(curve.genus)) return false;
    if (v.degree() >= u.degree()) return false;
    Poly f = lift_curve_poly(curve, u.field());
    return poly_mod(v * v - f, u).is_zero();
}

}  // namespace

MumfordDivisor MumfordDivisor::identity(CurveHandle curve, unsigned n) {
    Field stage = ext_construct(curve->p, n);
    return MumfordDivisor(std::move(curve), Poly::one(stage), Poly::zero(stage));
}

MumfordDivisor MumfordDivisor::make(CurveHandle curve, Poly u, Poly v) {
    if (!mumford_invariant_holds(*curve, u, v))
        throw Error(ErrorCode::MalformedInput, "not a reduced Mumford pair");
    return MumfordDivisor(std::move(curve), std::move(u), std::move(v));
}

bool MumfordDivisor::operator==(const MumfordDivisor& rhs) const {
    return curve_->same_curve(*rhs.curve_) && u_ == rhs.u_ && v_ == rhs.v_;
}

std::vector<std::uint64_t> MumfordDivisor::order_key() const {
    const auto du = static_cast<std::size_t>(u_.degree());
    std::vector<std::uint64_t> key;
    key.reserve(1 + 2 * du);
    key.push_back(du);
    for (std::size_t i = du; i-- > 0;) key.push_back(u_.coeffs()[i].value());
    for (std::size_t i = du; i-- > 0;) key.push_back(v_.coeff(i).value());
    return key;
}

MumfordDivisor embed_point(const CurvePoint& c, CurveHandle curve) {
    Field stage = c.parent();
    if (c.is_infinity()) return MumfordDivisor::identity(std::move(curve), stage->degree());
    Poly u = Poly::from_coeffs(stage, {-c.x(), FieldElement::one(stage)});
    Poly v = Poly::constant(c.y());
    return MumfordDivisor::make(std::move(curve), std::move(u), std::move(v));
}

MumfordDivisor jac_add(const MumfordDivisor& a, const MumfordDivisor& b) {
    check_same_group(a, b);
    const HyperellipticCurve& curve = *a.curve();
    Field stage = a.stage_field();
    const Poly f = lift_curve_poly(curve, stage);
    const unsigned g = curve.genus;

    // Cantor composition
    const Poly &u1 = a.u(), &v1 = a.v(), &u2 = b.u(), &v2 = b.v();
    PolyXgcd step1 = poly_xgcd(u1, u2);                    // d1 = e1 u1 + e2 u2
    PolyXgcd step2 = poly_xgcd(step1.g, v1 + v2);          // d = c1 d1 + c2 (v1+v2)
    const Poly& d = step2.g;
    Poly s1 = step2.s * step1.s;
    Poly s2 = step2.s * step1.t;
    const Poly& s3 = step2.t;

    Poly u = poly_div_exact(u1 * u2, d * d);
    Poly t = s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + f);
    Poly v = poly_mod(poly_div_exact(t, d), u);

    // reduction to deg u <= g
    while (u.degree() > static_cast<int>(g)) {
        Poly u_next = poly_div_exact(f - v * v, u).monic();
        Poly v_next = poly_mod(-v, u_next);
        u = std::move(u_next);
        v = std::move(v_next);
    }
    u = u.monic();
    return MumfordDivisor::make(a.curve(), std::move(u), std::move(v));
}

MumfordDivisor jac_neg(const MumfordDivisor& a) {
    return MumfordDivisor::make(a.curve(), a.u(), -a.v());
}

MumfordDivisor jac_sub(const MumfordDivisor& a, const MumfordDivisor& b) { return jac_add(a, jac_neg(b)); }

MumfordDivisor jac_scalar(const BigInt& m, const MumfordDivisor& a) {
    if (m < 0) return jac_scalar(-m, jac_neg(a));
    MumfordDivisor acc = MumfordDivisor::identity(a.curve(), a.stage_degree());
    MumfordDivisor base = a;
    BigInt r = m;
    while (r > 0) {
        if ((r & 1) != 0) acc = jac_add(acc, base);
        if ((r >>= 1) > 0) base = jac_add(base, base);
    }
    return acc;
}

namespace {

Poly map_coeffs(const Poly& src, Field target, const std::function<FieldElement(const FieldElement&)>& fn) {
    std::vector<FieldElement> out;
    out.reserve(src.coeffs().size());
    for (const auto& c : src.coeffs()) out.push_back(fn(c));
    return Poly::from_coeffs(target, std::move(out));
}

}  // namespace

MumfordDivisor divisor_embed(const MumfordDivisor& a, unsigned n_target) {
    Field stage = a.stage_field();
    if (n_target == stage->degree()) return a;
    if (n_target % stage->degree() != 0)
        throw Error(ErrorCode::NonDividingDegree, "target stage must be a multiple of the current stage");
    Field target = ext_construct(stage->p(), n_target);
    Poly u = map_coeffs(a.u(), target, [&](const FieldElement& c) { return embed(c, target); });
    Poly v = map_coeffs(a.v(), target, [&](const FieldElement& c) { return embed(c, target); });
    return MumfordDivisor::make(a.curve(), std::move(u), std::move(v));
}

MumfordDivisor frobenius_on_class(const MumfordDivisor& a, unsigned base_degree) {
    Field stage = a.stage_field();
    if (base_degree == 0 || stage->degree() % base_degree != 0)
        throw Error(ErrorCode::NonDividingBaseDegree, "base degree must divide stage degree");
    Poly u = map_coeffs(a.u(), stage, [&](const FieldElement& c) { return frobenius(c, base_degree); });
    Poly v = map_coeffs(a.v(), stage, [&](const FieldElement& c) { return frobenius(c, base_degree); });
    return MumfordDivisor::make(a.curve(), std::move(u), std::move(v));
}

MumfordDivisor restrict_class(const MumfordDivisor& a, unsigned base_degree) {
    Field stage = a.stage_field();
    if (base_degree == stage->degree()) return a;
    Field base = ext_construct(stage->p(), base_degree);
    Poly u = map_coeffs(a.u(), base, [&](const FieldElement& c) { return restrict_to(c, base_degree); });
    Poly v = map_coeffs(a.v(), base, [&](const FieldElement& c) { return restrict_to(c, base_degree); });
    return MumfordDivisor::make(a.curve(), std::move(u), std::move(v));
}

// ---------------------------------------------------------------------------
// enumeration: scan monic u, solve for the compatible v
// ---------------------------------------------------------------------------

namespace {

// square root in the field F_q[x]/(m), m irreducible; canonical +/- pair order
std::optional<Poly> sqrt_in_quotient(const Poly& a, const Poly& m) {
    Field k = m.field();
    Poly red = poly_mod(a, m);
    if (red.is_zero()) return red;
    const BigInt Q = big_pow(BigInt(k->size()), static_cast<unsigned>(m.degree()));
    Poly one = Poly::one(k);
    Poly minus_one = -one;
    if (poly_powmod(red, (Q - 1) / 2, m) != one) return std::nullopt;

    BigInt t = Q - 1;
    unsigned s = 0;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    // nonresidue by canonical scan
    Poly z = Poly::zero(k);
    for (std::uint64_t zv = 2;; ++zv) {
        std::vector<std::uint64_t> digits;
        std::uint64_t v = zv;
        for (int i = 0; i < m.degree(); ++i) {
            digits.push_back(v % k->size());
            v /= k->size();
        }
        std::vector<FieldElement> coeffs;
        for (std::uint64_t dv : digits) coeffs.push_back(FieldElement::from_value(k, dv));
        z = Poly::from_coeffs(k, std::move(coeffs));
        if (!z.is_zero() && poly_powmod(z, (Q - 1) / 2, m) == minus_one) break;
    }
    Poly r = poly_powmod(red, (t + 1) / 2, m);
    Poly w = poly_powmod(red, t, m);
    Poly gpow = poly_powmod(z, t, m);
    unsigned rr = s;
    while (w != one) {
        unsigned i = 0;
        Poly w2 = w;
        while (w2 != one) {
            w2 = poly_mod(w2 * w2, m);
            ++i;
        }
        Poly gs = gpow;
        for (unsigned j = 0; j + i + 1 < rr; ++j) gs = poly_mod(gs * gs, m);
        r = poly_mod(r * gs, m);
        gpow = poly_mod(gs * gs, m);
        w = poly_mod(w * gpow, m);
        rr = i;
    }
    return r;
}

Poly poly_inverse_mod(const Poly& a, const Poly& m) {
    PolyXgcd x = poly_xgcd(poly_mod(a, m), m);
    if (!x.g.is_one()) throw Error(ErrorCode::DivisionByZero, "polynomial not invertible modulo m");
    return poly_mod(x.s, m);
}

// all v with deg v < deg u and u | v^2 - f, sorted canonically
std::vector<Poly> mumford_v_solutions(const Poly& u, const Poly& f, Rng& rng) {
    Field k = u.field();
    if (u.degree() == 0) return {Poly::zero(k)};
    FieldElement half = FieldElement::constant(k, 2).inverse();

    struct LocalSolutions {
        Poly modulus;        // m^e
        std::vector<Poly> values;
    };
    std::vector<LocalSolutions> locals;

    for (const auto& pf : poly_factor(u, rng)) {
        const Poly& m = pf.factor;
        unsigned e = pf.multiplicity;
        Poly f_mod = poly_mod(f, m);
        LocalSolutions local{m, {}};
        if (f_mod.is_zero()) {
            // Weierstrass factor: v = 0 works only at multiplicity one
            if (e > 1) return {};
            local.values.push_back(Poly::zero(k));
        } else {
            std::optional<Poly> w = sqrt_in_quotient(f_mod, m);
            if (!w) return {};
            // Newton lifting of the square root to m^e
            Poly cur = *w;
            unsigned prec = 1;
            Poly modulus = m;
            while (prec < e) {
                prec = std::min(2 * prec, e);
                modulus = Poly::one(k);
                for (unsigned i = 0; i < prec; ++i) modulus = modulus * m;
                Poly inv = poly_inverse_mod(cur, modulus);
                cur = poly_mod((cur + poly_mod(f, modulus) * inv).scaled(half), modulus);
            }
            local.modulus = modulus;
            local.modulus = modulus;
            local.values.push_back(cur);
            local.values.push_back(poly_mod(-cur, modulus));
        }
        locals.push_back(std::move(local));
    }

    // CRT over the pairwise-coprime local moduli
    std::vector<Poly> solutions{Poly::zero(k)};
    Poly combined = Poly::one(k);
    for (const auto& local : locals) {
        PolyXgcd x = poly_xgcd(combined, local.modulus);
        // x.g == 1; combined*s = 1 mod local.modulus, local.modulus*t = 1 mod combined
        std::vector<Poly> next;
        Poly new_combined = combined * local.modulus;
        for (const auto& base : solutions) {
            for (const auto& val : local.values) {
                // CRT: r = base + combined * (s * (val - base) mod local.modulus)
                Poly delta = poly_mod(x.s * (val - base), local.modulus);
                next.push_back(poly_mod(base + combined * delta, new_combined));
            }
        }
        solutions = std::move(next);
        combined = std::move(new_combined);
    }

    std::sort(solutions.begin(), solutions.end(),
              [](const Poly& a, const Poly& b) { return a.order_key() < b.order_key(); });
    return solutions;
}

// iterate monic polynomials of exact degree d over k in canonical value order
class MonicScan {
public:
    MonicScan(Field k, unsigned d) : k_(k), d_(d) {
        total_ = 1;
        for (unsigned i = 0; i < d; ++i) total_ *= k->size();
    }
    std::optional<Poly> next() {
        if (idx_ >= total_) return std::nullopt;
        std::uint64_t v = idx_++;
        std::vector<FieldElement> coeffs;
        coeffs.reserve(d_ + 1);
        for (unsigned i = 0; i < d_; ++i) {
            coeffs.push_back(FieldElement::from_value(k_, v % k_->size()));
            v /= k_->size();
        }
        coeffs.push_back(FieldElement::one(k_));
        return Poly::from_coeffs(k_, std::move(coeffs));
    }

private:
    Field k_;
    unsigned d_;
    std::uint64_t total_;
    std::uint64_t idx_ = 0;
};

}  // namespace

std::vector<MumfordDivisor> enumerate_group(CurveHandle curve, unsigned n, const Caps& caps) {
    Field stage = ext_construct(curve->p, n, caps);
    BigInt order = order_at_stage(curve, 1, n, caps);
    if (order > caps.max_group) throw Error(ErrorCode::CapExceeded, "group too large to enumerate");

    Poly f = lift_curve_poly(*curve, stage);
    Rng rng(0x9e3779b9ULL ^ stage->size());
    std::vector<MumfordDivisor> out;
    out.push_back(MumfordDivisor::identity(curve, n));
    for (unsigned d = 1; d <= curve->genus; ++d) {
        MonicScan scan(stage, d);
        while (auto u = scan.next()) {
            for (auto& v : mumford_v_solutions(*u, f, rng)) {
                out.push_back(MumfordDivisor::make(curve, *u, std::move(v)));
            }
        }
    }
    if (BigInt(out.size()) != order)
        throw Error(ErrorCode::VerificationFailed, "enumeration count disagrees with the stage order");
    return out;
}

// ---------------------------------------------------------------------------
// stage orders from the Frobenius characteristic polynomial
// ---------------------------------------------------------------------------

std::vector<BigInt> frobenius_charpoly(CurveHandle curve, unsigned base_degree, const Caps& caps) {
    const unsigned g = curve->genus;
    const std::uint64_t p = curve->p;
    BigInt q = 1;
    for (unsigned i = 0; i < base_degree; ++i) q *= p;

    // power sums of the Frobenius eigenvalues from exhaustive curve counts
    std::vector<BigInt> s(2 * g + 1, 0);
    for (unsigned j = 1; j <= g; ++j) {
        std::uint64_t cnt = count_points(curve, base_degree * j, caps);
        s[j] = big_pow(q, j) + 1 - cnt;
    }
    // Newton: s_k + b_1 s_{k-1} + ... + b_{k-1} s_1 + k b_k = 0 for k <= g
    std::vector<BigInt> b(2 * g + 1, 0);
    for (unsigned k = 1; k <= g; ++k) {
        BigInt acc = s[k];
        for (unsigned i = 1; i < k; ++i) acc += b[i] * s[k - i];
        if (acc % k != 0) throw Error(ErrorCode::VerificationFailed, "Newton identity produced a fraction");
        b[k] = -acc / k;
    }
    // functional equation: b_{g+i} = q^i b_{g-i}
    for (unsigned i = 1; i <= g; ++i) b[g + i] = big_pow(q, i) * b[g - i];

    std::vector<BigInt> chi(2 * g + 1);
    chi[0] = 1;
    for (unsigned i = 1; i <= 2 * g; ++i) chi[i] = b[i];
    return chi;  // leading-first: T^{2g} + b1 T^{2g-1} + ... + b_{2g}
}

BigInt order_at_stage(CurveHandle curve, unsigned base_degree, unsigned rel_degree, const Caps& caps) {
    if (rel_degree < 1) throw Error(ErrorCode::MalformedInput, "relative degree must be >= 1");
    const unsigned g = curve->genus;
    std::vector<BigInt> chi = frobenius_charpoly(curve, base_degree, caps);

    // extend power sums with the linear recurrence from chi
    const unsigned need = 2 * g * rel_degree;
    std::vector<BigInt> s(need + 1, 0);
    for (unsigned k = 1; k <= need; ++k) {
        if (k <= 2 * g) {
            BigInt acc = 0;
            for (unsigned i = 1; i < k; ++i) acc += chi[i] * s[k - i];
            acc += BigInt(k) * chi[k];
            s[k] = -acc;
        } else {
            BigInt acc = 0;
            for (unsigned i = 1; i <= 2 * g; ++i) acc += chi[i] * s[k - i];
            s[k] = -acc;
        }
    }

    // Newton upward: elementary symmetric functions of the alpha_i^rel
    std::vector<BigInt> e(2 * g + 1, 0);
    e[0] = 1;
    for (unsigned j = 1; j <= 2 * g; ++j) {
        BigInt acc = 0;
        int sign = 1;
        for (unsigned i = 1; i <= j; ++i) {
            acc += sign * e[j - i] * s[i * rel_degree];
            sign = -sign;
        }
        if (acc % j != 0) throw Error(ErrorCode::VerificationFailed, "Newton identity produced a fraction");
        e[j] = acc / j;
    }
    BigInt order = 0;
    int sign = 1;
    for (unsigned j = 0; j <= 2 * g; ++j) {
        order += sign * e[j];
        sign = -sign;
    }
    if (order <= 0) throw Error(ErrorCode::VerificationFailed, "nonpositive stage order");
    return order;
}

BigInt element_order(const MumfordDivisor& a, const Caps& caps) {
    return element_order(a, order_at_stage(a.curve(), 1, a.stage_degree(), caps));
}

BigInt element_order(const MumfordDivisor& a, const BigInt& group_order) {
    BigInt order = group_order;
    MumfordDivisor id = MumfordDivisor::identity(a.curve(), a.stage_degree());
    for (auto& [prime, exp] : factorize(group_order)) {
        for (unsigned i = 0; i < exp; ++i) {
            if (jac_scalar(order / prime, a) == id)
                order /= prime;
            else
                break;
        }
    }
    return order;
}

MumfordDivisor ell_primary_projection(const MumfordDivisor& a, std::uint64_t ell, const Caps& caps) {
    BigInt G = order_at_stage(a.curve(), 1, a.stage_degree(), caps);
    BigInt ell_part = 1;
    BigInt M = G;
    while (M % ell == 0) {
        M /= ell;
        ell_part *= ell;
    }
    if (ell_part == 1) return MumfordDivisor::identity(a.curve(), a.stage_degree());
    BigInt multiplier = M * inverse_mod(M, ell_part);
    return jac_scalar(multiplier, a);
}

// ---------------------------------------------------------------------------
// group structure
// ---------------------------------------------------------------------------

namespace {

using KeySet = std::set<std::vector<std::uint64_t>>;

std::vector<MumfordDivisor> closure_with(const std::vector<MumfordDivisor>& span,
                                         const MumfordDivisor& x, const BigInt& x_order) {
    std::vector<MumfordDivisor> out;
    MumfordDivisor power = MumfordDivisor::identity(x.curve(), x.stage_degree());
    BigInt k = 0;
    while (k < x_order) {
        for (const auto& s : span) out.push_back(jac_add(s, power));
        power = jac_add(power, x);
        ++k;
    }
    return out;
}

bool all_distinct(const std::vector<MumfordDivisor>& elems) {
    KeySet keys;
    for (const auto& e : elems)
        if (!keys.insert(e.order_key()).second) return false;
    return true;
}

// basis of an abelian ell-group given as a materialized element list
std::vector<MumfordDivisor> sylow_basis(const std::vector<MumfordDivisor>& sylow, std::uint64_t ell,
                                        std::vector<unsigned>& exponents_out) {
    // exponent profile from order counts
    std::map<BigInt, std::size_t> count_by_order;
    std::map<std::vector<std::uint64_t>, BigInt> order_of;
    BigInt size = sylow.size();
    for (const auto& x : sylow) {
        BigInt ord = 1;
        MumfordDivisor cur = x;
        MumfordDivisor id = MumfordDivisor::identity(x.curve(), x.stage_degree());
        while (cur != id) {
            cur = jac_scalar(BigInt(ell), cur);
            ord *= ell;
        }
        order_of[x.order_key()] = ord;
        ++count_by_order[ord];
    }
    // N_i = #{x : ord | ell^i}; d_i = log difference = #{j : e_j >= i}
    std::vector<unsigned> exps;
    BigInt level = 1;
    std::vector<std::size_t> cumulative;
    while (true) {
        BigInt cnt = 0;
        for (auto& [ord, c] : count_by_order)
            if (ord <= level) cnt += c;
        cumulative.push_back(static_cast<std::size_t>(cnt.convert_to<std::uint64_t>()));
        if (cnt == size) break;
        level *= ell;
    }
    // cumulative[i] = ell^(sum min(i, e_j)); recover the conjugate partition
    std::vector<unsigned> logs;
    for (std::size_t c : cumulative) {
        unsigned lg = 0;
        std::size_t v = c;
        while (v > 1) {
            v /= ell;
            ++lg;
        }
        logs.push_back(lg);
    }
    std::vector<unsigned> diff;
    for (std::size_t i = 1; i < logs.size(); ++i) diff.push_back(logs[i] - logs[i - 1]);
    // diff is weakly decreasing; conjugate it to get e_1 >= e_2 >= ...
    if (!diff.empty()) {
        for (unsigned j = 1; j <= diff[0]; ++j) {
            unsigned e = 0;
            for (unsigned d : diff)
                if (d >= j) ++e;
            exps.push_back(e);
        }
        std::sort(exps.begin(), exps.end(), std::greater<>());
    }
    exponents_out = exps;

    // greedy basis with the counting check
    std::vector<MumfordDivisor> basis;
    std::vector<MumfordDivisor> span{MumfordDivisor::identity(sylow.front().curve(),
                                                              sylow.front().stage_degree())};
    for (unsigned e : exps) {
        BigInt want = 1;
        for (unsigned i = 0; i < e; ++i) want *= ell;
        bool found = false;
        for (const auto& x : sylow) {
            if (order_of[x.order_key()] != want) continue;
            std::vector<MumfordDivisor> bigger = closure_with(span, x, want);
            if (all_distinct(bigger)) {
                basis.push_back(x);
                span = std::move(bigger);
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorCode::VerificationFailed, "Sylow basis extraction stalled");
    }
    return basis;
}

}  // namespace

std::vector<MumfordDivisor> sylow_subgroup(CurveHandle curve, unsigned n, std::uint64_t ell,
                                           const Caps& caps) {
    BigInt G = order_at_stage(curve, 1, n, caps);
    BigInt sylow_size = 1;
    BigInt M = G;
    while (M % ell == 0) {
        M /= ell;
        sylow_size *= ell;
    }
    if (sylow_size > caps.max_group)
        throw Error(ErrorCode::CapExceeded, "Sylow subgroup exceeds the materialization cap");

    MumfordDivisor id = MumfordDivisor::identity(curve, n);
    std::vector<MumfordDivisor> elements{id};
    KeySet keys{id.order_key()};
    if (sylow_size == 1) return elements;

    BigInt multiplier = M * inverse_mod(M, sylow_size);
    Field stage = ext_construct(curve->p, n, caps);
    Poly f = lift_curve_poly(*curve, stage);
    Rng rng(0x51e0ULL ^ stage->size());

    // saturate with projections of reduced divisors, scanned in canonical
    // order; this is a lazy enumeration that usually stops long before the
    // full group has been visited
    auto absorb = [&](const MumfordDivisor& raw) {
        MumfordDivisor s = jac_scalar(multiplier, raw);
        if (keys.count(s.order_key())) return;
        BigInt ord = 1;
        MumfordDivisor cur = s;
        while (cur != id) {
            cur = jac_scalar(BigInt(ell), cur);
            ord *= ell;
        }
        std::vector<MumfordDivisor> snapshot = elements;
        MumfordDivisor power = s;
        for (BigInt k = 1; k < ord; ++k) {
            for (const auto& e : snapshot) {
                MumfordDivisor candidate = jac_add(e, power);
                if (keys.insert(candidate.order_key()).second) elements.push_back(candidate);
            }
            power = jac_add(power, s);
        }
    };
    for (unsigned d = curve->genus; d >= 1 && BigInt(elements.size()) < sylow_size; --d) {
        MonicScan scan(stage, d);
        while (BigInt(elements.size()) < sylow_size) {
            auto u = scan.next();
            if (!u) break;
            for (auto& v : mumford_v_solutions(*u, f, rng)) {
                absorb(MumfordDivisor::make(curve, *u, std::move(v)));
                if (BigInt(elements.size()) >= sylow_size) break;
            }
        }
    }
    if (BigInt(elements.size()) != sylow_size)
        throw Error(ErrorCode::VerificationFailed, "Sylow saturation did not reach the expected cardinality");
    std::sort(elements.begin(), elements.end(),
              [](const MumfordDivisor& a, const MumfordDivisor& b) { return a.order_key() < b.order_key(); });
    return elements;
}

GroupStructure group_structure(CurveHandle curve, unsigned n, const Caps& caps) {
    BigInt G = order_at_stage(curve, 1, n, caps);
    GroupStructure out;
    out.order = G;
    if (G == 1) return out;

    auto prime_factors = factorize(G);

    // materialize each Sylow subgroup (directly from the full enumeration when
    // small, otherwise by saturating point-class projections)
    std::map<std::uint64_t, std::vector<MumfordDivisor>> sylows;
    constexpr std::uint64_t kFullEnumerationLimit = 100000;
    if (G <= kFullEnumerationLimit && G <= caps.max_group) {
        std::vector<MumfordDivisor> all = enumerate_group(curve, n, caps);
        for (auto& [prime, exp] : prime_factors) {
            std::uint64_t ell = prime.convert_to<std::uint64_t>();
            BigInt sylow_size = big_pow(prime, exp);
            BigInt cofactor = G / sylow_size;
            BigInt multiplier = cofactor * inverse_mod(cofactor, sylow_size);
            KeySet keys;
            std::vector<MumfordDivisor>& sy = sylows[ell];
            for (const auto& x : all) {
                MumfordDivisor s = jac_scalar(multiplier, x);
                if (keys.insert(s.order_key()).second) sy.push_back(s);
            }
            std::sort(sy.begin(), sy.end(),
                      [](const MumfordDivisor& a, const MumfordDivisor& b) { return a.order_key() < b.order_key(); });
        }
    } else {
        for (auto& [prime, exp] : prime_factors)
            sylows[prime.convert_to<std::uint64_t>()] = sylow_subgroup(curve, n, prime.convert_to<std::uint64_t>(), caps);
    }

    // per-prime bases, then merge aligned largest-first into invariant factors
    std::map<std::uint64_t, std::vector<MumfordDivisor>> bases;
    std::map<std::uint64_t, std::vector<unsigned>> exps;
    std::size_t rank = 0;
    for (auto& [ell, sylow] : sylows) {
        std::vector<unsigned> e;
        bases[ell] = sylow_basis(sylow, ell, e);
        exps[ell] = e;
        rank = std::max(rank, e.size());
    }

    std::vector<BigInt> factors(rank, 1);
    std::vector<MumfordDivisor> gens(rank, MumfordDivisor::identity(curve, n));
    for (auto& [ell, basis] : bases) {
        for (std::size_t i = 0; i < basis.size(); ++i) {
            BigInt part = big_pow(BigInt(ell), exps[ell][i]);
            factors[i] *= part;
            gens[i] = jac_add(gens[i], basis[i]);
        }
    }
    // descending now; spec wants d_1 | d_2 | ... ascending
    std::reverse(factors.begin(), factors.end());
    std::reverse(gens.begin(), gens.end());
    out.invariant_factors = factors;
    out.generators = gens;

    // verification: claimed orders and independence
    BigInt product = 1;
    for (const auto& d : factors) product *= d;
    if (product != G) throw Error(ErrorCode::VerificationFailed, "invariant factors do not multiply to the order");
    MumfordDivisor id = MumfordDivisor::identity(curve, n);
    for (std::size_t i = 0; i < rank; ++i) {
        if (element_order(gens[i], G) != factors[i])
            throw Error(ErrorCode::VerificationFailed, "generator order mismatch");
        if (i + 1 < rank && factors[i + 1] % factors[i] != 0)
            throw Error(ErrorCode::VerificationFailed, "invariant factors not a divisibility chain");
    }
    if (G <= caps.max_group && G <= kFullEnumerationLimit) {
        // independence by counting distinct combinations
        KeySet combos;
        std::function<void(std::size_t, const MumfordDivisor&)> walk = [&](std::size_t i, const MumfordDivisor& acc) {
            if (i == rank) {
                combos.insert(acc.order_key());
                return;
            }
            MumfordDivisor cur = acc;
            for (BigInt k = 0; k < factors[i]; ++k) {
                walk(i + 1, cur);
                cur = jac_add(cur, gens[i]);
            }
        };
        walk(0, id);
        if (BigInt(combos.size()) != G)
            throw Error(ErrorCode::VerificationFailed, "generators are not independent");
    }
    return out;
}

}  // namespace orbitw
