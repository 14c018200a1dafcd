#include "orbitw/sieve.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "orbitw/indep_check.hpp"

namespace orbitw {

BigInt gl_order(unsigned n, std::uint64_t ell) {
    if (n < 1) throw Error(ErrorCode::MalformedInput, "gl_order needs n >= 1");
    BigInt ln = big_pow(BigInt(ell), n);
    BigInt out = 1;
    BigInt li = 1;
    for (unsigned i = 0; i < n; ++i) {
        out *= ln - li;
        li *= ell;
    }
    return out;
}

std::uint64_t choose_p(unsigned g, const std::vector<std::uint64_t>& S) {
    if (g < 1 || g > 10) throw Error(ErrorCode::MalformedInput, "genus out of the supported range");
    std::uint64_t factorial = 1;
    for (std::uint64_t i = 2; i <= 2 * static_cast<std::uint64_t>(g); ++i) factorial *= i;
    std::vector<BigInt> orders;
    orders.reserve(S.size());
    for (std::uint64_t ell : S) orders.push_back(gl_order(2 * g, ell));
    for (std::uint64_t p = factorial + 1;; ++p) {
        if (!is_prime_u64(p)) continue;
        bool ok = true;
        for (const BigInt& o : orders) {
            if (o % p == 0) {
                ok = false;
                break;
            }
        }
        if (ok) return p;
    }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t B) {
    std::vector<std::uint64_t> out;
    if (B < 2) return out;
    std::vector<bool> composite(B + 1, false);
    for (std::uint64_t i = 2; i <= B; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= B; j += i) composite[j] = true;
    }
    return out;
}

PiSet sieve_pi(std::uint64_t p, unsigned g, std::uint64_t B) {
    if (!is_prime_u64(p)) throw Error(ErrorCode::MalformedInput, "auxiliary modulus must be prime");
    PiSet out{p, g, B, {}};
    for (std::uint64_t ell : primes_up_to(B)) {
        if (ell == p) continue;
        if (multiplicative_order_mod(ell % p, p) > 2 * g) out.primes.push_back(ell);
    }
    return out;
}

std::string Fraction::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Fraction density_estimate(std::uint64_t p, unsigned g) {
    if (!is_prime_u64(p)) throw Error(ErrorCode::MalformedInput, "auxiliary modulus must be prime");
    std::uint64_t qualifying = 0;
    for (std::uint64_t r = 1; r < p; ++r)
        if (multiplicative_order_mod(r, p) > 2 * g) ++qualifying;
    std::uint64_t den = p - 1;
    std::uint64_t common = std::gcd(qualifying, den);
    if (common == 0) common = 1;
    return Fraction{qualifying / common, den / common};
}

SurjectivityReport surjectivity_check(CurveHandle curve, unsigned base_degree, const PiSet& pi,
                                      unsigned n_max, const Caps& caps) {
    SurjectivityReport report;
    const BigInt group_order = order_at_stage(curve, 1, base_degree, caps);
    for (std::uint64_t ell : pi.primes)
        if (group_order % ell == 0) report.pi_used.push_back(ell);

    // materialize the Sylow subgroups and form the direct-sum targets
    std::vector<std::vector<MumfordDivisor>> sylows;
    for (std::uint64_t ell : report.pi_used)
        sylows.push_back(sylow_subgroup(curve, base_degree, ell, caps));

    MumfordDivisor id = MumfordDivisor::identity(curve, base_degree);
    std::vector<SurjectivityTarget> targets;
    std::vector<std::size_t> idx(sylows.size(), 0);
    while (true) {
        SurjectivityTarget t{id, {}, false, std::nullopt, 0};
        for (std::size_t i = 0; i < sylows.size(); ++i) {
            const MumfordDivisor& s = sylows[i][idx[i]];
            t.components.emplace_back(report.pi_used[i], s);
            t.element = jac_add(t.element, s);
        }
        targets.push_back(std::move(t));
        std::size_t pos = sylows.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < sylows[pos].size()) {
                done = false;
                break;
            }
            idx[pos] = 0;
        }
        if (sylows.empty() || done) break;
    }

    // index targets by the tuple of projected components
    std::map<std::vector<std::uint64_t>, std::size_t> by_components;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        std::vector<std::uint64_t> key;
        for (const auto& [ell, s] : targets[i].components) {
            auto part = s.order_key();
            key.insert(key.end(), part.begin(), part.end());
        }
        by_components[key] = i;
    }

    Poly f_base = lift_curve_poly(*curve, ext_construct(curve->p, base_degree, caps));
    std::size_t remaining = targets.size();
    for (unsigned r = 1; r <= n_max && remaining > 0; ++r) {
        const unsigned stage_degree = base_degree * r;
        if (stage_degree > caps.max_degree) break;
        double bits = stage_degree * std::log2(static_cast<double>(curve->p));
        if (bits > caps.max_field_bits) break;

        PointStream stream(curve, stage_degree, caps);
        while (auto pt = stream.next()) {
            // trace the class to the base, then split into Sylow components
            MumfordDivisor cls = embed_point(*pt, curve);
            MumfordDivisor trace = cls;
            MumfordDivisor conj = cls;
            for (unsigned j = 1; j < r; ++j) {
                conj = frobenius_on_class(conj, base_degree);
                trace = jac_add(trace, conj);
            }
            MumfordDivisor based = restrict_class(trace, base_degree);
            std::vector<std::uint64_t> key;
            std::vector<MumfordDivisor> projections;
            for (std::uint64_t ell : report.pi_used) {
                MumfordDivisor proj = ell_primary_projection(based, ell, caps);
                auto part = proj.order_key();
                key.insert(key.end(), part.begin(), part.end());
                projections.push_back(std::move(proj));
            }
            auto it = by_components.find(key);
            if (it == by_components.end()) continue;
            SurjectivityTarget& target = targets[it->second];
            if (target.hit) continue;

            // independent re-verification of every projected component
            Field stage = ext_construct(curve->p, base_degree, caps);
            indep::Divisor base_div{based.u(), based.v()};
            bool ok = true;
            for (std::size_t i = 0; i < report.pi_used.size() && ok; ++i) {
                indep::Divisor redo =
                    indep::project_ell(base_div, report.pi_used[i], group_order, f_base, curve->genus);
                ok = redo.u == target.components[i].second.u() && redo.v == target.components[i].second.v();
            }
            (void)stage;
            if (!ok) throw Error(ErrorCode::VerificationFailed, "independent projection disagrees");

            target.hit = true;
            target.point = *pt;
            target.r = r;
            report.max_r = std::max(report.max_r, r);
            if (--remaining == 0) break;
        }
    }

    report.targets = std::move(targets);
    return report;
}

}  // namespace orbitw
