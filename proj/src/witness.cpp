#include "orbitw/witness.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "orbitw/indep_check.hpp"

namespace orbitw {

std::vector<CurvePoint> cycle_support(const ZeroCycle& z) {
    return frobenius_orbit(z.generator, z.base_degree);
}

MumfordDivisor cycle_class(const ZeroCycle& z, CurveHandle curve) {
    MumfordDivisor acc = MumfordDivisor::identity(curve, z.generator.parent()->degree());
    for (const auto& pt : cycle_support(z)) acc = jac_add(acc, embed_point(pt, curve));
    // orbit sums are Frobenius-invariant over the base; anything else is a bug
    if (frobenius_on_class(acc, z.base_degree) != acc)
        throw Error(ErrorCode::VerificationFailed, "cycle class is not Frobenius-invariant");
    return acc;
}

BigInt crt_multiplier(const BigInt& N, std::uint64_t ell, const BigInt& M) {
    BigInt modulus = N * ell;
    if (gcd(M, modulus) != 1) throw Error(ErrorCode::NotCoprime, "M shares a factor with N*ell");
    if (modulus == 1) return M;
    if (M == 1) return 1;
    // m = M * (M^-1 mod N*ell)
    return M * inverse_mod(M % modulus, modulus);
}

WitnessEngine::WitnessEngine(CurveHandle curve, WitnessConfig config)
    : curve_(std::move(curve)), config_(config) {
    if (config_.base_degree < 1) throw Error(ErrorCode::MalformedInput, "base degree must be >= 1");
}

const BigInt& WitnessEngine::base_order() {
    std::scoped_lock lock(mu_);
    if (!base_order_) base_order_ = order_at_stage(curve_, 1, config_.base_degree, config_.caps);
    return *base_order_;
}

const std::vector<MumfordDivisor>& WitnessEngine::base_group() {
    std::scoped_lock lock(mu_);
    if (!base_group_) base_group_ = enumerate_group(curve_, config_.base_degree, config_.caps);
    return *base_group_;
}

BigInt WitnessEngine::stage_order(unsigned rel_n) {
    std::scoped_lock lock(mu_);
    auto it = stage_orders_.find(rel_n);
    if (it != stage_orders_.end()) return it->second;
    BigInt value = order_at_stage(curve_, config_.base_degree, rel_n, config_.caps);
    stage_orders_.emplace(rel_n, value);
    return value;
}

std::optional<unsigned> WitnessEngine::next_admissible_degree(const BigInt& N, std::uint64_t ell,
                                                              unsigned after,
                                                              std::vector<unsigned>* rejected) {
    const unsigned floor_n = 2 * curve_->genus + 1;
    const BigInt nl = N * ell;
    for (unsigned n = std::max(after + 1, floor_n); n <= config_.n_max; ++n) {
        unsigned abs_degree = n * config_.base_degree;
        if (abs_degree > config_.caps.max_degree) break;
        double bits = abs_degree * std::log2(static_cast<double>(curve_->p));
        if (bits > config_.caps.max_field_bits) break;
        if (ell > 1 && n % ell != 1) continue;
        if (gcd(BigInt(n), nl) != 1) {
            if (rejected) rejected->push_back(n);
            continue;
        }
        BigInt quotient = stage_order(n) / base_order();
        if (stage_order(n) % base_order() != 0)
            throw Error(ErrorCode::VerificationFailed, "base order does not divide the stage order");
        if (gcd(quotient, nl) != 1) {
            if (rejected) rejected->push_back(n);
            continue;
        }
        return n;
    }
    return std::nullopt;
}

unsigned WitnessEngine::choose_extension_degree(const BigInt& N, std::uint64_t ell) {
    std::vector<unsigned> rejected;
    std::optional<unsigned> n = next_admissible_degree(N, ell, 0, &rejected);
    if (!n) {
        std::ostringstream msg;
        msg << "no admissible extension degree within the cap (rejected:";
        for (unsigned r : rejected) msg << ' ' << r;
        msg << ")";
        throw Error(ErrorCode::CapExceeded, msg.str());
    }
    return *n;
}

ZeroCycle WitnessEngine::find_irreducible_cycle(const MumfordDivisor& target, unsigned rel_n,
                                                std::uint64_t start_index, std::uint64_t* scanned_out) {
    const unsigned g = curve_->genus;
    if (rel_n < 2 * g + 1)
        throw Error(ErrorCode::MalformedInput, "cycle degree below 2g+1");
    if (target.stage_degree() != config_.base_degree)
        throw Error(ErrorCode::MismatchedCurve, "target class must live at the base stage");

    const auto cache_key = std::make_pair(target.order_key(), rel_n);
    if (start_index == 0) {
        std::scoped_lock lock(mu_);
        auto it = cycles_.find(cache_key);
        if (it != cycles_.end()) {
            if (scanned_out) *scanned_out = it->second.scanned;
            return it->second.cycle;
        }
    }

    const unsigned stage_degree = rel_n * config_.base_degree;
    MumfordDivisor lifted_target = divisor_embed(target, stage_degree);

    PointStream stream(curve_, stage_degree, config_.caps);
    std::uint64_t index = 0, scanned = 0;
    while (auto pt = stream.next()) {
        if (index++ < start_index) continue;
        ++scanned;
        if (pt->is_infinity()) continue;
        std::vector<CurvePoint> orbit = frobenius_orbit(*pt, config_.base_degree);
        if (orbit.size() != rel_n) continue;
        MumfordDivisor sum = MumfordDivisor::identity(curve_, stage_degree);
        for (const auto& q : orbit) sum = jac_add(sum, embed_point(q, curve_));
        if (sum != lifted_target) continue;
        ZeroCycle cycle{*pt, config_.base_degree, rel_n};
        if (scanned_out) *scanned_out = scanned;
        if (start_index == 0) {
            std::scoped_lock lock(mu_);
            cycles_.emplace(cache_key, CachedCycle{cycle, scanned});
        }
        return cycle;
    }
    throw NotFoundError("no base-irreducible cycle over the target at this stage", scanned);
}

void WitnessEngine::build_base_image() {
    std::scoped_lock lock(mu_);
    if (base_image_built_) return;
    PointStream stream(curve_, config_.base_degree, config_.caps);
    while (auto pt = stream.next()) {
        base_image_.emplace(embed_point(*pt, curve_).order_key(), *pt);
    }
    base_image_built_ = true;
}

Witness WitnessEngine::find_witness(const MumfordDivisor& a, std::uint64_t ell) {
    if (ell < 1) throw Error(ErrorCode::MalformedInput, "ell must be >= 1");
    if (a.stage_degree() != config_.base_degree)
        throw Error(ErrorCode::MismatchedCurve, "target class must live at the base stage");

    auto finish = [&](Witness w) {
        bool ok = indep::verify_witness(*curve_, a.u(), a.v(), w.ell, w.mu, w.c);
        if (!ok) throw Error(ErrorCode::VerificationFailed, "independent witness verification failed");
        return w;
    };

    // fast paths: the identity, and targets already on the embedded curve
    if (a.is_identity()) {
        Witness w{a, ell, 1, CurvePoint::infinity(a.stage_field()), 1,
                  WitnessTrace{1, 1, 1, 0, 1}};
        return finish(std::move(w));
    }
    const BigInt base_ord = base_order();
    build_base_image();
    {
        std::scoped_lock lock(mu_);
        auto it = base_image_.find(a.order_key());
        if (it != base_image_.end()) {
            Witness w{a, ell, 1, it->second, 1, WitnessTrace{element_order(a, base_ord), 1, 1, 0, 1}};
            return finish(std::move(w));
        }
    }

    const BigInt N = element_order(a, base_ord);
    const BigInt nl = N * ell;

    unsigned n_prev = 0;
    std::vector<unsigned> rejected;
    while (auto n_opt = next_admissible_degree(N, ell, n_prev, &rejected)) {
        const unsigned rel_n = *n_opt;
        n_prev = rel_n;
        std::uint64_t scanned = 0;
        ZeroCycle cycle{CurvePoint::infinity(a.stage_field()), config_.base_degree, 0};
        try {
            cycle = find_irreducible_cycle(a, rel_n, 0, &scanned);
        } catch (const NotFoundError&) {
            continue;  // stage too small for this target; try the next degree
        }
        const unsigned stage_degree = rel_n * config_.base_degree;
        const BigInt upstairs_order = stage_order(rel_n);

        MumfordDivisor c1_class = embed_point(cycle.generator, curve_);
        MumfordDivisor lifted_a = divisor_embed(a, stage_degree);
        MumfordDivisor d = jac_sub(jac_scalar(BigInt(rel_n), c1_class), lifted_a);
        BigInt M = element_order(d, upstairs_order);
        if (gcd(M, nl) != 1) continue;  // guarantee failed at this stage; retry

        BigInt m = crt_multiplier(N, ell, M);
        BigInt mu_raw = m * rel_n;
        BigInt reduction_modulus = lcm(element_order(c1_class, upstairs_order), BigInt(ell) * N);
        BigInt mu = mu_raw % reduction_modulus;
        if (mu == 0) mu = reduction_modulus;

        if (ell > 1 && mu % ell != 1)
            throw Error(ErrorCode::VerificationFailed, "multiplier not 1 mod ell");
        if (jac_scalar(mu, c1_class) != lifted_a)
            throw Error(ErrorCode::VerificationFailed, "scalar multiple does not hit the target");

        Witness w{a, ell, mu, cycle.generator, rel_n, WitnessTrace{N, M, m, scanned, mu_raw}};
        return finish(std::move(w));
    }

    std::ostringstream msg;
    msg << "witness search exhausted the degree budget (rejected:";
    for (unsigned r : rejected) msg << ' ' << r;
    msg << ")";
    throw Error(ErrorCode::CapExceeded, msg.str());
}

VerifyAllReport WitnessEngine::verify_all(const std::vector<std::uint64_t>& ells, unsigned jobs) {
    const std::vector<MumfordDivisor>& group = base_group();
    std::vector<std::pair<std::size_t, std::uint64_t>> tasks;  // (group index, ell)
    for (std::size_t i = 0; i < group.size(); ++i)
        for (std::uint64_t ell : ells) tasks.emplace_back(i, ell);

    VerifyAllReport report;
    report.total_pairs = tasks.size();
    report.pairs.resize(tasks.size(), PairOutcome{MumfordDivisor::identity(curve_, config_.base_degree), 0, std::nullopt, "", 0});

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        for (std::size_t t = lo; t < hi; ++t) {
            const auto& [gi, ell] = tasks[t];
            PairOutcome outcome{group[gi], ell, std::nullopt, "", 0};
            try {
                outcome.witness = find_witness(group[gi], ell);
            } catch (const NotFoundError& e) {
                outcome.failure = error_code_name(e.code());
                outcome.scanned = e.scanned();
            } catch (const Error& e) {
                outcome.failure = error_code_name(e.code());
            }
            report.pairs[t] = std::move(outcome);
        }
    };

    if (jobs <= 1) {
        run_range(0, tasks.size());
    } else {
        std::vector<std::future<void>> futures;
        const std::size_t chunk = (tasks.size() + jobs - 1) / jobs;
        for (unsigned w = 0; w < jobs; ++w) {
            std::size_t lo = std::min<std::size_t>(w * chunk, tasks.size());
            std::size_t hi = std::min<std::size_t>(lo + chunk, tasks.size());
            if (lo < hi) futures.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& f : futures) f.get();
    }

    for (const auto& outcome : report.pairs) {
        if (outcome.witness) {
            ++report.witnessed;
            report.max_n = std::max(report.max_n, outcome.witness->n);
            report.max_mu = std::max(report.max_mu, outcome.witness->mu);
        }
    }
    return report;
}

}  // namespace orbitw
