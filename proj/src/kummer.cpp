#include "orbitw/kummer.hpp"

#include <set>

namespace orbitw {

KummerPoint kummer_quotient(const MumfordDivisor& a) {
    MumfordDivisor neg = jac_neg(a);
    bool smooth = !(neg == a);  // a = -a exactly on the 2-torsion
    return KummerPoint{a.order_key() <= neg.order_key() ? a : neg, smooth};
}

KummerWitness rational_curve_witness(const KummerPoint& y, WitnessEngine& engine, std::uint64_t ell) {
    if (!y.smooth) throw Error(ErrorCode::NotSmooth, "the point lies under the 2-torsion");
    Witness w = engine.find_witness(y.rep, ell);

    // certificate: the quotient of mu*[c] is y
    const unsigned stage_degree = w.c.parent()->degree();
    MumfordDivisor product = jac_scalar(w.mu, embed_point(w.c, engine.curve()));
    MumfordDivisor descended = restrict_class(product, engine.base_degree());
    if (!(kummer_quotient(descended) == y))
        throw Error(ErrorCode::VerificationFailed, "quotient of the witness multiple misses the target");
    (void)stage_degree;
    return KummerWitness{y, w.mu, w.c, w.n};
}

KummerSweepReport kummer_sweep(WitnessEngine& engine, std::uint64_t ell) {
    KummerSweepReport report;
    std::set<std::vector<std::uint64_t>> seen;
    for (const auto& a : engine.base_group()) {
        KummerPoint y = kummer_quotient(a);
        if (!seen.insert(y.rep.order_key()).second) continue;
        if (!y.smooth) {
            ++report.non_smooth_count;
            continue;
        }
        ++report.smooth_count;
        try {
            report.witnesses.push_back(rational_curve_witness(y, engine, ell));
        } catch (const Error&) {
            report.missed.push_back(y);
        }
    }
    return report;
}

}  // namespace orbitw
