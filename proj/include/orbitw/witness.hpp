#pragma once

#include <map>
#include <mutex>
#include <optional>

#include "orbitw/jacobian.hpp"

namespace orbitw {

/// Base-irreducible zero-cycle: the Frobenius orbit over F_{p^m} of a point
/// of degree `length` over that base, stored by its generator.
struct ZeroCycle {
    CurvePoint generator;
    unsigned base_degree;
    unsigned length;
};

std::vector<CurvePoint> cycle_support(const ZeroCycle& z);

/// Sum of embed_point over the orbit, computed over the stage field. The
/// result is fixed by Frobenius over the base, hence a base-field class.
MumfordDivisor cycle_class(const ZeroCycle& z, CurveHandle curve);

struct WitnessTrace {
    BigInt N;       // order of the target class at the base stage
    BigInt M;       // order of n*[c1] - a upstairs
    BigInt m;       // CRT multiplier: m = 1 mod N*ell, m = 0 mod M
    std::uint64_t scanned = 0;
    BigInt mu_raw;  // m * n before reduction
};

/// Certificate a = mu * [c] with mu = 1 (mod ell). Re-verified on
/// construction by both group-law implementations; cannot exist unverified.
struct Witness {
    MumfordDivisor a;
    std::uint64_t ell;
    BigInt mu;
    CurvePoint c;
    unsigned n;  // relative extension degree of c's field over the base
    WitnessTrace trace;
};

/// Least positive m with m = 1 (mod N*ell) and m = 0 (mod M).
/// Requires gcd(M, N*ell) = 1.
BigInt crt_multiplier(const BigInt& N, std::uint64_t ell, const BigInt& M);

struct WitnessConfig {
    unsigned base_degree = 1;
    unsigned n_max = 24;  // relative degree budget for searches
    Caps caps;
};

struct PairOutcome {
    MumfordDivisor a;
    std::uint64_t ell;
    std::optional<Witness> witness;
    std::string failure;       // error name when no witness
    std::uint64_t scanned = 0; // candidates examined by the failing search
};

struct VerifyAllReport {
    std::vector<PairOutcome> pairs;
    std::uint64_t total_pairs = 0;
    std::uint64_t witnessed = 0;
    unsigned max_n = 0;
    BigInt max_mu = 0;
    bool complete() const { return witnessed == total_pairs; }
};

/// Orchestrates the witness search over one curve and base stage, sharing the
/// stage-order, cycle, and group caches across calls. Individual operations
/// are pure; the engine only memoizes.
class WitnessEngine {
public:
    explicit WitnessEngine(CurveHandle curve, WitnessConfig config = {});

    const CurveHandle& curve() const { return curve_; }
    unsigned base_degree() const { return config_.base_degree; }
    const WitnessConfig& config() const { return config_; }

    /// |J(F_{p^m})| at the base stage.
    const BigInt& base_order();
    const std::vector<MumfordDivisor>& base_group();

    /// Smallest admissible relative degree n: n >= 2g+1, n = 1 (mod ell),
    /// gcd(n, N*ell) = 1, and |J(F_{p^(m n)})| / |J(F_{p^m})| coprime to
    /// N*ell. Throws CapExceeded (listing the rejected candidates) when no
    /// degree within the budget qualifies.
    unsigned choose_extension_degree(const BigInt& N, std::uint64_t ell);
    /// The same admissibility test, resumable: first admissible n > after.
    std::optional<unsigned> next_admissible_degree(const BigInt& N, std::uint64_t ell, unsigned after,
                                                   std::vector<unsigned>* rejected = nullptr);

    /// First point of C(F_{p^(m n)}) in canonical order whose Frobenius orbit
    /// over the base has length exactly n and whose cycle class equals the
    /// target. Restartable via start_index (position in the canonical point
    /// enumeration). Throws NotFound with the scan count when the stage is
    /// exhausted.
    ZeroCycle find_irreducible_cycle(const MumfordDivisor& target, unsigned rel_n,
                                     std::uint64_t start_index = 0, std::uint64_t* scanned_out = nullptr);

    /// The full search: pick degrees, find a cycle, solve the multiplier,
    /// verify. Retries the next admissible degree when a stage is exhausted
    /// or the coprimality guarantee fails.
    Witness find_witness(const MumfordDivisor& a, std::uint64_t ell);

    /// A witness or a per-pair diagnostic for every (a, ell) pair.
    VerifyAllReport verify_all(const std::vector<std::uint64_t>& ells, unsigned jobs = 1);

    BigInt stage_order(unsigned rel_n);

private:
    CurveHandle curve_;
    WitnessConfig config_;

    std::mutex mu_;
    std::optional<BigInt> base_order_;
    std::optional<std::vector<MumfordDivisor>> base_group_;
    std::map<unsigned, BigInt> stage_orders_;
    std::map<std::vector<std::uint64_t>, CurvePoint> base_image_;  // class key -> curve point
    bool base_image_built_ = false;
    struct CachedCycle {
        ZeroCycle cycle;
        std::uint64_t scanned;
    };
    std::map<std::pair<std::vector<std::uint64_t>, unsigned>, CachedCycle> cycles_;

    void build_base_image();
};

}  // namespace orbitw
