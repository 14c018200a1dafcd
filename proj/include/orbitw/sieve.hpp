#pragma once

#include <optional>

#include "orbitw/jacobian.hpp"

namespace orbitw {

/// |GL_n(Z/ell)| = prod_{i=0}^{n-1} (ell^n - ell^i).
BigInt gl_order(unsigned n, std::uint64_t ell);

/// Smallest prime p > (2g)! with p not dividing gl_order(2g, ell) for any
/// ell in S.
std::uint64_t choose_p(unsigned g, const std::vector<std::uint64_t>& S);

/// Primes ell <= B with ell != p and ord(ell mod p) > 2g. Contains S whenever
/// S's members are <= B and the auxiliary prime was chosen for S.
struct PiSet {
    std::uint64_t p;
    unsigned g;
    std::uint64_t B;
    std::vector<std::uint64_t> primes;
};
PiSet sieve_pi(std::uint64_t p, unsigned g, std::uint64_t B);

/// Exact reduced fraction.
struct Fraction {
    std::uint64_t num;
    std::uint64_t den;
    std::string str() const;
};

/// Fraction of units mod p with multiplicative order > 2g: the Dirichlet
/// density of the sieve among primes.
Fraction density_estimate(std::uint64_t p, unsigned g);

std::vector<std::uint64_t> primes_up_to(std::uint64_t B);

struct SurjectivityTarget {
    MumfordDivisor element;                                // the sum over the components
    std::vector<std::pair<std::uint64_t, MumfordDivisor>> components;  // (ell, Sylow part)
    bool hit = false;
    std::optional<CurvePoint> point;
    unsigned r = 0;  // relative degree of the hitting point
};

struct SurjectivityReport {
    std::vector<std::uint64_t> pi_used;  // Pi restricted to primes dividing the group order
    std::vector<SurjectivityTarget> targets;
    unsigned max_r = 0;
    bool complete() const {
        for (const auto& t : targets)
            if (!t.hit) return false;
        return true;
    }
};

/// For every element of the direct sum of the ell-Sylow subgroups of
/// J(F_{p^m}) over ell in Pi, searches for a curve point over an extension of
/// relative degree <= n_max whose class, traced to the base and projected
/// component-wise, equals the target. Hits are re-verified with the
/// independent projection; misses are reported, not thrown.
SurjectivityReport surjectivity_check(CurveHandle curve, unsigned base_degree, const PiSet& pi,
                                      unsigned n_max, const Caps& caps = {});

}  // namespace orbitw
