#include "orbitw/bigint.hpp"

#include <stdexcept>

#include "orbitw/errors.hpp"
#include "orbitw/rng.hpp"

namespace orbitw {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Sinclair's deterministic base set for the full 64-bit range.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
        std::uint64_t x = powmod_u64(a % n, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

BigInt big_pow(const BigInt& base, unsigned exp) {
    BigInt r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

namespace {

BigInt powmod_big(BigInt a, BigInt e, const BigInt& m) {
    BigInt r = 1;
    a %= m;
    while (e > 0) {
        if ((e & 1) != 0) r = r * a % m;
        a = a * a % m;
        e >>= 1;
    }
    return r;
}

bool is_prime_big(const BigInt& n) {
    if (n < (BigInt(1) << 62)) return is_prime_u64(static_cast<std::uint64_t>(n));
    if ((n & 1) == 0) return false;
    BigInt d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Fixed-base Miller-Rabin; 30 rounds is far beyond desk-scale risk.
    Rng rng(0x5ba7e1e5u);
    for (int round = 0; round < 30; ++round) {
        BigInt a = 2 + BigInt(rng.next()) % (n - 3);
        BigInt x = powmod_big(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

BigInt rho_factor(const BigInt& n, Rng& rng) {
    // Brent's cycle variant.
    if ((n & 1) == 0) return 2;
    while (true) {
        BigInt y = BigInt(rng.next()) % n;
        BigInt c = 1 + BigInt(rng.next()) % (n - 1);
        BigInt x = y, d = 1, q = 1, ys = y;
        std::uint64_t r = 1;
        const std::uint64_t step = 128;
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
            for (std::uint64_t k = 0; k < r && d == 1; k += step) {
                ys = y;
                std::uint64_t lim = std::min(step, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    BigInt diff = x > y ? x - y : y - x;
                    q = q * diff % n;
                }
                d = gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            while (d == 1) {
                ys = (ys * ys + c) % n;
                BigInt diff = x > ys ? x - ys : ys - x;
                d = gcd(diff, n);
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(const BigInt& n, std::map<BigInt, unsigned>& out, Rng& rng, int depth) {
    if (n == 1) return;
    if (depth > 64) throw Error(ErrorCode::CapExceeded, "factorization recursion too deep");
    if (is_prime_big(n)) {
        ++out[n];
        return;
    }
    BigInt d = rho_factor(n, rng);
    factor_rec(d, out, rng, depth + 1);
    factor_rec(n / d, out, rng, depth + 1);
}

}  // namespace

std::map<BigInt, unsigned> factorize(const BigInt& n) {
    if (n < 1) throw Error(ErrorCode::ZeroInput, "factorize requires n >= 1");
    std::map<BigInt, unsigned> out;
    BigInt m = n;
    for (std::uint64_t p = 2; p < 100000 && BigInt(p) * p <= m; p = (p == 2 ? 3 : p + 2)) {
        while (m % p == 0) {
            ++out[BigInt(p)];
            m /= p;
        }
    }
    if (m > 1) {
        Rng rng(0xfac70cafeULL);
        factor_rec(m, out, rng, 0);
    }
    return out;
}

std::map<std::uint64_t, unsigned> factorize_u64(std::uint64_t n) {
    std::map<std::uint64_t, unsigned> out;
    for (auto& [p, e] : factorize(BigInt(n))) out[static_cast<std::uint64_t>(p)] = e;
    return out;
}

BigInt inverse_mod(const BigInt& x, const BigInt& m) {
    BigInt r0 = m, r1 = x % m, t0 = 0, t1 = 1;
    if (r1 < 0) r1 += m;
    while (r1 != 0) {
        BigInt q = r0 / r1;
        BigInt r2 = r0 - q * r1;
        BigInt t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0 != 1) throw Error(ErrorCode::NotCoprime, "inverse_mod: arguments not coprime");
    t0 %= m;
    if (t0 < 0) t0 += m;
    return t0;
}

std::optional<std::uint64_t> to_u64(const BigInt& n) {
    if (n < 0 || n > BigInt(UINT64_MAX)) return std::nullopt;
    return static_cast<std::uint64_t>(n);
}

std::string to_string(const BigInt& n) { return n.str(); }

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::MismatchedParents: return "MismatchedParents";
        case ErrorCode::NonDividingBaseDegree: return "NonDividingBaseDegree";
        case ErrorCode::NonDividingDegree: return "NonDividingDegree";
        case ErrorCode::ZeroInput: return "ZeroInput";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NotSquarefree: return "NotSquarefree";
        case ErrorCode::EvenDegreeModel: return "EvenDegreeModel";
        case ErrorCode::GenusTooSmall: return "GenusTooSmall";
        case ErrorCode::MismatchedCurve: return "MismatchedCurve";
        case ErrorCode::NotCoprime: return "NotCoprime";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::VerificationFailed: return "VerificationFailed";
        case ErrorCode::HypothesisFailed: return "HypothesisFailed";
        case ErrorCode::NotSmooth: return "NotSmooth";
        case ErrorCode::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

}  // namespace orbitw
