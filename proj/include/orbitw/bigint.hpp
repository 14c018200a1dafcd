#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace orbitw {

using BigInt = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

/// 64-bit deterministic Miller-Rabin (exact for all uint64 inputs).
bool is_prime_u64(std::uint64_t n);

/// n-th power with small exponent.
BigInt big_pow(const BigInt& base, unsigned exp);

/// Full factorization of n >= 1 (trial division then Brent's rho).
/// Desk-scale inputs only; throws on inputs that resist both.
std::map<BigInt, unsigned> factorize(const BigInt& n);

std::map<std::uint64_t, unsigned> factorize_u64(std::uint64_t n);

/// x^-1 mod m for gcd(x, m) = 1.
BigInt inverse_mod(const BigInt& x, const BigInt& m);

std::optional<std::uint64_t> to_u64(const BigInt& n);

std::string to_string(const BigInt& n);

}  // namespace orbitw
