#pragma once

#include <cstdint>
#include <vector>

namespace pacorr {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic Miller-Rabin; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Legendre symbol (a/p) in {-1, 0, 1} for an odd prime p.
int legendre_symbol(std::int64_t a, std::uint64_t p);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Inverse of a modulo prime p (a != 0 mod p).
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p);

}  // namespace pacorr
