#include <doctest.h>

#include "pacorr/numtheory.hpp"

using namespace pacorr;

namespace {
bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}
}  // namespace

TEST_CASE("primality agrees with trial division below 10^5") {
    for (std::uint64_t n = 0; n < 100000; ++n) REQUIRE(is_prime(n) == trial_division(n));
}

TEST_CASE("primality on large inputs") {
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(18446744073709551615ULL));
    CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
    CHECK(is_prime(1000000007ULL));
}

TEST_CASE("default prime grid") {
    CHECK(next_prime(101) == 101);
    CHECK(next_prime(499) == 499);
    CHECK(next_prime(4999) == 4999);
    CHECK(next_prime(10007) == 10007);
    CHECK(next_prime(100003) == 100003);
    CHECK(next_prime(1000) == 1009);
    CHECK(primes_in_range(3, 100000).size() == 9591);
}

TEST_CASE("legendre symbol and inverses") {
    CHECK(legendre_symbol(2, 7) == 1);
    CHECK(legendre_symbol(3, 7) == -1);
    CHECK(legendre_symbol(14, 7) == 0);
    CHECK(legendre_symbol(-1, 13) == 1);
    for (std::uint64_t a = 1; a < 101; ++a) CHECK(a * inverse_mod(a, 101) % 101 == 1);
    CHECK(gcd_u64(12, 18) == 6);
    CHECK(powmod(3, 100, 1000000007ULL) == 886041711ULL);
}
