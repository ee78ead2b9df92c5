#pragma once

// Independent test-side oracles: plain loops over +-1 vectors and tuples,
// sharing no code with the library kernels.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <vector>

namespace testing_oracle {

inline std::vector<int> signs_of_mask(std::uint64_t mask, std::size_t m) {
    std::vector<int> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = ((mask >> i) & 1u) ? -1 : 1;
    return s;
}

inline long long periodic(const std::vector<int>& s, std::size_t u) {
    const std::size_t m = s.size();
    long long c = 0;
    for (std::size_t i = 0; i < m; ++i) c += s[i] * s[(i + u) % m];
    return c;
}

inline long long max_nontrivial(const std::vector<int>& s) {
    long long best = 0;
    for (std::size_t u = 1; u < s.size(); ++u) best = std::max(best, std::llabs(periodic(s, u)));
    return best;
}

// Number of x in Z_m^n with (x_1, x_1 + a_1, ..., x_n, x_n + a_n) even.
inline std::uint64_t xi_even_count(std::size_t m, const std::vector<std::size_t>& xi) {
    const std::size_t n = xi.size();
    std::vector<std::size_t> x(n, 0);
    std::uint64_t count = 0;
    while (true) {
        std::vector<int> parity(m, 0);
        for (std::size_t i = 0; i < n; ++i) {
            parity[x[i]] ^= 1;
            parity[(x[i] + xi[i]) % m] ^= 1;
        }
        bool even = true;
        for (int p : parity) even = even && p == 0;
        count += even ? 1 : 0;
        std::size_t i = 0;
        while (i < n && ++x[i] == m) x[i++] = 0;
        if (i == n) break;
    }
    return count;
}

// Sum over all 2^m sequences of prod_i C_{shifts[i]}.
inline long long shift_product_sum(std::size_t m, const std::vector<std::size_t>& shifts) {
    long long total = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        const auto s = signs_of_mask(mask, m);
        long long prod = 1;
        for (auto u : shifts) prod *= periodic(s, u);
        total += prod;
    }
    return total;
}

}  // namespace testing_oracle
