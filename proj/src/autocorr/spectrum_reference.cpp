// Serial reference implementations. Kept deliberately naive: they are the
// oracle the bit-sliced kernel is tested and benchmarked against.

#include <algorithm>
#include <cstdlib>

#include "pacorr/autocorr.hpp"
#include "pacorr/errors.hpp"

namespace pacorr::reference {

std::int64_t periodic_autocorrelation(const BinarySequence& s, std::size_t u) {
    const std::size_t m = s.length();
    if (u >= m) throw InvalidArgument("periodic_autocorrelation: shift out of range");
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < m; ++i) sum += s.at(i) * s.at((i + u) % m);
    return sum;
}

AutocorrSpectrum full_spectrum(const BinarySequence& s) {
    const std::size_t m = s.length();
    if (m < 2) throw InvalidArgument("full_spectrum: m must be >= 2");
    const std::vector<int> signs = s.to_signs();
    AutocorrSpectrum out{m, std::vector<std::int64_t>(m, 0), 0};
    for (std::size_t u = 0; u < m; ++u) {
        std::int64_t sum = 0;
        for (std::size_t i = 0; i < m; ++i) sum += signs[i] * signs[(i + u) % m];
        out.values[u] = sum;
        if (u != 0) out.max_nontrivial = std::max(out.max_nontrivial, std::abs(sum));
    }
    return out;
}

std::int64_t truncated_autocorrelation(const BinarySequence& s, std::size_t u) {
    const std::size_t m = s.length();
    if (m < 3) throw InvalidArgument("truncated_autocorrelation: m must be >= 3");
    if (u == 0 || u >= m) throw InvalidArgument("truncated_autocorrelation: shift must lie in F_m^*");
    std::int64_t sum = 0;
    for (std::size_t i = 1; i < m; ++i) {
        if (i == m - u) continue;
        sum += s.at(i) * s.at((i + u) % m);
    }
    return sum;
}

}  // namespace pacorr::reference
