// Bit-sliced periodic autocorrelation kernel.
//
// With bit 1 <-> -1, s_i s_{i+u} = +1 iff the bits agree, so
//   C_u = m - 2 * popcount(S xor rot_u(S)).
// rot_u(S) is read out of a doubled copy D = S || S of the packed bits: the
// window of D starting at bit u is exactly S cyclically rotated left by u, so
// the wrap-around bits are carried without any per-shift rebuild.

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "pacorr/autocorr.hpp"
#include "pacorr/errors.hpp"

namespace pacorr {

namespace {

void or_bits_at(std::vector<std::uint64_t>& dst, std::size_t offset, std::uint64_t word) {
    const std::size_t q = offset >> 6;
    const unsigned r = offset & 63;
    dst[q] |= word << r;
    if (r != 0) dst[q + 1] |= word >> (64 - r);
}

std::vector<std::uint64_t> doubled_words(const BinarySequence& s) {
    const std::size_t m = s.length();
    std::vector<std::uint64_t> d((2 * m + 63) / 64 + 1, 0);
    const auto w = s.words();
    // Copy first: the second copy starts inside word m/64, which the first one also fills.
    std::copy(w.begin(), w.end(), d.begin());
    for (std::size_t i = 0; i < w.size(); ++i) or_bits_at(d, m + 64 * i, w[i]);
    return d;
}

std::int64_t mismatches(const std::uint64_t* s, const std::uint64_t* d, std::size_t n_words, std::size_t u,
                        std::uint64_t tail) {
    const std::uint64_t* dq = d + (u >> 6);
    const unsigned r = u & 63;
    std::int64_t sum = 0;
    const std::size_t last = n_words - 1;
    if (r == 0) {
        for (std::size_t w = 0; w < last; ++w) sum += std::popcount(s[w] ^ dq[w]);
        sum += std::popcount((s[last] ^ dq[last]) & tail);
    } else {
        const unsigned l = 64 - r;
        for (std::size_t w = 0; w < last; ++w) sum += std::popcount(s[w] ^ ((dq[w] >> r) | (dq[w + 1] << l)));
        sum += std::popcount((s[last] ^ ((dq[last] >> r) | (dq[last + 1] << l))) & tail);
    }
    return sum;
}

bool fork_team(Exec exec, std::size_t m) {
    return exec == Exec::parallel && m >= kParallelSpectrumMinLength && !omp_in_parallel();
}

}  // namespace

std::int64_t periodic_autocorrelation(const BinarySequence& s, std::size_t u) {
    const std::size_t m = s.length();
    if (u >= m) throw InvalidArgument("periodic_autocorrelation: shift out of range");
    const auto d = doubled_words(s);
    return static_cast<std::int64_t>(m) - 2 * mismatches(s.words().data(), d.data(), s.word_count(), u, s.tail_mask());
}

AutocorrSpectrum full_spectrum(const BinarySequence& s, Exec exec) {
    const std::size_t m = s.length();
    if (m < 2) throw InvalidArgument("full_spectrum: m must be >= 2 (F_m^* is empty for m = 1)");
    const auto d = doubled_words(s);
    const std::uint64_t* sw = s.words().data();
    const std::size_t n_words = s.word_count();
    const std::uint64_t tail = s.tail_mask();
    const auto mi = static_cast<std::int64_t>(m);

    AutocorrSpectrum out{m, std::vector<std::int64_t>(m, 0), 0};
    out.values[0] = mi;
    std::int64_t* vals = out.values.data();
    const auto half = static_cast<std::int64_t>(m / 2);

#pragma omp parallel for schedule(static) if (fork_team(exec, m))
    for (std::int64_t u = 1; u <= half; ++u) {
        const std::int64_t c = mi - 2 * mismatches(sw, d.data(), n_words, static_cast<std::size_t>(u), tail);
        vals[u] = c;
        vals[mi - u] = c;
    }

    std::int64_t best = 0;
    for (std::size_t u = 1; u < m; ++u) best = std::max(best, std::abs(vals[u]));
    out.max_nontrivial = best;
    return out;
}

std::vector<std::int64_t> unfolded_spectrum(const BinarySequence& s, Exec exec) {
    const std::size_t m = s.length();
    if (m < 2) throw InvalidArgument("unfolded_spectrum: m must be >= 2");
    const auto d = doubled_words(s);
    const std::uint64_t* sw = s.words().data();
    const std::size_t n_words = s.word_count();
    const std::uint64_t tail = s.tail_mask();
    const auto mi = static_cast<std::int64_t>(m);
    std::vector<std::int64_t> vals(m);

#pragma omp parallel for schedule(static) if (fork_team(exec, m))
    for (std::int64_t u = 0; u < mi; ++u) {
        vals[u] = mi - 2 * mismatches(sw, d.data(), n_words, static_cast<std::size_t>(u), tail);
    }
    return vals;
}

std::int64_t aperiodic_autocorrelation(const BinarySequence& s, std::size_t u) {
    const std::size_t m = s.length();
    if (u >= m) throw InvalidArgument("aperiodic_autocorrelation: shift out of range");
    std::int64_t sum = 0;
    for (std::size_t k = 0; k + u < m; ++k) sum += s.at(k) * s.at(k + u);
    return sum;
}

std::vector<std::int64_t> truncated_spectrum(const BinarySequence& s, Exec exec) {
    const std::size_t m = s.length();
    if (m < 3) throw InvalidArgument("truncated_spectrum: m must be >= 3");
    const AutocorrSpectrum full = full_spectrum(s, exec);
    // Drop the i = 0 term s_0 s_u and the i = -u term s_{m-u} s_0.
    std::vector<std::int64_t> out(m, 0);
    const int s0 = s.at(0);
    for (std::size_t u = 1; u < m; ++u) out[u] = full.values[u] - s0 * (s.at(u) + s.at(m - u));
    return out;
}

std::int64_t truncated_max(const BinarySequence& s, Exec exec) {
    const auto t = truncated_spectrum(s, exec);
    std::int64_t best = 0;
    for (std::size_t u = 1; u < t.size(); ++u) best = std::max(best, std::abs(t[u]));
    return best;
}

}  // namespace pacorr
