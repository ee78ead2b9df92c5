#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pacorr/sequence.hpp"

namespace pacorr {

/// C_u(S) for u = 0..m-1 together with C(S) = max_{u != 0} |C_u(S)|.
struct AutocorrSpectrum {
    std::size_t m = 0;
    std::vector<std::int64_t> values;
    std::int64_t max_nontrivial = 0;
};

enum class Exec { serial, parallel };

/// Sequences shorter than this never fork an OpenMP team in the spectrum kernel.
inline constexpr std::size_t kParallelSpectrumMinLength = 4096;

/// C_u(S) = sum_i s_i s_{(i+u) mod m}. Throws InvalidArgument unless 0 <= u < m.
std::int64_t periodic_autocorrelation(const BinarySequence& s, std::size_t u);

/// Bit-sliced O(m^2 / 64) spectrum. Shifts u and m-u share a value, so only
/// u <= m/2 is computed. Requires m >= 2.
AutocorrSpectrum full_spectrum(const BinarySequence& s, Exec exec = Exec::parallel);

/// Same kernel, but every shift is computed on its own (no symmetry folding).
/// Used to spot-check the symmetry invariant on sampled spectra.
std::vector<std::int64_t> unfolded_spectrum(const BinarySequence& s, Exec exec = Exec::serial);

/// C^ap_u(S) = sum over 0 <= k, k+u < m of s_k s_{k+u}.
std::int64_t aperiodic_autocorrelation(const BinarySequence& s, std::size_t u);

/// C'_u(S): the periodic sum restricted to i in F_m^*, i != -u. Index 0 is
/// unused (returned as 0). Requires m >= 3.
std::vector<std::int64_t> truncated_spectrum(const BinarySequence& s, Exec exec = Exec::parallel);

/// C'(S) = max_{u != 0} |C'_u(S)|. Requires m >= 3.
std::int64_t truncated_max(const BinarySequence& s, Exec exec = Exec::parallel);

namespace reference {

/// Direct O(m) sum over the +-1 entries.
std::int64_t periodic_autocorrelation(const BinarySequence& s, std::size_t u);

/// Naive O(m^2) double loop over every shift.
AutocorrSpectrum full_spectrum(const BinarySequence& s);

/// Direct sum for C'_u.
std::int64_t truncated_autocorrelation(const BinarySequence& s, std::size_t u);

}  // namespace reference

}  // namespace pacorr
