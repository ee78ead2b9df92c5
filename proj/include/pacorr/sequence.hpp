#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pacorr {

/// A length-m sequence over {-1, +1}, packed 64 entries per word.
///
/// Bit i set means s_i = -1, clear means s_i = +1, so s_i * s_j = +1 exactly
/// when the two bits agree and correlations reduce to XOR + popcount.
/// Padding bits above position m-1 in the last word are always zero.
class BinarySequence {
public:
    static constexpr std::size_t kWordBits = 64;

    BinarySequence() = default;

    /// All-(+1) sequence of length m. Throws InvalidArgument for m == 0.
    explicit BinarySequence(std::size_t m);

    /// From packed words; padding bits are cleared.
    BinarySequence(std::size_t m, std::vector<std::uint64_t> words);

    static BinarySequence from_signs(std::span<const int> signs);

    /// Parses '+'/'-' characters. Any other character is an error.
    static BinarySequence parse(std::string_view text);

    std::size_t length() const noexcept { return m_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool bit(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1u; }

    /// s_i in {-1, +1}.
    int at(std::size_t i) const noexcept { return bit(i) ? -1 : 1; }

    std::vector<int> to_signs() const;
    std::string to_string() const;

    /// Mask selecting the valid bits of the last word.
    std::uint64_t tail_mask() const noexcept;

    friend bool operator==(const BinarySequence&, const BinarySequence&) = default;

private:
    void clear_padding() noexcept;

    std::size_t m_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Counter-based splittable random stream.
///
/// Word k of the stream is the SplitMix64 finaliser applied to
/// key + (k + 1) * 0x9E3779B97F4A7C15, where
/// key = mix64(master_seed ^ mix64(stream_id + 0x9E3779B97F4A7C15)).
/// The output is therefore a pure function of (master_seed, stream_id, counter),
/// and streams with distinct ids can be drawn on any worker in any order.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t counter = 0) noexcept;

    std::uint64_t next_word() noexcept;

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::uint64_t counter_;
    std::uint64_t key_;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Uniform sample from {-1,1}^m; consumes ceil(m/64) words of the stream.
BinarySequence sample_uniform(std::size_t m, RngStream& stream);

/// value must be -1 or +1.
BinarySequence constant_sequence(std::size_t m, int value);

/// s_0 = +1; for i != 0, s_i = +1 iff i is a quadratic residue mod m.
BinarySequence legendre_sequence(std::size_t m);

/// One sequence per line of '+'/'-'; blank lines are skipped.
std::vector<BinarySequence> read_sequences(std::istream& in);
void write_sequences(std::ostream& out, std::span<const BinarySequence> seqs);

}  // namespace pacorr
