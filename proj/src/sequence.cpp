#include "pacorr/sequence.hpp"

#include <istream>
#include <ostream>

#include "pacorr/errors.hpp"
#include "pacorr/numtheory.hpp"

namespace pacorr {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::size_t words_for(std::size_t m) { return (m + BinarySequence::kWordBits - 1) / BinarySequence::kWordBits; }
}  // namespace

BinarySequence::BinarySequence(std::size_t m) : m_(m), words_(words_for(m), 0) {
    if (m == 0) throw InvalidArgument("BinarySequence: length must be >= 1");
}

BinarySequence::BinarySequence(std::size_t m, std::vector<std::uint64_t> words) : m_(m), words_(std::move(words)) {
    if (m == 0) throw InvalidArgument("BinarySequence: length must be >= 1");
    if (words_.size() != words_for(m)) throw InvalidArgument("BinarySequence: word count does not match length");
    clear_padding();
}

BinarySequence BinarySequence::from_signs(std::span<const int> signs) {
    BinarySequence s(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == -1) {
            s.words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
        } else if (signs[i] != 1) {
            throw InvalidArgument("BinarySequence: entries must be -1 or +1");
        }
    }
    return s;
}

BinarySequence BinarySequence::parse(std::string_view text) {
    BinarySequence s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '-') {
            s.words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
        } else if (text[i] != '+') {
            throw InvalidArgument("BinarySequence: expected '+' or '-' at position " + std::to_string(i));
        }
    }
    return s;
}

std::vector<int> BinarySequence::to_signs() const {
    std::vector<int> out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i] = at(i);
    return out;
}

std::string BinarySequence::to_string() const {
    std::string out(m_, '+');
    for (std::size_t i = 0; i < m_; ++i) {
        if (bit(i)) out[i] = '-';
    }
    return out;
}

std::uint64_t BinarySequence::tail_mask() const noexcept {
    const std::size_t r = m_ % kWordBits;
    return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

void BinarySequence::clear_padding() noexcept {
    if (!words_.empty()) words_.back() &= tail_mask();
}

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t counter) noexcept
    : master_seed_(master_seed),
      stream_id_(stream_id),
      counter_(counter),
      key_(mix64(master_seed ^ mix64(stream_id + kGolden))) {}

std::uint64_t RngStream::next_word() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

BinarySequence sample_uniform(std::size_t m, RngStream& stream) {
    if (m == 0) throw InvalidArgument("sample_uniform: length must be >= 1");
    std::vector<std::uint64_t> words(words_for(m));
    for (auto& w : words) w = stream.next_word();
    return BinarySequence(m, std::move(words));
}

BinarySequence constant_sequence(std::size_t m, int value) {
    if (value != 1 && value != -1) throw InvalidArgument("constant_sequence: value must be -1 or +1");
    BinarySequence s(m);
    if (value == 1) return s;
    std::vector<std::uint64_t> words(s.word_count(), ~std::uint64_t{0});
    return BinarySequence(m, std::move(words));
}

BinarySequence legendre_sequence(std::size_t m) {
    if (m < 3 || !is_prime(m)) throw InvalidArgument("legendre_sequence: m must be an odd prime");
    std::vector<int> signs(m, 1);
    for (std::size_t i = 1; i < m; ++i) signs[i] = legendre_symbol(static_cast<std::int64_t>(i), m);
    return BinarySequence::from_signs(signs);
}

std::vector<BinarySequence> read_sequences(std::istream& in) {
    std::vector<BinarySequence> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        out.push_back(BinarySequence::parse(line));
    }
    return out;
}

void write_sequences(std::ostream& out, std::span<const BinarySequence> seqs) {
    for (const auto& s : seqs) out << s.to_string() << '\n';
}

}  // namespace pacorr
