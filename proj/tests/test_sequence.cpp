#include <doctest.h>

#include <sstream>

#include "pacorr/errors.hpp"
#include "pacorr/sequence.hpp"

using namespace pacorr;

TEST_CASE("parse and print round trip") {
    const auto s = BinarySequence::parse("+-+--");
    CHECK(s.length() == 5);
    CHECK(s.to_signs() == std::vector<int>{1, -1, 1, -1, -1});
    CHECK(s.to_string() == "+-+--");
    CHECK_THROWS_AS(BinarySequence::parse("+x-"), InvalidArgument);
    CHECK_THROWS_AS(BinarySequence(0), InvalidArgument);
}

TEST_CASE("padding bits stay clear") {
    BinarySequence s(70, {~0ULL, ~0ULL});
    CHECK(s.words()[1] == s.tail_mask());
    CHECK(s.tail_mask() == 0x3FULL);
    CHECK(BinarySequence(64).tail_mask() == ~0ULL);
}

TEST_CASE("from_signs agrees with at") {
    const std::vector<int> v{1, -1, -1, 1, -1, 1, 1};
    const auto s = BinarySequence::from_signs(v);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(s.at(i) == v[i]);
}

TEST_CASE("constant sequences") {
    CHECK(constant_sequence(3, 1).to_signs() == std::vector<int>{1, 1, 1});
    CHECK(constant_sequence(2, -1).to_signs() == std::vector<int>{-1, -1});
    CHECK_THROWS_AS(constant_sequence(3, 0), InvalidArgument);
}

TEST_CASE("legendre sequences") {
    CHECK(legendre_sequence(7).to_signs() == std::vector<int>{1, 1, 1, -1, 1, -1, -1});
    CHECK(legendre_sequence(5).to_signs() == std::vector<int>{1, 1, -1, -1, 1});
    CHECK_THROWS_AS(legendre_sequence(9), InvalidArgument);
}

TEST_CASE("stream is a pure function of (seed, id, counter)") {
    RngStream a(99, 5), b(99, 5), c(99, 6);
    const auto a0 = a.next_word();
    CHECK(a0 == b.next_word());
    CHECK(a0 != c.next_word());
    RngStream resumed(99, 5, 1);
    CHECK(a.next_word() == resumed.next_word());
}

TEST_CASE("uniform sampling") {
    RngStream s1(3, 0), s2(3, 0);
    CHECK(sample_uniform(3, s1) == sample_uniform(3, s2));

    RngStream one(11, 0);
    const auto t = sample_uniform(1, one);
    CHECK(t.length() == 1);
    CHECK((t.at(0) == 1 || t.at(0) == -1));

    // Mean of 10^6 signs: sigma = 1e-3, the +-0.005 window is 5 sigma.
    RngStream big(42, 0);
    const auto s = sample_uniform(1'000'000, big);
    long long sum = 0;
    for (std::size_t i = 0; i < s.length(); ++i) sum += s.at(i);
    CHECK(std::abs(static_cast<double>(sum) / 1e6) < 0.005);
    CHECK(big.counter() == (1'000'000 + 63) / 64);
}

TEST_CASE("sequence file io") {
    std::stringstream io;
    const std::vector<BinarySequence> seqs{BinarySequence::parse("+-+"), BinarySequence::parse("--")};
    write_sequences(io, seqs);
    io << "\n";
    CHECK(read_sequences(io) == seqs);
}
