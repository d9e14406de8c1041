#include <catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "dpcc/bitmatrix.hpp"

using dpcc::BitMatrix;

namespace {

// brute-force row span: all XOR combinations of the rows
std::set<std::uint64_t> brute_span(const BitMatrix& m) {
    std::set<std::uint64_t> span;
    const std::size_t n = m.rows();
    REQUIRE(n <= 20);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::uint64_t w = 0;
        for (std::size_t r = 0; r < n; ++r)
            if ((mask >> r) & 1) w ^= m.row_word(r);
        span.insert(w);
    }
    return span;
}

std::size_t brute_rank(const BitMatrix& m) {
    std::size_t sz = brute_span(m).size();
    std::size_t rank = 0;
    while ((std::size_t(1) << rank) < sz) ++rank;
    return rank;
}

BitMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << cols) - 1);
    std::vector<std::uint64_t> words;
    for (std::size_t r = 0; r < rows; ++r) words.push_back(dist(rng));
    return BitMatrix::from_rows(words, cols);
}

// Gaussian binomial [n choose k]_2
std::uint64_t gaussian_binomial(unsigned n, unsigned k) {
    // product over i of (2^(n-i) - 1) / (2^(i+1) - 1); compute as rational via
    // repeated exact division
    __uint128_t num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= (std::uint64_t(1) << (n - i)) - 1;
        den *= (std::uint64_t(1) << (i + 1)) - 1;
    }
    return std::uint64_t(num / den);
}

}  // namespace

TEST_CASE("bit string round trip") {
    BitMatrix m = BitMatrix::from_strings({"1010", "0111"}, 4);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 4);
    CHECK(m.get(0, 0));
    CHECK_FALSE(m.get(0, 1));
    CHECK(m.get(0, 2));
    CHECK(m.to_strings() == std::vector<std::string>{"1010", "0111"});
    CHECK(m.row_word(0) == 0b0101);  // column 0 is the low bit
    CHECK_THROWS_AS(BitMatrix::from_strings({"10"}, 4), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix::from_strings({"10x0"}, 4), std::invalid_argument);
}

TEST_CASE("constructors and accessors") {
    CHECK(BitMatrix::identity(3).to_strings() ==
          std::vector<std::string>{"100", "010", "001"});
    CHECK(BitMatrix::unit_row(2, 4).to_strings() == std::vector<std::string>{"0010"});
    CHECK_THROWS_AS(BitMatrix::unit_row(4, 4), std::out_of_range);
    CHECK_THROWS_AS(BitMatrix(2, 65), std::invalid_argument);
    CHECK_THROWS_AS(BitMatrix::from_rows({0b10000}, 4), std::invalid_argument);

    BitMatrix a = BitMatrix::from_strings({"11"}, 2);
    BitMatrix b = BitMatrix::from_strings({"01", "10"}, 2);
    CHECK(stack(a, b).to_strings() == std::vector<std::string>{"11", "01", "10"});
    CHECK_THROWS_AS(stack(a, BitMatrix(1, 3)), std::invalid_argument);
}

TEST_CASE("rank matches brute-force span size") {
    CHECK(dpcc::rank(BitMatrix::identity(5)) == 5);
    CHECK(dpcc::rank(BitMatrix(0, 4)) == 0);
    CHECK(dpcc::rank(BitMatrix::from_strings({"110", "011", "101"}, 3)) == 2);

    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t cols = 1 + rng() % 8;
        std::size_t rows = rng() % 7;
        BitMatrix m = random_matrix(rng, rows, cols);
        CHECK(dpcc::rank(m) == brute_rank(m));
    }
}

TEST_CASE("in_row_span matches brute-force span membership") {
    std::mt19937 rng(6789);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t cols = 1 + rng() % 8;
        std::size_t rows = rng() % 6;
        BitMatrix m = random_matrix(rng, rows, cols);
        auto span = brute_span(m);
        for (std::uint64_t w = 0; w < (std::uint64_t(1) << cols); ++w)
            CHECK(dpcc::in_row_span(w, m) == (span.count(w) > 0));
    }
    BitMatrix m = BitMatrix::from_strings({"1100", "0011"}, 4);
    CHECK(dpcc::in_row_span(BitMatrix::from_strings({"1111"}, 4), m));
    CHECK_FALSE(dpcc::in_row_span(BitMatrix::from_strings({"1000"}, 4), m));
    CHECK_THROWS_AS(dpcc::in_row_span(BitMatrix::from_strings({"11"}, 2), m),
                    std::invalid_argument);
}

TEST_CASE("rref is canonical per row space") {
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t cols = 1 + rng() % 8;
        BitMatrix m = random_matrix(rng, rng() % 6, cols);
        BitMatrix r = dpcc::rref(m);

        // same span both ways
        CHECK(brute_span(m) == brute_span(r));
        // full rank, no zero rows, idempotent
        CHECK(r.rows() == dpcc::rank(m));
        CHECK(dpcc::rref(r) == r);

        // a row-scrambled variant with the same span has the same rref
        std::vector<std::uint64_t> words;
        for (std::size_t i = 0; i < m.rows(); ++i) words.push_back(m.row_word(i));
        std::shuffle(words.begin(), words.end(), rng);
        if (words.size() >= 2) words[0] ^= words[1];  // row operation preserves span
        BitMatrix scrambled = BitMatrix::from_rows(words, cols);
        CHECK(dpcc::rref(scrambled) == r);
    }
}

TEST_CASE("enumerate_row_spaces yields each subspace exactly once") {
    struct Case {
        unsigned cols, dim;
    };
    for (Case c : {Case{4, 1}, Case{4, 2}, Case{5, 2}, Case{6, 2}, Case{3, 3}, Case{6, 1}}) {
        auto spaces = dpcc::enumerate_row_spaces(c.cols, c.dim);
        CHECK(spaces.size() == gaussian_binomial(c.cols, c.dim));
        std::set<BitMatrix> distinct(spaces.begin(), spaces.end());
        CHECK(distinct.size() == spaces.size());
        for (const BitMatrix& m : spaces) {
            CHECK(m.rows() == c.dim);
            CHECK(dpcc::rref(m) == m);  // canonical representative
        }
    }
    // the transmission candidate count used by the subpacketization-3 search
    CHECK(dpcc::enumerate_row_spaces(6, 2).size() == 651);
    CHECK(dpcc::enumerate_row_spaces(4, 0).size() == 1);
    CHECK_THROWS_AS(dpcc::enumerate_row_spaces(17, 2), std::out_of_range);
    CHECK_THROWS_AS(dpcc::enumerate_row_spaces(4, 5), std::out_of_range);
}
