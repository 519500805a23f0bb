#include "k3tk/lattice.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3tk;

namespace {

const even_lattice h2 = even_lattice::rank_one(2);

}  // namespace

TEST(MukaiPairing, StructureSheafSelfPairing) {
    const mukai_vector ox{1, {0}, 1};
    EXPECT_EQ(mukai_pairing(ox, ox, h2), -2);
}

TEST(MukaiPairing, PointAgainstRankOne) {
    EXPECT_EQ(mukai_pairing({0, {0}, 1}, {1, {0}, 0}, h2), -1);
}

TEST(MukaiPairing, HandExpansion) {
    EXPECT_EQ(mukai_pairing({2, {1}, 1}, {1, {0}, 1}, h2), -3);
}

TEST(MukaiPairing, DimensionMismatchIsInputError) {
    EXPECT_THROW(mukai_pairing({1, {0, 0}, 1}, {1, {0}, 1}, h2), input_error);
}

TEST(EvenLattice, RejectsOddOrAsymmetricGram) {
    EXPECT_THROW(even_lattice({{1}}), input_error);
    EXPECT_THROW(even_lattice({{2, 1}, {0, 2}}), input_error);
    EXPECT_THROW(even_lattice({{2, 1}}), input_error);
    EXPECT_THROW(even_lattice(std::vector<std::vector<std::int64_t>>{}), input_error);
    EXPECT_NO_THROW(even_lattice({{0, 1}, {1, 0}}));
}

TEST(MukaiFromChern, Examples) {
    EXPECT_EQ(mukai_from_chern(1, {0}, 0, h2), (mukai_vector{1, {0}, 1}));
    for (std::int64_t n = 0; n < 6; ++n) EXPECT_EQ(mukai_from_chern(1, {0}, -n, h2), (mukai_vector{1, {0}, 1 - n}));
    EXPECT_EQ(mukai_from_chern(0, {0}, 0, h2), (mukai_vector{0, {0}, 0}));
    EXPECT_THROW(mukai_from_chern(1, {0, 1}, 0, h2), input_error);
}

TEST(MukaiFromChern, ReadBackIsIdentity) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-50, 50);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t r = dist(rng), ch2 = dist(rng);
        const coord_vector c1{dist(rng)};
        const auto v = mukai_from_chern(r, c1, ch2, h2);
        EXPECT_EQ(v.r, r);
        EXPECT_EQ(v.c1, c1);
        EXPECT_EQ(ch2_of(v), ch2);
    }
}

TEST(Dual, Examples) {
    EXPECT_EQ(dual({1, {0}, 1}), (mukai_vector{1, {0}, 1}));
    EXPECT_EQ(dual({2, {3}, -1}), (mukai_vector{2, {-3}, -1}));
}

TEST(VectorInvariants, EllPrimitiveSquare) {
    EXPECT_EQ(ell({2, {2}, 3}), 2);
    EXPECT_TRUE(primitive({2, {2}, 3}));
    EXPECT_FALSE(primitive({2, {2}, 4}));
    EXPECT_EQ(ell({0, {0}, 5}), 0);
    EXPECT_EQ(ell({-4, {6}, 1}), 2);
    for (std::int64_t n = 0; n < 10; ++n) {
        // <v^2> = 2n - 2, so dim M = 2n
        EXPECT_EQ(square({1, {0}, 1 - n}, h2), 2 * n - 2);
    }
}

TEST(VectorInvariants, ContentOfMultiples) {
    EXPECT_EQ(content(3 * mukai_vector{2, {1}, 5}), 3);
    EXPECT_EQ(divide_exact({6, {3}, 15}, 3), (mukai_vector{2, {1}, 5}));
    EXPECT_THROW(divide_exact({6, {3}, 16}, 3), input_error);
}

TEST(MukaiPairing, RandomAlgebraicProperties) {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t rank = 1 + i % 4;
        const auto lattice = oracle::random_lattice(rng, rank);
        const auto x = oracle::random_vector(rng, rank);
        const auto y = oracle::random_vector(rng, rank);
        EXPECT_EQ(mukai_pairing(x, y, lattice), mukai_pairing(y, x, lattice));
        EXPECT_EQ(square(x, lattice) % 2, 0);
        EXPECT_EQ(mukai_pairing(dual(x), dual(y), lattice), mukai_pairing(x, y, lattice));
        EXPECT_EQ(dual(dual(x)), x);
    }
}

TEST(MukaiPairing, OverflowIsReported) {
    const std::int64_t big = std::int64_t{1} << 62;
    EXPECT_THROW(mukai_pairing({big, {0}, big}, {big, {0}, big}, h2), input_error);
}
