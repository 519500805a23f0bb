#include "k3tk/isometry.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace k3tk;

namespace {

const even_lattice h2 = even_lattice::rank_one(2);

/// Random (-2)-vector: (1, xi, ((xi^2) + 2)/2) always works on an even lattice.
mukai_vector random_minus_two(std::mt19937_64& rng, const even_lattice& lattice) {
    auto xi = oracle::random_vector(rng, lattice.rank(), 5).c1;
    mukai_vector u{1, xi, (lattice.square(xi) + 2) / 2};
    std::uniform_int_distribution<int> coin(0, 1);
    return coin(rng) ? u : -u;
}

}  // namespace

TEST(Translate, ZeroIsIdentity) {
    const mukai_vector v{3, {-2}, 7};
    EXPECT_EQ(apply_translate({0}, v, h2), v);
}

TEST(Translate, HandExpansion) {
    EXPECT_EQ(apply_translate({1}, {1, {0}, 0}, h2), (mukai_vector{1, {1}, 1}));
}

TEST(Translate, MatchesCupProductWithChernCharacter) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const std::size_t rank = 1 + i % 3;
        const auto lattice = oracle::random_lattice(rng, rank);
        const auto v = oracle::random_vector(rng, rank);
        const auto n = oracle::random_vector(rng, rank, 6).c1;
        EXPECT_EQ(apply_translate(n, v, lattice), oracle::cup(oracle::chern_character_of_line_bundle(n, lattice), v, lattice));
    }
}

TEST(Translate, Homomorphism) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 500; ++i) {
        const std::size_t rank = 1 + i % 3;
        const auto lattice = oracle::random_lattice(rng, rank);
        const auto v = oracle::random_vector(rng, rank);
        const auto n = oracle::random_vector(rng, rank, 6).c1;
        const auto m = oracle::random_vector(rng, rank, 6).c1;
        coord_vector sum(rank);
        for (std::size_t k = 0; k < rank; ++k) sum[k] = n[k] + m[k];
        EXPECT_EQ(apply_translate(n, apply_translate(m, v, lattice), lattice), apply_translate(sum, v, lattice));
    }
}

TEST(Reflect, Examples) {
    const mukai_vector u{1, {0}, 1};
    EXPECT_EQ(apply_reflect(u, {1, {0}, -1}, h2), (mukai_vector{1, {0}, -1}));
    EXPECT_EQ(apply_reflect(u, u, h2), -u);
    const mukai_vector orthogonal{0, {1}, 0};
    EXPECT_EQ(mukai_pairing(orthogonal, u, h2), 0);
    EXPECT_EQ(apply_reflect(u, orthogonal, h2), orthogonal);
}

TEST(Reflect, RejectsNonExceptionalVector) {
    EXPECT_THROW(apply_reflect({1, {0}, 0}, {1, {0}, 0}, h2), precondition_error);
    EXPECT_THROW(isometry_elem::reflect({1, {0}, 0}, h2), precondition_error);
}

TEST(NsAuto, ValidatedAtConstruction) {
    const even_lattice u_plane({{0, 1}, {1, 0}});
    EXPECT_NO_THROW(isometry_elem::ns_auto({{0, 1}, {1, 0}}, u_plane));
    EXPECT_NO_THROW(isometry_elem::ns_auto({{-1, 0}, {0, -1}}, u_plane));
    EXPECT_THROW(isometry_elem::ns_auto({{1, 1}, {0, 1}}, u_plane), precondition_error);
    EXPECT_THROW(isometry_elem::ns_auto({{1, 0}}, u_plane), input_error);
}

TEST(Word, Examples) {
    const mukai_vector v{2, {1}, -3};
    EXPECT_EQ(apply_word({}, v, h2), v);
    EXPECT_EQ(apply_word({isometry_elem::negate(), isometry_elem::negate()}, v, h2), v);
    const auto r = isometry_elem::reflect({1, {0}, 1}, h2);
    EXPECT_EQ(apply_word({r, r}, v, h2), v);
}

TEST(Word, AppliesRightToLeft) {
    const mukai_vector v{1, {0}, 0};
    const auto t = isometry_elem::translate({1}, h2);
    const auto d = isometry_elem::dualize();
    // dual(T_1 v) = dual((1,[1],1)) = (1,[-1],1); T_1(dual v) = (1,[1],1)
    EXPECT_EQ(apply_word({d, t}, v, h2), (mukai_vector{1, {-1}, 1}));
    EXPECT_EQ(apply_word({t, d}, v, h2), (mukai_vector{1, {1}, 1}));
}

TEST(Isometry, EveryGeneratorPreservesThePairing) {
    std::mt19937_64 rng(13);
    const even_lattice u_plane({{0, 1}, {1, 0}});
    for (int i = 0; i < 2000; ++i) {
        const bool hyperbolic = i % 2 == 0;
        const auto lattice = hyperbolic ? u_plane : oracle::random_lattice(rng, 1 + i % 4);
        const std::size_t rank = lattice.rank();
        std::vector<isometry_elem> gens{isometry_elem::translate(oracle::random_vector(rng, rank, 5).c1, lattice),
                                        isometry_elem::reflect(random_minus_two(rng, lattice), lattice),
                                        isometry_elem::negate(), isometry_elem::dualize()};
        if (hyperbolic) gens.push_back(isometry_elem::ns_auto({{0, 1}, {1, 0}}, lattice));
        const auto x = oracle::random_vector(rng, rank);
        const auto y = oracle::random_vector(rng, rank);
        for (const auto& g : gens) {
            EXPECT_EQ(mukai_pairing(apply(g, x, lattice), apply(g, y, lattice), lattice), mukai_pairing(x, y, lattice));
        }
    }
}

TEST(Isometry, ReflectionIsInvolution) {
    std::mt19937_64 rng(14);
    for (int i = 0; i < 1000; ++i) {
        const auto lattice = oracle::random_lattice(rng, 1 + i % 4);
        const auto u = random_minus_two(rng, lattice);
        const auto v = oracle::random_vector(rng, lattice.rank());
        EXPECT_EQ(apply_reflect(u, apply_reflect(u, v, lattice), lattice), v);
    }
}

TEST(ReflectionTarget, Examples) {
    const mukai_vector v1{1, {0}, 1};
    const mukai_vector v{1, {1}, 1};
    ASSERT_EQ(mukai_pairing(v, v1, h2), -2);
    const auto t = reflection_target(v, v1, h2);
    EXPECT_EQ(t.plain, -(v - 2 * v1));
    EXPECT_EQ(t.plain, (mukai_vector{1, {-1}, 1}));
    EXPECT_EQ(t.dual, (mukai_vector{1, {1}, 1}));

    const mukai_vector orth{0, {1}, 0};
    EXPECT_EQ(reflection_target(orth, v1, h2).plain, -orth);
    EXPECT_THROW(reflection_target(v, {1, {0}, 0}, h2), precondition_error);
}

TEST(ReflectionTarget, PreservesSquare) {
    std::mt19937_64 rng(15);
    for (int i = 0; i < 1000; ++i) {
        const auto lattice = oracle::random_lattice(rng, 1 + i % 3);
        const auto v1 = random_minus_two(rng, lattice);
        const auto v = oracle::random_vector(rng, lattice.rank());
        const auto t = reflection_target(v, v1, lattice);
        EXPECT_EQ(square(t.plain, lattice), square(v, lattice));
        EXPECT_EQ(square(t.dual, lattice), square(v, lattice));
    }
}
