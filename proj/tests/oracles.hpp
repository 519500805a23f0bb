#pragma once

// Independent reference computations used only by the tests. None of these
// call into the code paths they are used to check.

#include "k3tk/lattice.hpp"
#include "k3tk/rational.hpp"

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace k3tk::oracle {

/// Number of 24-coloured partitions of n for n < count: multiply the
/// geometric series 1/(1 - q^m) into the product 24 times for every m.
inline std::vector<big_int> coloured_partitions(std::size_t count, int colours = 24) {
    std::vector<big_int> c(count, 0);
    if (count == 0) return c;
    c[0] = 1;
    for (std::size_t m = 1; m < count; ++m) {
        for (int colour = 0; colour < colours; ++colour) {
            for (std::size_t n = m; n < count; ++n) c[n] += c[n - m];
        }
    }
    return c;
}

/// Cup product in H^0 + H^2 + H^4 (no sign twist), used to expand ch(N) x.
inline mukai_vector cup(const mukai_vector& x, const mukai_vector& y, const even_lattice& lattice) {
    mukai_vector out{x.r * y.r, coord_vector(x.c1.size()), 0};
    for (std::size_t i = 0; i < x.c1.size(); ++i) out.c1[i] = x.r * y.c1[i] + x.c1[i] * y.r;
    std::int64_t middle = 0;
    for (std::size_t i = 0; i < x.c1.size(); ++i) {
        for (std::size_t j = 0; j < y.c1.size(); ++j) middle += x.c1[i] * lattice(i, j) * y.c1[j];
    }
    out.a = x.r * y.a + middle + x.a * y.r;
    return out;
}

/// ch(N) = 1 + N + (N^2)/2 omega
inline mukai_vector chern_character_of_line_bundle(const coord_vector& n, const even_lattice& lattice) {
    std::int64_t n2 = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (std::size_t j = 0; j < n.size(); ++j) n2 += n[i] * lattice(i, j) * n[j];
    }
    return {1, n, n2 / 2};
}

/// Interior lattice points by Pick's theorem: I = A - B/2 + 1.
inline std::int64_t pick_interior(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2) {
    // triangle (0,0), (x1,y1), (x2,y2)
    const std::int64_t twice_area = std::abs(x1 * y2 - x2 * y1);
    const std::int64_t boundary = std::gcd(x1, y1) + std::gcd(x2 - x1, y2 - y1) + std::gcd(x2, y2);
    return (twice_area - boundary + 2) / 2;
}

/// Random even symmetric Gram matrix of the given rank with entries in [-bound, bound].
inline even_lattice random_lattice(std::mt19937_64& rng, std::size_t rank, std::int64_t bound = 4) {
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    std::vector<std::vector<std::int64_t>> g(rank, std::vector<std::int64_t>(rank));
    for (std::size_t i = 0; i < rank; ++i) {
        g[i][i] = 2 * dist(rng);
        for (std::size_t j = 0; j < i; ++j) g[i][j] = g[j][i] = dist(rng);
    }
    return even_lattice(g);
}

inline mukai_vector random_vector(std::mt19937_64& rng, std::size_t rank, std::int64_t bound = 20) {
    std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
    mukai_vector v{dist(rng), coord_vector(rank), dist(rng)};
    for (auto& x : v.c1) x = dist(rng);
    return v;
}

}  // namespace k3tk::oracle
