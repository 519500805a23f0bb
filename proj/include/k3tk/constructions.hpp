#pragma once

// Lattice-level data behind the reduction of a rank-r, ell = l Mukai vector
// to one with ell = 1: an auxiliary polarized K3 (X', H') with Pic = Z H',
// a Mukai vector v' with the same square as v, an exceptional vector v1 with
// <v1, v'> = -1, and the reflected vector w = -R_{v1}(v')^vee.
//
// Also two elementary facts the argument leans on: an empty-interior lattice
// triangle and the Farey-neighbour gap inequality, with exhaustive sweeps.

#include "k3tk/errors.hpp"
#include "k3tk/isometry.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/parallel.hpp"

#include <boost/integer/mod_inverse.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace k3tk {

struct aux_construction {
    // input: v = l(r + xi) + a omega with s = (xi^2)/2
    std::int64_t l = 0;
    std::int64_t r = 0;
    std::int64_t s = 0;
    std::int64_t a = 0;
    // output
    std::int64_t r1 = 0;
    std::int64_t d1 = 0;
    std::int64_t d_prime = 0;
    std::int64_t q = 0;
    std::int64_t k = 0;       // (H'^2) = 2k
    even_lattice lattice;     // NS(X') = Z H', Gram [2k]
    mukai_vector v_prime;
    mukai_vector v1;

    /// <v^2> of the source vector: 2l(ls - ra).
    std::int64_t source_square() const { return 2 * l * (l * s - r * a); }
};

/// Names of the construction invariants that fail; empty when all hold.
inline std::vector<std::string> aux_violations(const aux_construction& c) {
    std::vector<std::string> bad;
    auto need = [&bad](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    const auto mod = [](std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; };
    need(mod(c.a * c.r1, c.l) == mod(1, c.l), "a r1 = 1 mod l");
    need(std::gcd(c.r1, c.r) == 1, "gcd(r1, r) = 1");
    need(c.r1 - c.l * c.r >= 2, "r1 - l r >= 2");
    need(c.d_prime * c.r1 - c.d1 * c.r == 1, "d' r1 - d1 r = 1");
    need(c.a * c.r1 + c.q * c.l == 1, "a r1 + q l = 1");
    need(c.k == c.r1 * (c.q * c.r + c.r1 * c.s) - c.r * c.r, "k = r1(q r + r1 s) - r^2");
    need(c.k > 0, "k > 0");
    need(std::gcd(c.r, c.d_prime) == 1, "r + d' H' primitive");
    need(square(c.v1, c.lattice) == -2, "<v1^2> = -2");
    need(square(c.v_prime, c.lattice) == c.source_square(), "<v'^2> = 2l(ls - ra)");
    need(mukai_pairing(c.v1, c.v_prime, c.lattice) == -1, "<v1, v'> = -1");
    need(mod(c.v_prime.a - c.a, c.l) == 0, "a' = a mod l");
    return bad;
}

/// Smallest r1 in [l r + 2, search_bound] with a r1 = 1 (mod l) and
/// gcd(r1, r) = 1; d' is the least positive solution of d' r1 - d1 r = 1.
inline aux_construction build_auxiliary(std::int64_t l, std::int64_t r, std::int64_t s, std::int64_t a,
                                        std::int64_t search_bound = 500) {
    if (l < 1 || r < 1) throw precondition_error("l and r must be positive");
    if (std::gcd(l, a) != 1) throw precondition_error("gcd(l, a) must be 1 for a primitive vector");
    if (l * s - r * a < 0) throw precondition_error("<v^2> = 2l(ls - ra) must be nonnegative");

    aux_construction c;
    c.l = l;
    c.r = r;
    c.s = s;
    c.a = a;
    bool found = false;
    for (std::int64_t r1 = l * r + 2; r1 <= search_bound; ++r1) {
        if (((a * r1 - 1) % l) == 0 && std::gcd(r1, r) == 1) {
            c.r1 = r1;
            found = true;
            break;
        }
    }
    if (!found) throw search_exhausted("no admissible r1 <= " + std::to_string(search_bound));

    c.d_prime = r == 1 ? 1 : boost::integer::mod_inverse(c.r1 % r, r);
    c.d1 = (c.d_prime * c.r1 - 1) / r;
    c.q = (1 - a * c.r1) / l;
    c.k = c.r1 * (c.q * r + c.r1 * s) - r * r;
    if (c.k <= 0) throw computation_error("auxiliary polarization degree k is not positive");
    c.lattice = even_lattice::rank_one(2 * c.k);

    const std::int64_t dp = c.d_prime;
    const std::int64_t a_prime = l * ((1 + dp * c.r1) * c.d1 * s + dp * dp * c.q * c.r1 - r * dp * dp) + a;
    const std::int64_t a1 = c.r1 * (-dp * dp + c.d1 * c.d1 * s) + c.d1 * c.d1 * r * c.q + 2 * dp;
    c.v_prime = {l * r, {l * dp}, a_prime};
    c.v1 = {c.r1, {c.d1}, a1};

    if (const auto bad = aux_violations(c); !bad.empty()) {
        throw computation_error("auxiliary construction invariant failed: " + bad.front());
    }
    return c;
}

/// w = -R_{v1}(v')^vee = (r1 - l r) - (d1 - l d') H' + (a1 - a') omega'. Has ell(w) = 1.
inline mukai_vector reflected_target(const aux_construction& c) {
    mukai_vector w = -dual(apply_reflect(c.v1, c.v_prime, c.lattice));
    if (square(w, c.lattice) != square(c.v_prime, c.lattice)) throw computation_error("reflection changed <w^2>");
    if (ell(w) != 1) throw computation_error("reflected target is not of ell = 1");
    return w;
}

namespace detail {

inline __int128 cross(std::int64_t ax, std::int64_t ay, std::int64_t bx, std::int64_t by) {
    return __int128(ax) * by - __int128(ay) * bx;
}

}  // namespace detail

/// Lattice points strictly inside the triangle (0,0), (r1 - l r, d1 - l d), (r1, d1).
inline std::int64_t triangle_interior_count(std::int64_t r1, std::int64_t d1, std::int64_t r, std::int64_t d, std::int64_t l) {
    if (r1 <= 0 || r <= 0 || l <= 0) throw precondition_error("r1, r and l must be positive");
    if (l * r >= r1) throw precondition_error("need l r < r1");
    if (d * r1 - r * d1 != 1) throw precondition_error("need d r1 - r d1 = 1");
    const std::int64_t px[3] = {0, r1 - l * r, r1};
    const std::int64_t py[3] = {0, d1 - l * d, d1};
    const __int128 orient = detail::cross(px[1] - px[0], py[1] - py[0], px[2] - px[0], py[2] - py[0]);
    if (orient == 0) return 0;
    const int sign = orient > 0 ? 1 : -1;
    const auto [xmin, xmax] = std::minmax({px[0], px[1], px[2]});
    const auto [ymin, ymax] = std::minmax({py[0], py[1], py[2]});
    std::int64_t count = 0;
    for (std::int64_t x = xmin; x <= xmax; ++x) {
        for (std::int64_t y = ymin; y <= ymax; ++y) {
            bool inside = true;
            for (int e = 0; e < 3 && inside; ++e) {
                const int f = (e + 1) % 3;
                const __int128 c = detail::cross(px[f] - px[e], py[f] - py[e], x - px[e], y - py[e]);
                inside = sign * c > 0;
            }
            count += inside ? 1 : 0;
        }
    }
    return count;
}

struct farey_check {
    bool holds = true;
    bool vacuous = false;  // preconditions not met
};

/// For y1/x1 > y2/x2 > y3/x3 with y1 x3 - x1 y3 = 1: x2 >= x1 + x3.
inline farey_check farey_gap_holds(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2, std::int64_t x3,
                                   std::int64_t y3) {
    const bool positive = x1 > 0 && x2 > 0 && x3 > 0;
    if (!positive || y1 * x3 - x1 * y3 != 1 || !(y1 * x2 > y2 * x1) || !(y2 * x3 > y3 * x2)) return {true, true};
    return {x2 >= x1 + x3, false};
}

struct sweep_report {
    std::int64_t checked = 0;
    std::int64_t counterexamples = 0;

    sweep_report& operator+=(const sweep_report& o) {
        checked += o.checked;
        counterexamples += o.counterexamples;
        return *this;
    }
};

/// All (r1, d1, r, d, l) with 1 <= r1 <= bound, |d1| <= bound, l r < r1 and d r1 - r d1 = 1.
inline sweep_report verify_triangle(std::int64_t bound) {
    if (bound < 1) throw input_error("bound must be positive");
    return parallel_sum<sweep_report>(1, bound + 1, [bound](std::int64_t r1) {
        sweep_report rep;
        for (std::int64_t d1 = -bound; d1 <= bound; ++d1) {
            for (std::int64_t r = 1; r < r1; ++r) {
                if ((1 + r * d1) % r1 != 0) continue;
                const std::int64_t d = (1 + r * d1) / r1;
                for (std::int64_t l = 1; l * r < r1; ++l) {
                    ++rep.checked;
                    if (triangle_interior_count(r1, d1, r, d, l) != 0) ++rep.counterexamples;
                }
            }
        }
        return rep;
    });
}

/// All x1, x2, x3 in [1, bound] with slopes y_i/x_i in [-1, 1] satisfying the
/// preconditions. Shifting every y_i by x_i preserves them, so this range
/// covers every slope interval up to translation.
inline sweep_report verify_farey(std::int64_t bound) {
    if (bound < 1) throw input_error("bound must be positive");
    return parallel_sum<sweep_report>(1, bound + 1, [bound](std::int64_t x1) {
        sweep_report rep;
        for (std::int64_t x3 = 1; x3 <= bound; ++x3) {
            for (std::int64_t y3 = -x3; y3 <= x3; ++y3) {
                if ((1 + x1 * y3) % x3 != 0) continue;
                const std::int64_t y1 = (1 + x1 * y3) / x3;
                if (y1 < -x1 || y1 > x1) continue;
                for (std::int64_t x2 = 1; x2 <= bound; ++x2) {
                    // y3/x3 < y2/x2 < y1/x1
                    const std::int64_t lo = (y3 * x2) / x3 - 1;
                    const std::int64_t hi = (y1 * x2) / x1 + 1;
                    for (std::int64_t y2 = lo; y2 <= hi; ++y2) {
                        const farey_check f = farey_gap_holds(x1, y1, x2, y2, x3, y3);
                        if (f.vacuous) continue;
                        ++rep.checked;
                        if (!f.holds) ++rep.counterexamples;
                    }
                }
            }
        }
        return rep;
    });
}

}  // namespace k3tk
