#pragma once

// PSU(r) partition functions of a K3 surface,
//
//   Z_r^alpha(tau) = sum_{rk v = r, c1(v) = alpha} "chi(M(v))" q^(<v^2>/2r),
//
// with the virtual Euler characteristic
//
//   "chi(M(v))" = sum_{v = a w} chi(X^[<w^2>/2 + 1]) / a^2.
//
// Three evaluation paths are provided:
//   z_psu_direct        sums chi_virtual over Mukai vectors,
//   z_psu_hecke         Hecke transform of 1/eta^24 with the b-sum done exactly,
//   z_psu_hecke_literal the same transform with explicit roots of unity.
//
// The b-sum in the Hecke transform collapses by orthogonality of characters:
//   sum_{0 <= b < d} e(b (n - 1 - (xi^2)/2) / d) = d [d | n - 1 - (xi^2)/2],
// so only n = 1 + (xi^2)/2 (mod d) survives, each with weight d. Exponents
// carry the fractional offset (alpha^2)/2r, hence series denominators divide 2r.

#include "k3tk/errors.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/numeric.hpp"
#include "k3tk/qseries.hpp"
#include "k3tk/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

namespace k3tk {

/// chi(X^[n]) lookup that extends itself on demand. Zero for n < 0.
class hilbert_euler_cache {
public:
    explicit hilbert_euler_cache(std::size_t initial = 32) : table_(hilbert_euler_table(std::max<std::size_t>(initial, 1))) {}

    const big_int& operator()(std::int64_t n) {
        static const big_int zero = 0;
        if (n < 0) return zero;
        const auto idx = static_cast<std::size_t>(n);
        if (idx >= table_.size()) table_ = hilbert_euler_table(std::max(idx + 1, 2 * table_.size()));
        return table_[idx];
    }

private:
    std::vector<big_int> table_;
};

/// Virtual Euler characteristic of a positive-rank Mukai vector.
inline rational chi_virtual(const mukai_vector& v, const even_lattice& lattice, hilbert_euler_cache& chi) {
    if (v.r <= 0) throw precondition_error("Mukai vector must have positive rank");
    lattice.check_dim(v.c1.size());
    const std::int64_t c = content(v);
    rational total = 0;
    for (std::int64_t a = 1; a <= c; ++a) {
        if (c % a != 0) continue;
        const std::int64_t index = square(divide_exact(v, a), lattice) / 2 + 1;
        if (index < 0) continue;
        total += rational(chi(index), big_int(a) * a);
    }
    return total;
}

inline rational chi_virtual(const mukai_vector& v, const even_lattice& lattice) {
    hilbert_euler_cache chi;
    return chi_virtual(v, lattice, chi);
}

namespace detail {

inline void require_rank(std::int64_t r) {
    if (r < 1) throw precondition_error("rank must be at least 1");
}

inline bool divides_all(std::int64_t a, const coord_vector& x) {
    return std::all_of(x.begin(), x.end(), [a](std::int64_t c) { return c % a == 0; });
}

inline coord_vector divided(coord_vector x, std::int64_t a) {
    for (auto& c : x) c /= a;
    return x;
}

}  // namespace detail

/// Z_r^alpha by direct summation over v = (r, alpha, A) with exponent
/// ((alpha^2) - 2 r A) / 2r in [-r, order).
inline qseries z_psu_direct(std::int64_t r, const coord_vector& alpha, const rational& order, const even_lattice& lattice) {
    detail::require_rank(r);
    lattice.check_dim(alpha.size());
    const std::int64_t alpha2 = lattice.square(alpha);
    // exponent < order  <=>  A > (alpha2 - 2 r order) / 2r
    // exponent >= -r    <=>  A <= (alpha2 + 2 r^2) / 2r
    const std::int64_t a_min = floor_int((rational(alpha2) - 2 * r * order) / (2 * r)) + 1;
    const std::int64_t a_max = floor_int(make_rational(alpha2 + 2 * r * r, 2 * r));
    hilbert_euler_cache chi(static_cast<std::size_t>(std::max<std::int64_t>(2, r * ceil_int(order) + 2)));
    qseries::term_map terms;
    for (std::int64_t a = a_min; a <= a_max; ++a) {
        const mukai_vector v{r, alpha, a};
        // exponent * 2r
        terms.emplace(alpha2 - 2 * r * a, chi_virtual(v, lattice, chi));
    }
    return qseries(2 * r, std::move(terms), order);
}

/// Z_r^alpha as the Hecke transform of 1/eta^24:
///   (1/r^2) sum_{ad = r, a | alpha} d^2 sum_{n = 1 + (xi^2)/2 mod d} chi(X^[n]) q^(a(n-1)/d),  xi = alpha/a.
inline qseries z_psu_hecke(std::int64_t r, const coord_vector& alpha, const rational& order, const even_lattice& lattice) {
    detail::require_rank(r);
    lattice.check_dim(alpha.size());
    hilbert_euler_cache chi(static_cast<std::size_t>(std::max<std::int64_t>(2, r * ceil_int(order) + 2)));
    qseries::term_map terms;  // keys are exponents * r
    for (std::int64_t a = 1; a <= r; ++a) {
        if (r % a != 0 || !detail::divides_all(a, alpha)) continue;
        const std::int64_t d = r / a;
        const coord_vector xi = detail::divided(alpha, a);
        const std::int64_t half_xi2 = lattice.square(xi) / 2;
        const rational weight(big_int(d) * d, big_int(r) * r);
        // a(n-1)/d < order  <=>  n < order d / a + 1
        const std::int64_t n_end = ceil_int(order * d / a) + 1;
        std::int64_t n0 = ((1 + half_xi2) % d + d) % d;
        for (std::int64_t n = n0; n < n_end; n += d) {
            // a(n-1)/d = a^2 (n-1) / r
            terms[a * a * (n - 1)] += weight * rational(chi(n));
        }
    }
    return qseries(r, std::move(terms), order);
}

/// q-series with floating-point complex coefficients.
struct numeric_qseries {
    std::int64_t denom = 1;
    std::map<std::int64_t, complex> coeffs;
    rational trunc;
    std::map<std::int64_t, double> magnitude;  // sum of |summands| per coefficient
};

/// Coefficient agreement used by the literal Hecke path:
/// |x - y| <= tol * max(1, |y|, mass), mass being the absolute sum of the
/// summands. Cancelling coefficients carry roundoff of order mass * eps.
inline bool coefficient_close(complex x, double y, double tol, double mass = 0.0) {
    const double scale = std::max({1.0, std::abs(y), mass});
    return std::abs(x.imag()) <= tol * scale && std::abs(x.real() - y) <= tol * scale;
}

/// The Hecke sum evaluated term by term with complex phases
///   (1/r^2) sum_{ad = r, 0 <= b < d, a xi = alpha} d Z_1^0((a tau + b)/d) e(-b (xi^2) / 2d).
/// The result is checked against z_psu_hecke; any coefficient off by more
/// than `tol` (see coefficient_close) raises computation_error.
inline numeric_qseries z_psu_hecke_literal(std::int64_t r, const coord_vector& alpha, const rational& order,
                                           const even_lattice& lattice, double tol = 1e-9) {
    detail::require_rank(r);
    if (r > 12) throw precondition_error("literal Hecke path is limited to r <= 12");
    lattice.check_dim(alpha.size());
    hilbert_euler_cache chi(static_cast<std::size_t>(std::max<std::int64_t>(2, r * ceil_int(order) + 2)));
    std::map<std::int64_t, std::vector<complex>> parts;  // keys are exponents * r
    const double r2 = static_cast<double>(r) * static_cast<double>(r);
    for (std::int64_t a = 1; a <= r; ++a) {
        if (r % a != 0 || !detail::divides_all(a, alpha)) continue;
        const std::int64_t d = r / a;
        const std::int64_t xi2 = lattice.square(detail::divided(alpha, a));
        const std::int64_t n_end = ceil_int(order * d / a) + 1;
        for (std::int64_t b = 0; b < d; ++b) {
            for (std::int64_t n = 0; n < n_end; ++n) {
                // q^(a(n-1)/d) e(b(n-1)/d) e(-b xi2 / 2d); reduce the phase numerator mod 2d
                const std::int64_t phase_num = ((2 * b * (n - 1) - b * xi2) % (2 * d) + 2 * d) % (2 * d);
                const complex phase = std::polar(1.0, std::numbers::pi * static_cast<double>(phase_num) / static_cast<double>(d));
                parts[a * a * (n - 1)].push_back(static_cast<double>(d) / r2 * to_double(rational(chi(n))) * phase);
            }
        }
    }
    numeric_qseries out{r, {}, order, {}};
    for (auto& [key, values] : parts) {
        compensated_complex_sum acc;
        compensated_sum mass;
        for (auto z : values) {
            acc.add(z);
            mass.add(std::abs(z));
        }
        out.coeffs.emplace(key, acc.value());
        out.magnitude.emplace(key, mass.value());
    }

    const qseries exact = z_psu_hecke(r, alpha, order, lattice).with_denom(r);
    for (const auto& [key, value] : out.coeffs) {
        const rational e = make_rational(key, r);
        if (e >= order) continue;
        const double expected = to_double(exact.coefficient(e));
        if (!coefficient_close(value, expected, tol, out.magnitude.at(key))) {
            throw computation_error("literal Hecke sum disagrees with the exact transform at exponent " +
                                    std::to_string(to_double(e)));
        }
    }
    for (const auto& [key, c] : exact.terms()) {
        if (!out.coeffs.contains(key)) throw computation_error("literal Hecke sum is missing a term");
    }
    // phases cancelled these (checked above); keep the support of the exact series
    std::erase_if(out.coeffs, [&](const auto& kv) { return !exact.terms().contains(kv.first); });
    std::erase_if(out.magnitude, [&](const auto& kv) { return !exact.terms().contains(kv.first); });
    return out;
}

/// Certified bound on |Z_r^alpha - truncation at `order`| at |q| = q_abs.
/// Every omitted term is one of (d^2/r^2) chi(X^[n]) q^(a(n-1)/d) with
/// a(n-1)/d >= order; the congruence on n is dropped.
inline double z_psu_tail_bound(std::int64_t r, const coord_vector& alpha, const rational& order, double q_abs) {
    detail::require_rank(r);
    double total = 0.0;
    for (std::int64_t a = 1; a <= r; ++a) {
        if (r % a != 0 || !detail::divides_all(a, alpha)) continue;
        const std::int64_t d = r / a;
        const double y = std::pow(q_abs, static_cast<double>(a) / static_cast<double>(d));
        const std::int64_t n0 = std::max<std::int64_t>(0, ceil_int(order * d / a) + 1);
        total += static_cast<double>(d * d) / static_cast<double>(r * r) * gottsche_tail_bound(n0, y) / y;
    }
    return total;
}

/// Numeric value of the truncated Z_r^alpha at tau with a certified tail bound.
inline evaluation evaluate_z_psu(std::int64_t r, const coord_vector& alpha, const rational& order,
                                 const even_lattice& lattice, complex tau) {
    const qseries s = z_psu_direct(r, alpha, order, lattice);
    evaluation ev = qs_evaluate(s, tau);
    ev.tail = z_psu_tail_bound(r, alpha, order, std::exp(-2.0 * std::numbers::pi * tau.imag()));
    return ev;
}

}  // namespace k3tk
