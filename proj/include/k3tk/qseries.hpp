#pragma once

// Exact truncated q-series with rational coefficients and rational exponents.
//
// A series is  sum_k c_k q^(k/D)  for one common denominator D, known to be
// complete for every exponent below the truncation order T. An exact series
// (a Laurent polynomial) has no truncation order. Arithmetic propagates T
// pessimistically; asking for a coefficient at or above T throws.

#include "k3tk/errors.hpp"
#include "k3tk/numeric.hpp"
#include "k3tk/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace k3tk {

class qseries {
public:
    using term_map = std::map<std::int64_t, rational>;

    /// The zero polynomial.
    qseries() = default;

    /// sum_k coeffs[k] q^(k/denom), complete below `trunc` (nullopt: exact).
    qseries(std::int64_t denom, term_map coeffs, std::optional<rational> trunc = std::nullopt)
        : denom_(denom), coeffs_(std::move(coeffs)), trunc_(std::move(trunc)) {
        if (denom_ <= 0) throw input_error("q-series exponent denominator must be positive");
        tidy();
    }

    static qseries monomial(const rational& exponent, const rational& coeff) {
        const std::int64_t d = denominator_of(exponent).convert_to<std::int64_t>();
        return qseries(d, {{numerator_of(exponent).convert_to<std::int64_t>(), coeff}});
    }

    static qseries constant(const rational& c) { return monomial(rational(0), c); }

    /// O(q^trunc): nothing known below `trunc` except that it is zero.
    static qseries big_o(const rational& trunc) { return qseries(1, {}, trunc); }

    std::int64_t denom() const noexcept { return denom_; }
    const term_map& terms() const noexcept { return coeffs_; }
    const std::optional<rational>& trunc() const noexcept { return trunc_; }
    bool is_exact() const noexcept { return !trunc_.has_value(); }

    rational exponent_of(std::int64_t key) const { return rational(big_int(key), big_int(denom_)); }

    /// Smallest exponent with a nonzero coefficient; for an empty truncated
    /// series the truncation order; nullopt for the exact zero series.
    std::optional<rational> lowest_bound() const {
        if (!coeffs_.empty()) return exponent_of(coeffs_.begin()->first);
        return trunc_;
    }

    /// Coefficient of q^e. Throws truncation_error if e >= trunc.
    rational coefficient(const rational& e) const {
        if (trunc_ && e >= *trunc_) throw truncation_error("coefficient requested at or beyond the truncation order");
        const rational scaled = e * denom_;
        if (denominator_of(scaled) != 1) return rational(0);
        const auto it = coeffs_.find(numerator_of(scaled).convert_to<std::int64_t>());
        return it == coeffs_.end() ? rational(0) : it->second;
    }

    rational coefficient(std::int64_t e) const { return coefficient(rational(e)); }

    /// Same series written over denominator `d` (must be a multiple of denom()).
    qseries with_denom(std::int64_t d) const {
        if (d % denom_ != 0) throw input_error("denominator is not a multiple of the current one");
        const std::int64_t f = d / denom_;
        term_map out;
        for (const auto& [k, c] : coeffs_) out.emplace(k * f, c);
        qseries s;
        s.denom_ = d;
        s.coeffs_ = std::move(out);
        s.trunc_ = trunc_;
        return s;
    }

    friend bool operator==(const qseries& x, const qseries& y) {
        return x.denom_ == y.denom_ && x.coeffs_ == y.coeffs_ && x.trunc_ == y.trunc_;
    }

private:
    void tidy() {
        for (auto it = coeffs_.begin(); it != coeffs_.end();) {
            if (it->second == 0 || (trunc_ && exponent_of(it->first) >= *trunc_)) {
                it = coeffs_.erase(it);
            } else {
                ++it;
            }
        }
        std::int64_t g = denom_;
        for (const auto& [k, c] : coeffs_) g = std::gcd(g, k);
        if (g > 1) {
            term_map reduced;
            for (auto& [k, c] : coeffs_) reduced.emplace(k / g, std::move(c));
            coeffs_ = std::move(reduced);
            denom_ /= g;
        }
    }

    std::int64_t denom_ = 1;
    term_map coeffs_;
    std::optional<rational> trunc_;
};

namespace detail {

inline std::optional<rational> min_trunc(const std::optional<rational>& x, const std::optional<rational>& y) {
    if (!x) return y;
    if (!y) return x;
    return std::min(*x, *y);
}

}  // namespace detail

inline qseries qs_add(const qseries& x, const qseries& y) {
    const std::int64_t d = std::lcm(x.denom(), y.denom());
    qseries::term_map out = x.with_denom(d).terms();
    const qseries ys = y.with_denom(d);
    for (const auto& [k, c] : ys.terms()) out[k] += c;
    return qseries(d, std::move(out), detail::min_trunc(x.trunc(), y.trunc()));
}

inline qseries qs_scale(const qseries& x, const rational& s) {
    qseries::term_map out;
    if (s != 0) {
        for (const auto& [k, c] : x.terms()) out.emplace(k, c * s);
    }
    return qseries(x.denom(), std::move(out), x.trunc());
}

inline qseries qs_sub(const qseries& x, const qseries& y) { return qs_add(x, qs_scale(y, rational(-1))); }

inline qseries qs_mul(const qseries& x, const qseries& y) {
    const auto lx = x.lowest_bound();
    const auto ly = y.lowest_bound();
    if (!lx || !ly) return qseries();  // exact zero factor

    std::optional<rational> trunc;
    if (x.trunc()) trunc = *x.trunc() + *ly;
    if (y.trunc()) trunc = detail::min_trunc(trunc, *y.trunc() + *lx);

    const std::int64_t d = std::lcm(x.denom(), y.denom());
    const qseries xs = x.with_denom(d);
    const qseries ys = y.with_denom(d);
    std::optional<std::int64_t> key_limit;
    if (trunc) key_limit = ceil_int(*trunc * d);

    qseries::term_map out;
    for (const auto& [i, ci] : xs.terms()) {
        for (const auto& [j, cj] : ys.terms()) {
            if (key_limit && i + j >= *key_limit) break;
            out[i + j] += ci * cj;
        }
    }
    return qseries(d, std::move(out), trunc);
}

/// q -> q^m
inline qseries qs_substitute_power(const qseries& x, std::int64_t m) {
    if (m <= 0) throw input_error("substitution power must be positive");
    qseries::term_map out;
    for (const auto& [k, c] : x.terms()) out.emplace(k * m, c);
    std::optional<rational> trunc;
    if (x.trunc()) trunc = *x.trunc() * m;
    return qseries(x.denom(), std::move(out), trunc);
}

/// Estimated size of the omitted part of a truncated series at |q| = q_abs,
/// extrapolated geometrically from the last few known terms. Infinity when
/// the known terms are not visibly decaying.
inline double qs_tail_estimate(const qseries& s, double q_abs) {
    if (s.is_exact()) return 0.0;
    if (s.terms().empty()) return std::numeric_limits<double>::infinity();
    const double t_order = to_double(*s.trunc());
    std::vector<std::pair<double, double>> last;  // (exponent, log|term|)
    for (auto it = s.terms().rbegin(); it != s.terms().rend() && last.size() < 6; ++it) {
        const double mag = std::abs(to_double(it->second));
        last.emplace_back(to_double(s.exponent_of(it->first)), std::log(mag) + to_double(s.exponent_of(it->first)) * std::log(q_abs));
    }
    if (last.size() < 2) return std::numeric_limits<double>::infinity();
    double rate = -std::numeric_limits<double>::infinity();  // log decay per unit exponent
    for (std::size_t i = 0; i + 1 < last.size(); ++i) {
        const double de = last[i].first - last[i + 1].first;
        rate = std::max(rate, (last[i].second - last[i + 1].second) / de);
    }
    if (rate >= 0.0) return std::numeric_limits<double>::infinity();
    const double step = 1.0 / static_cast<double>(s.denom());
    const double first_missing = std::max(t_order, last.front().first + step);
    const double log_first = last.front().second + rate * (first_missing - last.front().first);
    return std::exp(log_first) / (1.0 - std::exp(rate * step));
}

/// sum c_k exp(2 pi i tau k/D), with a tail estimate from qs_tail_estimate.
inline evaluation qs_evaluate(const qseries& s, complex tau) {
    if (!(tau.imag() > 0.0)) throw input_error("tau must lie in the upper half plane");
    compensated_complex_sum acc;
    for (const auto& [k, c] : s.terms()) acc.add(to_double(c) * q_power(tau, static_cast<double>(k) / s.denom()));
    const double q_abs = std::exp(-2.0 * std::numbers::pi * tau.imag());
    return {acc.value(), qs_tail_estimate(s, q_abs)};
}

// ---------------------------------------------------------------------------
// Euler characteristics of Hilbert schemes of points on a K3 surface.

/// chi(X^[n]) for 0 <= n < count, i.e. the coefficients of prod_m (1 - q^m)^-24.
/// Uses n c_n = 24 sum_{k=1..n} sigma(k) c_{n-k}, the logarithmic derivative of the product.
inline std::vector<big_int> hilbert_euler_table(std::size_t count) {
    std::vector<std::int64_t> sigma(count + 1, 0);
    for (std::size_t d = 1; d <= count; ++d) {
        for (std::size_t m = d; m <= count; m += d) sigma[m] += static_cast<std::int64_t>(d);
    }
    std::vector<big_int> c(count);
    if (count == 0) return c;
    c[0] = 1;
    for (std::size_t n = 1; n < count; ++n) {
        big_int acc = 0;
        for (std::size_t k = 1; k <= n; ++k) acc += sigma[k] * c[n - k];
        c[n] = 24 * acc / static_cast<std::int64_t>(n);
    }
    return c;
}

/// chi(X^[n]), zero for n < 0.
inline big_int hilbert_euler(std::int64_t n) {
    if (n < 0) return 0;
    return hilbert_euler_table(static_cast<std::size_t>(n) + 1).back();
}

/// sum_{n < order} chi(X^[n]) q^n, truncated at q^order.
inline qseries gottsche_series(std::int64_t order) {
    if (order < 1) throw input_error("Gottsche series order must be at least 1");
    const auto table = hilbert_euler_table(static_cast<std::size_t>(order));
    qseries::term_map terms;
    for (std::size_t n = 0; n < table.size(); ++n) terms.emplace(static_cast<std::int64_t>(n), rational(table[n]));
    return qseries(1, std::move(terms), rational(order));
}

/// 1/eta^24 = sum_{n >= 0} chi(X^[n]) q^(n-1), complete for exponents below `order`.
inline qseries z1_zero(std::int64_t order) {
    if (order < 0) throw input_error("order must be nonnegative");
    return qs_mul(qseries::monomial(rational(-1), rational(1)), gottsche_series(order + 1));
}

/// Upper bound on sum_{n >= start} chi(X^[n]) x^n for 0 <= x < 1.
/// All coefficients are positive, so c_n <= F(rho) / rho^n for every
/// x < rho < 1 where F is the generating product; the geometric tail then
/// bounds the sum. The best of a few rho is returned.
inline double gottsche_tail_bound(std::int64_t start, double x) {
    if (x <= 0.0) return start <= 0 ? 1.0 : 0.0;
    if (x >= 1.0) return std::numeric_limits<double>::infinity();
    start = std::max<std::int64_t>(start, 0);
    double best = std::numeric_limits<double>::infinity();
    for (double t : {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const double rho = std::pow(x, t);
        // log F(rho) = -24 sum_m log(1 - rho^m), tail of the m-sum bounded by
        // sum_{m > M} rho^m / (1 - rho^m) <= rho^(M+1) / ((1 - rho)(1 - rho^(M+1))).
        double log_f = 0.0;
        double rho_m = rho;
        int m = 1;
        for (; m <= 100000 && rho_m > 1e-18; ++m, rho_m *= rho) log_f -= 24.0 * std::log1p(-rho_m);
        log_f += 24.0 * rho_m / ((1.0 - rho) * (1.0 - rho_m));
        const double ratio = x / rho;
        const double log_bound = log_f + static_cast<double>(start) * std::log(ratio) - std::log1p(-ratio);
        best = std::min(best, std::exp(log_bound));
    }
    return best;
}

}  // namespace k3tk
