#pragma once

// Even lattices and Mukai vectors.
//
// The Mukai lattice of a K3 surface is H^0 + H^2 + H^4 with the pairing
//   <x, y> = (x1 . y1) - x0 y2 - x2 y0.
// Only the degree-2 part carries an interesting form, so a lattice here is a
// Gram matrix G for the intersection form on (a sublattice of) H^2. The
// physical cases (NS(X) of rank rho, or the rank-22 H^2) are just particular
// Gram matrices.
//
// Sign convention: G is the intersection form (xi^2). The quadratic form Q
// used by the theta functions in narain.hpp is Q = -G.

#include "k3tk/errors.hpp"

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace k3tk {

using coord_vector = std::vector<std::int64_t>;

namespace detail {

inline std::int64_t narrow(__int128 x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
        throw input_error("integer overflow in lattice arithmetic");
    }
    return static_cast<std::int64_t>(x);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) { return narrow(__int128(a) + b); }
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) { return narrow(__int128(a) * b); }

inline std::int64_t abs_gcd(std::int64_t a, std::int64_t b) {
    return std::gcd(a, b);  // std::gcd works on |a|, |b|
}

}  // namespace detail

/// Integral even symmetric bilinear form given by its Gram matrix.
class even_lattice {
public:
    even_lattice() = default;

    even_lattice(std::initializer_list<std::initializer_list<std::int64_t>> rows)
        : even_lattice(std::vector<std::vector<std::int64_t>>(rows.begin(), rows.end())) {}

    explicit even_lattice(std::vector<std::vector<std::int64_t>> gram) : gram_(std::move(gram)) {
        const std::size_t n = gram_.size();
        if (n == 0) throw input_error("lattice rank must be positive");
        for (const auto& row : gram_) {
            if (row.size() != n) throw input_error("Gram matrix is not square");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (gram_[i][i] % 2 != 0) throw input_error("Gram matrix has an odd diagonal entry; lattice is not even");
            for (std::size_t j = 0; j < i; ++j) {
                if (gram_[i][j] != gram_[j][i]) throw input_error("Gram matrix is not symmetric");
            }
        }
    }

    /// Rank-1 lattice Z H with (H^2) = h2.
    static even_lattice rank_one(std::int64_t h2) { return even_lattice(std::vector<std::vector<std::int64_t>>{{h2}}); }

    std::size_t rank() const noexcept { return gram_.size(); }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return gram_[i][j]; }
    const std::vector<std::vector<std::int64_t>>& gram() const noexcept { return gram_; }

    /// x^T G y
    std::int64_t form(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
        check_dim(x.size());
        check_dim(y.size());
        __int128 acc = 0;
        for (std::size_t i = 0; i < rank(); ++i) {
            if (x[i] == 0) continue;
            __int128 row = 0;
            for (std::size_t j = 0; j < rank(); ++j) row += __int128(gram_[i][j]) * y[j];
            acc += __int128(x[i]) * row;
        }
        return detail::narrow(acc);
    }

    std::int64_t square(std::span<const std::int64_t> x) const { return form(x, x); }

    void check_dim(std::size_t n) const {
        if (n != rank()) {
            throw input_error("dimension mismatch: vector has " + std::to_string(n) + " NS coordinates, lattice rank is " +
                              std::to_string(rank()));
        }
    }

    friend bool operator==(const even_lattice&, const even_lattice&) = default;

private:
    std::vector<std::vector<std::int64_t>> gram_;
};

/// v = r + c1 + a*omega in H^0 + H^2 + H^4, c1 in NS coordinates.
struct mukai_vector {
    std::int64_t r = 0;
    coord_vector c1;
    std::int64_t a = 0;

    friend bool operator==(const mukai_vector&, const mukai_vector&) = default;

    mukai_vector operator-() const {
        mukai_vector out{-r, c1, -a};
        for (auto& x : out.c1) x = -x;
        return out;
    }

    friend mukai_vector operator+(const mukai_vector& x, const mukai_vector& y) {
        if (x.c1.size() != y.c1.size()) throw input_error("dimension mismatch in Mukai vector sum");
        mukai_vector out{detail::checked_add(x.r, y.r), x.c1, detail::checked_add(x.a, y.a)};
        for (std::size_t i = 0; i < out.c1.size(); ++i) out.c1[i] = detail::checked_add(out.c1[i], y.c1[i]);
        return out;
    }

    friend mukai_vector operator-(const mukai_vector& x, const mukai_vector& y) { return x + (-y); }

    friend mukai_vector operator*(std::int64_t k, const mukai_vector& x) {
        mukai_vector out{detail::checked_mul(k, x.r), x.c1, detail::checked_mul(k, x.a)};
        for (auto& c : out.c1) c = detail::checked_mul(k, c);
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const mukai_vector& v) {
        os << '(' << v.r << ", [";
        for (std::size_t i = 0; i < v.c1.size(); ++i) os << (i ? ", " : "") << v.c1[i];
        return os << "], " << v.a << ')';
    }
};

/// The fundamental class omega = (0, 0, 1) on a lattice of the given rank.
inline mukai_vector omega(std::size_t rank) { return {0, coord_vector(rank, 0), 1}; }

/// <x, y> = c1(x)^T G c1(y) - x.r y.a - x.a y.r
inline std::int64_t mukai_pairing(const mukai_vector& x, const mukai_vector& y, const even_lattice& lattice) {
    const __int128 middle = lattice.form(x.c1, y.c1);
    return detail::narrow(middle - __int128(x.r) * y.a - __int128(x.a) * y.r);
}

inline std::int64_t square(const mukai_vector& v, const even_lattice& lattice) { return mukai_pairing(v, v, lattice); }

/// Mukai vector ch(E) sqrt(td_X) = (r, c1, r + ch2).
inline mukai_vector mukai_from_chern(std::int64_t r, coord_vector c1, std::int64_t ch2, const even_lattice& lattice) {
    lattice.check_dim(c1.size());
    return {r, std::move(c1), detail::checked_add(r, ch2)};
}

/// ch2 read back from a Mukai vector: a - r.
inline std::int64_t ch2_of(const mukai_vector& v) { return detail::narrow(__int128(v.a) - v.r); }

/// x^vee = x0 - x1 + x2
inline mukai_vector dual(const mukai_vector& v) {
    mukai_vector out = v;
    for (auto& x : out.c1) x = -x;
    return out;
}

/// Content of the rank-and-c1 part: gcd(r, c1 coordinates). The c1 part is
/// taken in the stored integral basis; any change of integral basis preserves it.
inline std::int64_t ell(const mukai_vector& v) {
    std::int64_t g = detail::abs_gcd(v.r, 0);
    for (auto x : v.c1) g = detail::abs_gcd(g, x);
    return g;
}

/// gcd of every component, 0 for the zero vector.
inline std::int64_t content(const mukai_vector& v) { return detail::abs_gcd(ell(v), v.a); }

inline bool primitive(const mukai_vector& v) { return content(v) == 1; }

/// v / k, requires k to divide every component.
inline mukai_vector divide_exact(const mukai_vector& v, std::int64_t k) {
    if (k == 0 || v.r % k != 0 || v.a % k != 0) throw input_error("vector is not divisible");
    mukai_vector out{v.r / k, v.c1, v.a / k};
    for (auto& x : out.c1) {
        if (x % k != 0) throw input_error("vector is not divisible");
        x /= k;
    }
    return out;
}

}  // namespace k3tk
