#pragma once

// Generators of the isometry group of the Mukai lattice:
//   T_N      x -> ch(N) x            (tensoring with a line bundle)
//   R_u      x -> x + <x,u> u        (reflection in a (-2)-vector)
//   g in O(NS) acting on the H^2 part
// plus -1 and the dual x -> x^vee. Isometries are kept as words in these
// generators; nothing is ever expanded into a matrix.

#include "k3tk/errors.hpp"
#include "k3tk/lattice.hpp"

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

namespace k3tk {

struct translate_op {
    coord_vector n;
};

struct reflect_op {
    mukai_vector u;
};

/// Integral automorphism of NS, acting by c1 -> M c1. Row-major.
struct ns_auto_op {
    std::vector<std::vector<std::int64_t>> m;
};

struct negate_op {};
struct dual_op {};

/// One generator. Construct through the named factories, which validate
/// against the lattice.
class isometry_elem {
public:
    using storage = std::variant<translate_op, reflect_op, ns_auto_op, negate_op, dual_op>;

    static isometry_elem translate(coord_vector n, const even_lattice& lattice) {
        lattice.check_dim(n.size());
        return isometry_elem(translate_op{std::move(n)});
    }

    static isometry_elem reflect(mukai_vector u, const even_lattice& lattice) {
        lattice.check_dim(u.c1.size());
        if (square(u, lattice) != -2) throw precondition_error("reflection vector must satisfy <u,u> = -2");
        return isometry_elem(reflect_op{std::move(u)});
    }

    static isometry_elem ns_auto(std::vector<std::vector<std::int64_t>> m, const even_lattice& lattice) {
        const std::size_t n = lattice.rank();
        if (m.size() != n) throw input_error("NS automorphism has wrong size");
        for (const auto& row : m) {
            if (row.size() != n) throw input_error("NS automorphism has wrong size");
        }
        // M^T G M = G
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                __int128 acc = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l < n; ++l) acc += __int128(m[k][i]) * lattice(k, l) * m[l][j];
                }
                if (acc != lattice(i, j)) throw precondition_error("matrix does not preserve the intersection form");
            }
        }
        return isometry_elem(ns_auto_op{std::move(m)});
    }

    static isometry_elem negate() { return isometry_elem(negate_op{}); }
    static isometry_elem dualize() { return isometry_elem(dual_op{}); }

    const storage& value() const noexcept { return value_; }

private:
    explicit isometry_elem(storage v) : value_(std::move(v)) {}
    storage value_;
};

/// Applied right to left; the empty word is the identity.
using isometry_word = std::vector<isometry_elem>;

inline mukai_vector apply_translate(const coord_vector& n, const mukai_vector& v, const even_lattice& lattice) {
    lattice.check_dim(n.size());
    lattice.check_dim(v.c1.size());
    // (1 + N + (N^2)/2 w)(r + xi + a w) = r + (xi + rN) + (a + N.xi + r (N^2)/2) w
    mukai_vector out = v;
    for (std::size_t i = 0; i < n.size(); ++i) out.c1[i] = detail::narrow(__int128(v.c1[i]) + __int128(v.r) * n[i]);
    const __int128 half_n2 = lattice.square(n) / 2;
    out.a = detail::narrow(__int128(v.a) + lattice.form(n, v.c1) + __int128(v.r) * half_n2);
    return out;
}

inline mukai_vector apply_reflect(const mukai_vector& u, const mukai_vector& v, const even_lattice& lattice) {
    if (square(u, lattice) != -2) throw precondition_error("reflection vector must satisfy <u,u> = -2");
    return v + mukai_pairing(v, u, lattice) * u;
}

inline mukai_vector apply_ns_auto(const std::vector<std::vector<std::int64_t>>& m, const mukai_vector& v,
                                  const even_lattice& lattice) {
    lattice.check_dim(v.c1.size());
    mukai_vector out = v;
    for (std::size_t i = 0; i < m.size(); ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < m.size(); ++j) acc += __int128(m[i][j]) * v.c1[j];
        out.c1[i] = detail::narrow(acc);
    }
    return out;
}

inline mukai_vector apply(const isometry_elem& g, const mukai_vector& v, const even_lattice& lattice) {
    return std::visit(
        [&](const auto& op) -> mukai_vector {
            using T = std::decay_t<decltype(op)>;
            if constexpr (std::is_same_v<T, translate_op>) {
                return apply_translate(op.n, v, lattice);
            } else if constexpr (std::is_same_v<T, reflect_op>) {
                return apply_reflect(op.u, v, lattice);
            } else if constexpr (std::is_same_v<T, ns_auto_op>) {
                return apply_ns_auto(op.m, v, lattice);
            } else if constexpr (std::is_same_v<T, negate_op>) {
                return -v;
            } else {
                return dual(v);
            }
        },
        g.value());
}

inline mukai_vector apply_word(const isometry_word& word, const mukai_vector& v, const even_lattice& lattice) {
    mukai_vector out = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) out = apply(*it, out, lattice);
    return out;
}

struct reflection_targets {
    mukai_vector plain;  // -(v + <v,v1> v1)
    mukai_vector dual;   // plain^vee
};

/// Mukai vectors of the kernel of the evaluation map against an exceptional
/// sheaf of vector v1, and of its dual.
inline reflection_targets reflection_target(const mukai_vector& v, const mukai_vector& v1, const even_lattice& lattice) {
    mukai_vector plain = -apply_reflect(v1, v, lattice);
    mukai_vector d = k3tk::dual(plain);
    return {std::move(plain), std::move(d)};
}

}  // namespace k3tk
