#pragma once

// Existence, dimension and Euler characteristic of moduli spaces M_H(v) of
// stable sheaves on a K3 surface, as functions of the Mukai vector alone.
// Throughout H is a general ample divisor; no polarization is taken as input.

#include "k3tk/errors.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/qseries.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace k3tk {

namespace detail {

inline void require_positive_rank(const mukai_vector& v) {
    if (v.r <= 0) throw precondition_error("Mukai vector must have positive rank");
}

inline void require_primitive(const mukai_vector& v) {
    if (!primitive(v)) throw precondition_error("Mukai vector must be primitive");
}

inline void require_square_at_least_minus_two(const mukai_vector& v, const even_lattice& lattice) {
    if (square(v, lattice) < -2) throw precondition_error("moduli space is empty: <v^2> < -2");
}

}  // namespace detail

/// Non-emptiness for primitive v of positive rank: <v^2> >= -2.
inline bool exists_stable_primitive(const mukai_vector& v, const even_lattice& lattice) {
    detail::require_positive_rank(v);
    detail::require_primitive(v);
    return square(v, lattice) >= -2;
}

/// Semistable sheaves exist iff v = n w with <w^2> >= -2 for some n >= 1.
/// Scans the divisors of the content.
inline bool exists_semistable(const mukai_vector& v, const even_lattice& lattice) {
    detail::require_positive_rank(v);
    const std::int64_t c = content(v);
    for (std::int64_t n = 1; n <= c; ++n) {
        if (c % n == 0 && square(divide_exact(v, n), lattice) >= -2) return true;
    }
    return false;
}

/// Closed form of exists_semistable: <v^2> >= 0, or the primitive part is a (-2)-vector.
inline bool exists_semistable_closed_form(const mukai_vector& v, const even_lattice& lattice) {
    detail::require_positive_rank(v);
    return square(v, lattice) >= 0 || square(divide_exact(v, content(v)), lattice) == -2;
}

inline std::int64_t moduli_dim(const mukai_vector& v, const even_lattice& lattice) {
    detail::require_positive_rank(v);
    detail::require_primitive(v);
    detail::require_square_at_least_minus_two(v, lattice);
    return square(v, lattice) + 2;
}

/// n such that M_H(v) is deformation equivalent to X^[n]: <v^2>/2 + 1.
inline std::int64_t hilb_index(const mukai_vector& v, const even_lattice& lattice) {
    detail::require_primitive(v);
    detail::require_square_at_least_minus_two(v, lattice);
    return square(v, lattice) / 2 + 1;
}

/// chi(M_H(v)) = chi(X^[<v^2>/2 + 1]).
inline big_int euler_characteristic(const mukai_vector& v, const even_lattice& lattice) {
    return hilbert_euler(hilb_index(v, lattice));
}

enum class vector_case { a, b };

struct case_classification {
    vector_case which = vector_case::a;
    std::int64_t l = 0;                   // ell(v)
    std::optional<mukai_vector> witness;  // case B: v0 = (r, xi, b) with <v0^2> = -2
};

/// Write v = l(r + xi) + a omega with l = ell(v). Case B when 2r divides
/// (xi^2) + 2, i.e. there is a (-2)-vector v0 = r + xi + b omega.
inline case_classification classify_case(const mukai_vector& v, const even_lattice& lattice) {
    detail::require_positive_rank(v);
    lattice.check_dim(v.c1.size());
    const std::int64_t l = ell(v);
    const std::int64_t r = v.r / l;
    coord_vector xi = v.c1;
    for (auto& x : xi) x /= l;
    const std::int64_t num = lattice.square(xi) + 2;
    if (num % (2 * r) != 0) return {vector_case::a, l, std::nullopt};
    mukai_vector v0{r, std::move(xi), num / (2 * r)};
    if (square(v0, lattice) != -2) throw computation_error("case-B witness is not a (-2)-vector");
    return {vector_case::b, l, std::move(v0)};
}

/// Existence of mu-stable sheaves: <v^2> >= 0 in case A, <v^2> >= 2 l^2 in case B.
/// The case-B bound is applied verbatim; it reports false for rigid vectors
/// such as v(O_X), see mu_stable_boundary_corner.
inline bool exists_mu_stable(const mukai_vector& v, const even_lattice& lattice) {
    if (!exists_stable_primitive(v, lattice)) throw precondition_error("moduli space is empty: <v^2> < -2");
    const auto cls = classify_case(v, lattice);
    const std::int64_t s = square(v, lattice);
    if (cls.which == vector_case::a) return s >= 0;
    return s >= 2 * cls.l * cls.l;
}

/// True for case-B vectors with l = 1 and <v^2> = -2, where the verbatim
/// mu-stability bound disagrees with rigid mu-stable bundles.
inline bool mu_stable_boundary_corner(const mukai_vector& v, const even_lattice& lattice) {
    const auto cls = classify_case(v, lattice);
    return cls.which == vector_case::b && cls.l == 1 && square(v, lattice) == -2;
}

enum class nlf_kind { rank_one, refl_point, univ_ext, has_locally_free };

inline const char* to_string(nlf_kind k) {
    switch (k) {
        case nlf_kind::rank_one: return "rank_one";
        case nlf_kind::refl_point: return "refl_point";
        case nlf_kind::univ_ext: return "univ_ext";
        case nlf_kind::has_locally_free: return "has_locally_free";
    }
    return "?";
}

struct nlf_classification {
    nlf_kind kind = nlf_kind::has_locally_free;
    std::string model;
};

/// Detects the Mukai vectors whose moduli space consists only of non-locally
/// free sheaves:
///   (i)   rk v = 1                                   M = Hilb^n
///   (ii)  v = (rk v0) v0 - omega                      M = X
///   (iii) rk v0 = 1 and v = l v0 - (l + 1) omega      M = Hilb^(l+1)
/// where v0 is the case-B (-2)-vector.
inline nlf_classification classify_non_locally_free(const mukai_vector& v, const even_lattice& lattice) {
    if (!exists_stable_primitive(v, lattice)) throw precondition_error("moduli space is empty: <v^2> < -2");
    if (v.r == 1) return {nlf_kind::rank_one, "Hilb^" + std::to_string(hilb_index(v, lattice))};
    const auto cls = classify_case(v, lattice);
    if (cls.which == vector_case::b) {
        const mukai_vector& v0 = *cls.witness;
        const mukai_vector w = omega(lattice.rank());
        if (v == v0.r * v0 - w) return {nlf_kind::refl_point, "X"};
        if (v0.r == 1 && v == cls.l * v0 - (cls.l + 1) * w) {
            return {nlf_kind::univ_ext, "Hilb^" + std::to_string(cls.l + 1)};
        }
    }
    return {nlf_kind::has_locally_free, ""};
}

}  // namespace k3tk
