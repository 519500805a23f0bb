#pragma once

// Siegel-Narain theta functions on small even lattices and the U(r)
// partition function assembled two ways.
//
// Q = -G throughout. A splitting P = (P_L, P_R) decomposes the real span of
// the lattice into a Q-positive and a Q-negative part that are Q-orthogonal;
// for a K3 surface that is R^{19,0} + R^{0,3}, here any signature (p, n).
//
//   Theta_{alpha,r}(tau, P, x) = sum_{c in alpha + r Lambda}
//       q^(Q(c_L)/2r) qbar^(-Q(c_R)/2r) e(Q(c, x)).
//
// Sums are truncated to the majorant ball Q(c_L) - Q(c_R) <= R^2 and carry a
// rigorous bound on the omitted terms.

#include "k3tk/errors.hpp"
#include "k3tk/lattice.hpp"
#include "k3tk/numeric.hpp"
#include "k3tk/partition.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace k3tk {

inline Eigen::MatrixXd q_form(const even_lattice& lattice) {
    const auto n = static_cast<Eigen::Index>(lattice.rank());
    Eigen::MatrixXd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            q(i, j) = -static_cast<double>(lattice(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
    }
    return q;
}

class splitting {
public:
    /// Validates PL + PR = 1, Q-orthogonality, and the definiteness of Q on
    /// both ranges (via a positive-definite majorant).
    splitting(Eigen::MatrixXd pl, Eigen::MatrixXd pr, const even_lattice& lattice) : pl_(std::move(pl)), pr_(std::move(pr)) {
        const auto n = static_cast<Eigen::Index>(lattice.rank());
        if (pl_.rows() != n || pl_.cols() != n || pr_.rows() != n || pr_.cols() != n) {
            throw input_error("splitting has wrong dimensions");
        }
        if (((pl_ + pr_) - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12) {
            throw input_error("splitting projections do not sum to the identity");
        }
        const Eigen::MatrixXd q = q_form(lattice);
        if ((pl_.transpose() * q * pr_).cwiseAbs().maxCoeff() > 1e-10) {
            throw input_error("splitting is not Q-orthogonal");
        }
        const Eigen::MatrixXd ql = pl_.transpose() * q * pl_;
        const Eigen::MatrixXd qr = pr_.transpose() * q * pr_;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(ql), er(qr);
        if (el.eigenvalues().minCoeff() < -1e-10 || er.eigenvalues().maxCoeff() > 1e-10) {
            throw input_error("Q is not positive on range(P_L) and negative on range(P_R)");
        }
        majorant_ = ql - qr;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(majorant_);
        min_eigen_ = em.eigenvalues().minCoeff();
        if (min_eigen_ <= 1e-12) throw input_error("splitting majorant is not positive definite");
        q_ = q;
    }

    /// The splitting by eigenspaces of Q, which are both orthogonal and Q-orthogonal.
    static splitting from_form(const even_lattice& lattice) {
        const Eigen::MatrixXd q = q_form(lattice);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
        const auto n = q.rows();
        Eigen::MatrixXd pl = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index k = 0; k < n; ++k) {
            if (es.eigenvalues()(k) > 0) pl += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
        }
        Eigen::MatrixXd pr = Eigen::MatrixXd::Identity(n, n) - pl;
        return splitting(pl, pr, lattice);
    }

    const Eigen::MatrixXd& pl() const noexcept { return pl_; }
    const Eigen::MatrixXd& pr() const noexcept { return pr_; }
    const Eigen::MatrixXd& q() const noexcept { return q_; }
    /// Q(c_L) - Q(c_R) as a matrix.
    const Eigen::MatrixXd& majorant() const noexcept { return majorant_; }
    double majorant_min_eigenvalue() const noexcept { return min_eigen_; }

private:
    Eigen::MatrixXd pl_;
    Eigen::MatrixXd pr_;
    Eigen::MatrixXd q_;
    Eigen::MatrixXd majorant_;
    double min_eigen_ = 0.0;
};

struct theta_result {
    complex value;
    double tail = 0.0;        // bound on the omitted terms
    double abs_sum = 0.0;     // sum of |term| over the summed points
    std::size_t points = 0;
};

namespace detail {

/// Calls f(c) for every c in alpha + r Z^n with c^T S c <= radius2, in
/// lexicographic order of the lattice coordinates.
inline void for_each_coset_point(const std::vector<std::int64_t>& alpha, std::int64_t r, const Eigen::MatrixXd& s,
                                 double min_eigen, double radius2, const std::function<void(const Eigen::VectorXd&)>& f) {
    const std::size_t n = alpha.size();
    const double box = std::sqrt(std::max(radius2, 0.0) / min_eigen);
    std::vector<std::int64_t> lo(n), hi(n), m(n);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = static_cast<std::int64_t>(std::ceil((-box - static_cast<double>(alpha[i])) / static_cast<double>(r)));
        hi[i] = static_cast<std::int64_t>(std::floor((box - static_cast<double>(alpha[i])) / static_cast<double>(r)));
        if (lo[i] > hi[i]) return;
        m[i] = lo[i];
    }
    Eigen::VectorXd c(static_cast<Eigen::Index>(n));
    while (true) {
        for (std::size_t i = 0; i < n; ++i) c(static_cast<Eigen::Index>(i)) = static_cast<double>(alpha[i] + r * m[i]);
        if (c.dot(s * c) <= radius2 * (1.0 + 1e-12)) f(c);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (m[i] < hi[i]) {
                ++m[i];
                break;
            }
            m[i] = lo[i];
            if (i == 0) return;
        }
        if (n == 0) return;
    }
}

struct theta_weight {
    const splitting& split;
    std::int64_t r;
    complex tau;
    Eigen::VectorXcd qx;  // Q x

    complex operator()(const Eigen::VectorXd& c) const {
        const Eigen::VectorXd cl = split.pl() * c;
        const Eigen::VectorXd cr = split.pr() * c;
        const double two_r = 2.0 * static_cast<double>(r);
        const double a = cl.dot(split.q() * cl) / two_r;  // Q(c_L)/2r >= 0
        const double b = cr.dot(split.q() * cr) / two_r;  // Q(c_R)/2r <= 0
        // q^a qbar^(-b) = exp(2 pi i (tau a + conj(tau) b))
        const complex phase = c.cast<complex>().dot(qx);  // dot conjugates its first argument; c is real
        return e2pi(tau * a + std::conj(tau) * b + phase);
    }
};

inline std::vector<std::int64_t> check_alpha(const std::vector<std::int64_t>& alpha, const even_lattice& lattice) {
    lattice.check_dim(alpha.size());
    return alpha;
}

}  // namespace detail

/// Bound on sum |term| over c in alpha + r Lambda outside the majorant ball of radius R.
inline double theta_tail_bound(const even_lattice& lattice, std::int64_t r, complex tau, const splitting& p,
                               const std::vector<complex>& x, double radius) {
    const double t = std::numbers::pi * tau.imag() / static_cast<double>(r);
    const double lambda = p.majorant_min_eigenvalue();
    Eigen::VectorXd im_x(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) im_x(static_cast<Eigen::Index>(i)) = x[i].imag();
    const double b = 2.0 * std::numbers::pi * (p.q() * im_x).norm();
    // |term| <= exp(-t M(c) + b |c|),  M(c) >= lambda |c|^2; for M(c) > R^2:
    // exp(-t M) <= exp(-t R^2 / 2) exp(-t M / 2), and the rest is a Gaussian sum.
    double log_prefactor = -t * radius * radius / 2.0;
    double u = t * lambda / 2.0;
    if (b > 0.0) {
        u = t * lambda / 4.0;
        log_prefactor += b * b / (t * lambda);
    }
    double gauss = 1.0;
    for (std::size_t i = 0; i < lattice.rank(); ++i) gauss *= 1.0 + std::sqrt(std::numbers::pi / u) / static_cast<double>(r);
    return std::exp(log_prefactor) * gauss;
}

/// Truncated Siegel-Narain theta function over the coset alpha + r Lambda.
inline theta_result theta_siegel_narain(const even_lattice& lattice, const std::vector<std::int64_t>& alpha, std::int64_t r,
                                        complex tau, const splitting& p, const std::vector<complex>& x, double radius) {
    if (!(tau.imag() > 0.0)) throw input_error("tau must lie in the upper half plane");
    if (radius < 0.0) throw input_error("cutoff radius must be nonnegative");
    if (r < 1) throw precondition_error("rank must be at least 1");
    lattice.check_dim(x.size());
    const auto a = detail::check_alpha(alpha, lattice);
    Eigen::VectorXcd xv(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) xv(static_cast<Eigen::Index>(i)) = x[i];
    const detail::theta_weight weight{p, r, tau, p.q().cast<complex>() * xv};

    theta_result out;
    compensated_complex_sum acc;
    compensated_sum abs_acc;
    detail::for_each_coset_point(a, r, p.majorant(), p.majorant_min_eigenvalue(), radius * radius, [&](const Eigen::VectorXd& c) {
        const complex term = weight(c);
        acc.add(term);
        abs_acc.add(std::abs(term));
        ++out.points;
    });
    out.value = acc.value();
    out.abs_sum = abs_acc.value();
    out.tail = theta_tail_bound(lattice, r, tau, p, x, radius);
    return out;
}

/// Largest toy scale accepted by the U(r) partition function sums.
inline constexpr std::size_t max_full_lattice_rank = 2;
inline constexpr std::int64_t max_full_rank = 3;

namespace detail {

inline void check_full_scale(const even_lattice& lattice, std::int64_t r) {
    if (r < 1) throw precondition_error("rank must be at least 1");
    if (lattice.rank() > max_full_lattice_rank || r > max_full_rank) {
        throw precondition_error("U(r) partition function sums are limited to lattice rank <= 2 and r <= 3");
    }
}

/// All coset representatives of Lambda / r Lambda with coordinates in [0, r).
inline std::vector<std::vector<std::int64_t>> coset_representatives(std::size_t n, std::int64_t r) {
    std::vector<std::vector<std::int64_t>> out;
    std::vector<std::int64_t> cur(n, 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (++cur[i] < r) break;
            cur[i] = 0;
            if (i == 0) return out;
        }
        if (n == 0) return out;
    }
}

/// Sum of |c_k| |q|^e over a truncated series.
inline double abs_evaluate(const qseries& s, double q_abs) {
    compensated_sum acc;
    for (const auto& [k, c] : s.terms()) {
        acc.add(std::abs(to_double(c)) * std::pow(q_abs, static_cast<double>(k) / static_cast<double>(s.denom())));
    }
    return acc.value();
}

}  // namespace detail

/// Bound on the part of Z_r(tau, x) omitted by truncating the Mukai-vector
/// exponent at `order` and c1 to the majorant ball of radius R. Shared by the
/// direct and factorized paths since both keep the same finite set of terms.
inline double z_full_tail_bound(const even_lattice& lattice, std::int64_t r, complex tau, const splitting& p,
                                const std::vector<complex>& x, const rational& order, double radius) {
    detail::check_full_scale(lattice, r);
    const double q_abs = std::exp(-2.0 * std::numbers::pi * tau.imag());
    double total = 0.0;
    for (const auto& alpha : detail::coset_representatives(lattice.rank(), r)) {
        const qseries z = z_psu_direct(r, alpha, order, lattice);
        const double z_abs = detail::abs_evaluate(z, q_abs);
        const double z_tail = z_psu_tail_bound(r, alpha, order, q_abs);
        const theta_result th = theta_siegel_narain(lattice, alpha, r, tau, p, x, radius);
        total += z_tail * (th.abs_sum + th.tail) + z_abs * th.tail;
    }
    return total;
}

/// Z_r(tau, x) summed directly over Mukai vectors v = (r, xi, a):
///   chi_virtual(v) q^(<v^2>/2r) q^(Q(xi_L)/2r) qbar^(-Q(xi_R)/2r) e(Q(xi, x)),
/// with <v^2>/2r in [-r, order) and xi in the majorant ball of radius R.
inline evaluation z_full_direct(const even_lattice& lattice, std::int64_t r, complex tau, const splitting& p,
                                const std::vector<complex>& x, const rational& order, double radius) {
    detail::check_full_scale(lattice, r);
    if (!(tau.imag() > 0.0)) throw input_error("tau must lie in the upper half plane");
    lattice.check_dim(x.size());
    Eigen::VectorXcd xv(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) xv(static_cast<Eigen::Index>(i)) = x[i];
    const detail::theta_weight weight{p, r, tau, p.q().cast<complex>() * xv};
    hilbert_euler_cache chi(static_cast<std::size_t>(std::max<std::int64_t>(2, r * ceil_int(order) + 2)));

    compensated_complex_sum acc;
    const std::vector<std::int64_t> zero(lattice.rank(), 0);
    detail::for_each_coset_point(zero, 1, p.majorant(), p.majorant_min_eigenvalue(), radius * radius, [&](const Eigen::VectorXd& c) {
        coord_vector xi(lattice.rank());
        for (std::size_t i = 0; i < xi.size(); ++i) xi[i] = static_cast<std::int64_t>(std::llround(c(static_cast<Eigen::Index>(i))));
        const std::int64_t xi2 = lattice.square(xi);
        const complex w = weight(c);
        const std::int64_t a_min = floor_int((rational(xi2) - 2 * r * order) / (2 * r)) + 1;
        const std::int64_t a_max = floor_int(make_rational(xi2 + 2 * r * r, 2 * r));
        for (std::int64_t a = a_min; a <= a_max; ++a) {
            const mukai_vector v{r, xi, a};
            const rational chi_v = chi_virtual(v, lattice, chi);
            if (chi_v == 0) continue;
            const double exponent = static_cast<double>(square(v, lattice)) / (2.0 * static_cast<double>(r));
            acc.add(to_double(chi_v) * q_power(tau, exponent) * w);
        }
    });
    return {acc.value(), z_full_tail_bound(lattice, r, tau, p, x, order, radius)};
}

/// Z_r(tau, x) = sum_{alpha in Lambda / r Lambda} Z_r^alpha(tau) Theta_{alpha,r}(tau, P, x).
inline evaluation z_full_factorized(const even_lattice& lattice, std::int64_t r, complex tau, const splitting& p,
                                    const std::vector<complex>& x, const rational& order, double radius) {
    detail::check_full_scale(lattice, r);
    if (!(tau.imag() > 0.0)) throw input_error("tau must lie in the upper half plane");
    compensated_complex_sum acc;
    for (const auto& alpha : detail::coset_representatives(lattice.rank(), r)) {
        const evaluation z = qs_evaluate(z_psu_direct(r, alpha, order, lattice), tau);
        const theta_result th = theta_siegel_narain(lattice, alpha, r, tau, p, x, radius);
        acc.add(z.value * th.value);
    }
    return {acc.value(), z_full_tail_bound(lattice, r, tau, p, x, order, radius)};
}

}  // namespace k3tk
