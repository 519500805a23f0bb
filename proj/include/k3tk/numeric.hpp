#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace k3tk {

using complex = std::complex<double>;

/// Neumaier-compensated accumulator for real sums.
class compensated_sum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class compensated_complex_sum {
public:
    void add(complex z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    complex value() const noexcept { return {re_.value(), im_.value()}; }

private:
    compensated_sum re_;
    compensated_sum im_;
};

/// e(z) = exp(2 pi i z)
inline complex e2pi(complex z) { return std::exp(complex(0.0, 2.0 * std::numbers::pi) * z); }

/// q^s = exp(2 pi i tau s) for real s
inline complex q_power(complex tau, double s) { return e2pi(tau * s); }

/// A numeric value together with a bound (or estimate) on the neglected tail.
struct evaluation {
    complex value;
    double tail = 0.0;
};

}  // namespace k3tk
