#pragma once

//
// Log-domain factorial / gamma helpers, a certified upper bound for the
// upper incomplete gamma function, and compensated summation.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace fock_hausdorff::special {

// log Γ(x) for x > 0.
inline double log_gamma(double x)
{
    return std::lgamma(x);
}

// log n!; exact table below 32, lgamma above.
inline double log_factorial(std::size_t n)
{
    static const auto table = [] {
        struct T { double v[32]; } t{};
        double acc = 0.0;
        t.v[0] = 0.0;
        for (std::size_t k = 1; k < 32; ++k) {
            acc += std::log(static_cast<double>(k));
            t.v[k] = acc;
        }
        return t;
    }();
    if (n < 32)
        return table.v[n];
    return std::lgamma(static_cast<double>(n) + 1.0);
}

//
// Upper bound for Γ(a, x) = ∫_x^∞ s^{a-1} e^{-s} ds, valid for x > max(a-1, 0).
//
// log s is concave, so s^{a-1} <= x^{a-1} exp((a-1)(s-x)/x) for a >= 1, and
// s^{a-1} <= x^{a-1} for a < 1. Integrating the envelope gives
//   Γ(a, x) <= x^{a-1} e^{-x} / (1 - max(a-1, 0)/x).
// Returns +inf when x is outside the validity range.
//
inline double upper_incomplete_gamma_bound(double a, double x)
{
    const double c = std::max(a - 1.0, 0.0);
    if (!(x > c))
        return std::numeric_limits<double>::infinity();
    const double log_bound = (a - 1.0) * std::log(x) - x - std::log1p(-c / x);
    return std::exp(log_bound);
}

// Neumaier compensated sum; order of `add` calls fixes the result bit-for-bit.
class CompensatedSum
{
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_  = 0.0;
    double comp_ = 0.0;
};

} // namespace fock_hausdorff::special
