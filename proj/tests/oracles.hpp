#pragma once

// Reference computations for the test suite. Deliberately naive: fixed
// composite rules and dense grids, sharing no code with the library's
// adaptive paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>

#include <fock_hausdorff/taylor.hpp>

namespace oracle {

using Complex = std::complex<double>;

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)> & f, double a, double b, std::size_t n)
{
    n += n % 2;
    const double h = (b - a) / static_cast<double>(n);
    double       s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i)
        s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// ∫_1^∞ t^{-(n+1)} e^{-λ(t-1)} dt as ∫_0^1 u^{n-1} e^{-λ(1/u - 1)} du.
inline double expshift_moment(double lambda, std::size_t n, std::size_t panels = 200000)
{
    const double e = static_cast<double>(n) - 1.0;
    return simpson(
        [=](double u) { return u <= 0.0 ? 0.0 : std::pow(u, e) * std::exp(-lambda * (1.0 / u - 1.0)); }, 0.0, 1.0,
        panels);
}

// ∫_1^∞ g(t) e^{-λ(t-1)} dt on u = 1/t.
inline double expshift_integral(double lambda, const std::function<double(double)> & g,
                                std::size_t panels = 200000)
{
    return simpson(
        [&](double u) {
            if (u <= 0.0)
                return 0.0;
            const double t = 1.0 / u;
            return g(t) * std::exp(-lambda * (t - 1.0)) / (u * u);
        },
        0.0, 1.0, panels);
}

// sup |f(z)| e^{-α|z|²/2} over a polar grid on the disc of radius R.
inline double sup_norm_grid(const fock_hausdorff::TaylorPolynomial & f, double alpha, double R,
                            std::size_t nr = 2000, std::size_t nt = 2000)
{
    double best = 0.0;
    for (std::size_t i = 0; i <= nr; ++i) {
        const double r = R * static_cast<double>(i) / static_cast<double>(nr);
        const double w = std::exp(-0.5 * alpha * r * r);
        for (std::size_t j = 0; j < nt; ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nt);
            best            = std::max(best, std::abs(f(std::polar(r, th))) * w);
        }
    }
    return best;
}

// (αp/2π) ∫ |f|^p e^{-αp|z|²/2} dA by Simpson in r on [0, R] and the
// trapezoid rule in θ, then the p-th root.
inline double norm_p_grid(const fock_hausdorff::TaylorPolynomial & f, double alpha, double p, double R,
                          std::size_t nr = 4000, std::size_t nt = 512)
{
    const double c      = alpha * p;
    auto         radial = [&](double r) {
        double s = 0.0;
        for (std::size_t j = 0; j < nt; ++j) {
            const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nt);
            s += std::pow(std::abs(f(std::polar(r, th))), p);
        }
        return s / static_cast<double>(nt) * std::exp(-0.5 * c * r * r) * c * r;
    };
    return std::pow(simpson(radial, 0.0, R, nr), 1.0 / p);
}

// Σ_{n=0}^{N} (w/(n+s))^p summed from the small end.
inline double power_schatten_sum(double s, double p, std::size_t N, double w = 1.0)
{
    double acc = 0.0;
    for (std::size_t k = N + 1; k-- > 0;)
        acc += std::pow(w / (static_cast<double>(k) + s), p);
    return acc;
}

} // namespace oracle
