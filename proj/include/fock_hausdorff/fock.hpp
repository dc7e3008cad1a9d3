#pragma once

//
// Fock-space norms of truncated entire functions.
//
//   ‖f‖_{p,α}^p = (αp/2π) ∫_ℂ |f(z) e^{-(α/2)|z|²}|^p dA(z),   1 <= p < ∞
//   ‖f‖_{∞,α}   = sup_z |f(z)| e^{-(α/2)|z|²}
//
// For p = 2 the norm has the coefficient form ‖f‖² = Σ |a_n|² n!/α^n.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

#include "error.hpp"
#include "quad.hpp"
#include "special.hpp"
#include "taylor.hpp"

namespace fock_hausdorff {

// The space F^p_α. p = +inf selects F^∞_α.
struct FockParams
{
    double alpha = 1.0;
    double p     = 2.0;

    static constexpr double infinity = std::numeric_limits<double>::infinity();

    static FockParams make(double alpha, double p)
    {
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw DomainError("alpha must be positive and finite");
        if (!(p >= 1.0))
            throw DomainError("p must lie in [1, inf]");
        return {alpha, p};
    }

    bool is_sup() const noexcept { return std::isinf(p); }
};

// ‖f‖_{F²_α} from the coefficients, summed as log-sum-exp.
inline double norm_f2(const TaylorPolynomial & f, double alpha)
{
    if (!(alpha > 0.0))
        throw DomainError("alpha must be positive");
    const auto          a = f.coefficients();
    std::vector<double> logs;
    logs.reserve(a.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < a.size(); ++n) {
        const double m = std::abs(a[n]);
        if (m == 0.0)
            continue;
        const double l = 2.0 * std::log(m) + special::log_factorial(n)
                       - static_cast<double>(n) * std::log(alpha);
        logs.push_back(l);
        top = std::max(top, l);
    }
    if (logs.empty())
        return 0.0;
    special::CompensatedSum s;
    for (double l : logs)
        s.add(std::exp(l - top));
    return std::exp(0.5 * (top + std::log(s.value())));
}

// log ‖z^n‖_{p,α}; p = inf gives log max_r r^n e^{-αr²/2} = (n/2) log(n/(αe)).
inline double log_monomial_norm(std::size_t n, const FockParams & params)
{
    const double nn = static_cast<double>(n);
    if (n == 0)
        return 0.0;
    if (params.is_sup())
        return 0.5 * nn * (std::log(nn / params.alpha) - 1.0);
    const double p = params.p;
    return special::log_gamma(0.5 * nn * p + 1.0) / p + 0.5 * nn * std::log(2.0 / (params.alpha * p));
}

// ‖z^n‖_{p,α} = Γ(np/2 + 1)^{1/p} (2/(αp))^{n/2}.
inline double monomial_norm(std::size_t n, const FockParams & params)
{
    return std::exp(log_monomial_norm(n, params));
}

struct FockNorm
{
    double      value       = 0.0;
    double      error_bound = 0.0;  // absolute, on the norm (0 for p = inf, see sup_norm)
    std::size_t evaluations = 0;
};

namespace detail {

template <typename Fn>
double golden_max(Fn && fn, double lo, double hi, int iterations, double & best_x)
{
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double       x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double       f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iterations; ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fn(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fn(x1);
        }
    }
    best_x = f1 > f2 ? x1 : x2;
    return std::max(f1, f2);
}

// Indices of the (cyclic or linear) local maxima of v, largest first.
inline std::vector<std::size_t> top_local_maxima(const std::vector<double> & v, bool cyclic,
                                                 std::size_t count)
{
    const std::size_t        n = v.size();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
        const bool has_l = cyclic || i > 0;
        const bool has_r = cyclic || i + 1 < n;
        const double l   = has_l ? v[(i + n - 1) % n] : -1.0;
        const double r   = has_r ? v[(i + 1) % n] : -1.0;
        if (v[i] >= l && v[i] >= r)
            idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&v](std::size_t a, std::size_t b) { return v[a] > v[b]; });
    if (idx.size() > count)
        idx.resize(count);
    return idx;
}

// max_θ |f(r e^{iθ})|²: |f|² is a trigonometric polynomial of degree d on the
// circle, so 8d + 32 samples bracket every peak; the leading local maxima are
// then refined by golden section.
inline double max_modulus_sq(const TaylorPolynomial & f, double r)
{
    const std::size_t   n     = 8 * f.degree() + 32;
    const auto &        roots = unit_roots(n);
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k)
        v[k] = std::norm(f(r * roots[k]));

    double best = *std::max_element(v.begin(), v.end());
    if (f.degree() == 0 || r == 0.0)
        return best;

    const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k : top_local_maxima(v, true, 3)) {
        if (v[k] < 0.5 * best)
            continue;
        const double c = step * static_cast<double>(k);
        double       x;
        const double m = golden_max([&](double th) { return std::norm(f(std::polar(r, th))); },
                                    c - step, c + step, 40, x);
        best = std::max(best, m);
    }
    return best;
}

inline double sup_norm(const TaylorPolynomial & f, double alpha)
{
    if (f.is_zero())
        return 0.0;
    const auto        a = f.coefficients();
    const std::size_t d = f.degree();
    if (d == 0)
        return std::abs(a[0]);

    // sup >= |a_n| sup_r r^n e^{-αr²/2} (Cauchy estimate on each circle).
    double lower = 0.0;
    for (std::size_t n = 0; n <= d; ++n)
        if (a[n] != Complex{})
            lower = std::max(lower, std::abs(a[n]) * monomial_norm(n, {alpha, FockParams::infinity}));

    // Σ|a_n| r^n e^{-αr²/2} decreases beyond sqrt(d/α); step out until it
    // drops below the lower bound, which certifies the sup lies inside.
    auto envelope = [&](double r) {
        double s = 0.0, rn = 1.0;
        for (std::size_t n = 0; n <= d; ++n, rn *= r)
            s += std::abs(a[n]) * rn;
        return s * std::exp(-0.5 * alpha * r * r);
    };
    double R = std::max(std::sqrt(static_cast<double>(d) / alpha), 1e-3);
    while (envelope(R) >= lower)
        R *= 1.05;

    auto weighted = [&](double r) { return std::sqrt(max_modulus_sq(f, r)) * std::exp(-0.5 * alpha * r * r); };

    constexpr std::size_t grid = 64;
    std::vector<double>   g(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j)
        g[j] = weighted(R * static_cast<double>(j) / grid);

    double       best = *std::max_element(g.begin(), g.end());
    const double h    = R / grid;
    for (std::size_t j : top_local_maxima(g, false, 3)) {
        if (g[j] < 0.5 * best)
            continue;
        const double lo = std::max(0.0, h * (static_cast<double>(j) - 1.0));
        const double hi = std::min(R, h * (static_cast<double>(j) + 1.0));
        double       x;
        best = std::max(best, golden_max(weighted, lo, hi, 44, x));
    }
    return best;
}

} // namespace detail

struct NormOptions
{
    double      rel_tol         = 1e-8;
    std::size_t max_evaluations = 1'000'000;
    // p = 2 only: compare against the coefficient formula and throw on mismatch.
    double cross_check_tol = 1e-7;
};

//
// ‖f‖_{p,α}. Finite p: polar quadrature of |f|^p to relative tolerance
// opts.rel_tol, then the p-th root. p = inf: sup of the max-modulus over
// circles; the result is a refined lower estimate of the supremum.
//
inline FockNorm norm_fp_result(const TaylorPolynomial & f, const FockParams & params,
                               const NormOptions & opts = {})
{
    FockParams::make(params.alpha, params.p);
    if (f.is_zero())
        return {};
    if (params.is_sup())
        return {detail::sup_norm(f, params.alpha), 0.0, 0};

    const double      p = params.p;
    const auto        a = f.coefficients();
    const std::size_t d = f.degree();

    // ‖f‖_p^p >= |a_n|^p ‖z^n‖_p^p for every n, since the circle means of |f|
    // dominate |a_n| r^n. This lower bound fixes the absolute tolerance.
    double log_lower = -std::numeric_limits<double>::infinity();
    double abs_sum   = 0.0;
    for (std::size_t n = 0; n <= d; ++n) {
        abs_sum += std::abs(a[n]);
        if (a[n] != Complex{})
            log_lower = std::max(log_lower, p * (std::log(std::abs(a[n])) + log_monomial_norm(n, params)));
    }
    const double lower = std::exp(log_lower);

    AreaOptions ao;
    ao.abs_tol            = opts.rel_tol * lower;
    ao.rel_tol            = opts.rel_tol;
    ao.degree             = d * static_cast<std::size_t>(std::ceil(0.5 * p));
    ao.growth.coefficient = std::pow(abs_sum, p);
    ao.growth.exponent    = static_cast<double>(d) * p;
    ao.max_evaluations    = opts.max_evaluations;

    const bool square = p == 2.0;
    auto       h      = [&f, p, square](double r, double, Complex unit) {
        const Complex w  = f(r * unit);
        const double  m2 = w.real() * w.real() + w.imag() * w.imag();
        if (square)
            return m2;
        if (p == 1.0)
            return std::sqrt(m2);
        return std::pow(m2, 0.5 * p);
    };
    const AreaResult ar = fock_area_integral(h, params.alpha, p, ao);

    FockNorm out;
    out.value       = std::pow(ar.value, 1.0 / p);
    out.error_bound = out.value * (ar.error_bound / ar.value) / p;
    out.evaluations = ar.evaluations;

    if (square && opts.cross_check_tol > 0.0) {
        const double c = norm_f2(f, params.alpha);
        if (std::abs(out.value - c) > opts.cross_check_tol * c)
            throw VerificationError("F2 quadrature norm " + std::to_string(out.value)
                                    + " disagrees with coefficient norm " + std::to_string(c));
    }
    return out;
}

inline double norm_fp(const TaylorPolynomial & f, const FockParams & params, const NormOptions & opts = {})
{
    return norm_fp_result(f, params, opts).value;
}

} // namespace fock_hausdorff
