#pragma once

//
// Quadrature against a measure on [1, ∞) and Gaussian-weighted area
// integrals over the plane.
//

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <type_traits>
#include <vector>

#include "adaptive.hpp"
#include "error.hpp"
#include "measure.hpp"
#include "special.hpp"

namespace fock_hausdorff {

using Complex = std::complex<double>;

//
// ∫_{[1,∞)} g dμ. Atoms are summed exactly; the density part is integrated
// on u = 1/t as ∫_0^1 g(1/u) φ(1/u) u^{-2} du.
//
template <typename G>
QuadResult integrate_against_measure(const MeasureSpec & m, G && g, double tol,
                                     std::size_t max_evaluations = 1'000'000)
{
    special::CompensatedSum sum;
    for (const auto & a : m.atoms())
        sum.add(a.mass * g(a.t));

    QuadResult r;
    if (const auto & d = m.density()) {
        auto integrand = [&d, &g](double u) {
            const double t = 1.0 / u;
            return std::array<double, 1>{g(t) * d->value(t) / (u * u)};
        };
        const std::vector<double> bp = d->u_breakpoints();
        QuadOptions               qo;
        qo.abs_tol         = tol;
        qo.max_evaluations = max_evaluations;
        const auto ar      = integrate_adaptive<1>(integrand, bp, qo);
        sum.add(ar.value[0]);
        r.error_bound = ar.error_bound;
        r.evaluations = ar.evaluations;
    }
    r.value = sum.value();
    return r;
}

//
// Fock-area integrals
//
//   I = (αp/2π) ∫_ℂ h(z) e^{-(αp/2)|z|²} dA(z)
//
// in polar form with s = (αp/2) r², which turns the weight into e^{-s}:
//
//   I = ∫_0^∞ e^{-s} [ (1/2π) ∫_0^{2π} h(r(s), θ) dθ ] ds.
//
// The angular mean uses the periodic trapezoidal rule (exact for
// trigonometric polynomials below the node count), with nested halving as
// the error estimate and doubling until the local estimate is small. The
// radial integral runs on [0, S(R)] with adaptive Gauss-Kronrod; the part
// beyond R is covered by the caller's growth bound |h| <= C max(1, r)^k,
// whose tail is C (2/(αp))^{k/2} Γ(k/2 + 1, S).
//

struct GrowthBound
{
    double coefficient = 0.0;
    double exponent    = 0.0;
};

struct AreaOptions
{
    double                abs_tol = 1e-10;
    double                rel_tol = 0.0;
    std::optional<double> radius;
    GrowthBound           growth;
    // Trigonometric degree of h in θ; the first angular rule has 4·degree+16 nodes.
    std::size_t degree            = 0;
    std::size_t min_angular_nodes = 0;
    std::size_t max_angular_nodes = 1 << 14;
    std::size_t max_evaluations   = 1'000'000;
};

struct AreaResult
{
    double      value       = 0.0;
    double      error_bound = 0.0;
    std::size_t evaluations = 0;
    double      radius      = 0.0;
    double      tail_bound  = 0.0;
    double      radial_error  = 0.0;
    double      angular_error = 0.0;

    operator QuadResult() const { return {value, error_bound, evaluations}; }
};

namespace detail {

inline double trapezoid_angle(std::size_t j, std::size_t n)
{
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

// e^{2πij/n}, cached per node count.
inline const std::vector<Complex> & unit_roots(std::size_t n)
{
    thread_local std::map<std::size_t, std::vector<Complex>> cache;
    auto & v = cache[n];
    if (v.empty()) {
        v.resize(n);
        for (std::size_t j = 0; j < n; ++j)
            v[j] = std::polar(1.0, trapezoid_angle(j, n));
    }
    return v;
}

inline double area_tail_bound(const GrowthBound & g, double weight_scale, double S)
{
    if (g.coefficient == 0.0)
        return 0.0;
    const double a = 0.5 * g.exponent + 1.0;
    return g.coefficient * std::pow(2.0 / weight_scale, 0.5 * g.exponent)
         * special::upper_incomplete_gamma_bound(a, S);
}

// Smallest S on a geometric ladder (starting where the growth bound is valid)
// whose tail bound is below `target`.
inline double minimal_tail_S(const GrowthBound & g, double weight_scale, double target)
{
    double S = std::max(0.5 * weight_scale, 0.5 * g.exponent + 1.0);
    if (g.coefficient == 0.0)
        return 0.5 * weight_scale;
    for (int it = 0; it < 4000 && area_tail_bound(g, weight_scale, S) > target; ++it)
        S += std::max(0.5, 0.05 * S);
    return S;
}

} // namespace detail

template <typename H>
AreaResult fock_area_integral(H && h, double alpha, double p, const AreaOptions & opts = {})
{
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("alpha must be positive");
    if (!(p >= 1.0) || !std::isfinite(p))
        throw DomainError("area integral needs a finite exponent p >= 1");

    const double scale    = alpha * p;  // weight e^{-(scale/2) r²}
    const double tail_tol = 0.1 * opts.abs_tol;

    double S;
    if (opts.radius) {
        const double R = *opts.radius;
        S              = 0.5 * scale * R * R;
        const bool bad = R < 1.0 || detail::area_tail_bound(opts.growth, scale, S) > tail_tol;
        if (bad && opts.growth.coefficient != 0.0) {
            const double Smin = detail::minimal_tail_S(opts.growth, scale, tail_tol);
            const double Rmin = std::sqrt(2.0 * Smin / scale);
            throw TruncationRadiusError("radius " + std::to_string(R)
                                            + " too small for tolerance; minimal feasible radius is "
                                            + std::to_string(Rmin),
                                        Rmin);
        }
    } else {
        S = detail::minimal_tail_S(opts.growth, scale, tail_tol);
    }

    std::size_t n0 = std::max<std::size_t>(4 * opts.degree + 16, opts.min_angular_nodes);
    n0 += n0 % 2;
    const std::size_t n_max = std::max(opts.max_angular_nodes, n0);

    std::size_t h_evals = 0;

    auto call = [&h](double r, std::size_t j, std::size_t n) {
        if constexpr (std::is_invocable_v<H &, double, double, Complex>)
            return h(r, detail::trapezoid_angle(j, n), detail::unit_roots(n)[j]);
        else
            return h(r, detail::trapezoid_angle(j, n));
    };

    //
    // Angular mean at radius r with a nested-trapezoid error estimate. The
    // local target lets e^{-s} E(s) integrate to at most a quarter of the
    // tolerance: E(s) <= max(rel |mean|, abs e^s / S) / 4.
    //
    auto angular = [&](double r, double s) {
        const double local_abs = opts.abs_tol * std::exp(std::min(s, 700.0)) / S;
        std::size_t  n         = n0;
        special::CompensatedSum even, odd;
        for (std::size_t j = 0; j < n; j += 2)
            even.add(call(r, j, n));
        for (std::size_t j = 1; j < n; j += 2)
            odd.add(call(r, j, n));
        h_evals += n;

        double coarse = even.value() / static_cast<double>(n / 2);
        double fine   = (even.value() + odd.value()) / static_cast<double>(n);
        double err    = std::abs(fine - coarse);
        double total  = even.value() + odd.value();

        while (err > 0.25 * std::max(opts.rel_tol * std::abs(fine), local_abs) && 2 * n <= n_max) {
            special::CompensatedSum added;
            for (std::size_t j = 1; j < 2 * n; j += 2)
                added.add(call(r, j, 2 * n));
            h_evals += n;
            n *= 2;
            total += added.value();
            coarse = fine;
            fine   = total / static_cast<double>(n);
            err    = std::abs(fine - coarse);
        }
        return std::array<double, 2>{fine, err};
    };

    auto radial = [&](double s) {
        const double r = std::sqrt(2.0 * s / scale);
        const auto   a = angular(r, s);
        const double w = std::exp(-s);
        return std::array<double, 2>{w * a[0], w * a[1]};
    };

    QuadOptions qo;
    qo.abs_tol         = 0.6 * opts.abs_tol;
    qo.rel_tol         = 0.6 * opts.rel_tol;
    qo.max_evaluations = opts.max_evaluations;

    // A breakpoint at the peak of s^{k/2} e^{-s} keeps the first panels balanced.
    std::vector<double> bp{0.0};
    const double        peak = 0.5 * opts.growth.exponent;
    if (peak > 0.0 && peak < S)
        bp.push_back(peak);
    bp.push_back(S);

    AdaptiveResult<2> ar;
    try {
        ar = integrate_adaptive<2>(radial, bp, qo);
    } catch (const QuadratureError & e) {
        throw QuadratureError(std::string("area integral: ") + e.what(), e.estimate(),
                              e.error_bound(), h_evals);
    }

    AreaResult res;
    res.radius        = std::sqrt(2.0 * S / scale);
    res.tail_bound    = detail::area_tail_bound(opts.growth, scale, S);
    res.radial_error  = ar.error_bound;
    res.angular_error = std::abs(ar.value[1]);
    res.value         = ar.value[0];
    res.error_bound   = res.radial_error + res.angular_error + res.tail_bound;
    res.evaluations   = h_evals;
    return res;
}

} // namespace fock_hausdorff
