#pragma once

//
// Globally adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.
//
// The integrand may return several components; component 0 drives the
// refinement and the error estimate, the others are integrated on the same
// partition. Intervals are refined largest-error first; the final value is
// summed in left-to-right order with compensation, so results are
// bit-reproducible for identical inputs.
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "special.hpp"

namespace fock_hausdorff {

struct QuadResult
{
    double      value       = 0.0;
    double      error_bound = 0.0;
    std::size_t evaluations = 0;
};

struct QuadOptions
{
    double      abs_tol         = 1e-10;
    double      rel_tol         = 0.0;
    std::size_t max_evaluations = 1'000'000;
};

namespace detail {

// Kronrod abscissae (descending) and weights; Gauss weights for the
// odd-indexed abscissae and the centre.
inline constexpr std::array<double, 8> gk15_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> gk15_wk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel
{
    double                a, b;
    std::array<double, K> value;
    double                error;
};

template <std::size_t K, typename F>
Panel<K> gk15(F & f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    std::array<double, K> kron{}, gauss{};
    double                abs_sum = 0.0;

    const std::array<double, K> fc = f(c);
    for (std::size_t k = 0; k < K; ++k) {
        kron[k]  = gk15_wk[7] * fc[k];
        gauss[k] = gk15_wg[3] * fc[k];
    }
    abs_sum = gk15_wk[7] * std::abs(fc[0]);

    for (std::size_t i = 0; i < 7; ++i) {
        const double                dx = h * gk15_x[i];
        const std::array<double, K> fl = f(c - dx);
        const std::array<double, K> fr = f(c + dx);
        for (std::size_t k = 0; k < K; ++k) {
            kron[k] += gk15_wk[i] * (fl[k] + fr[k]);
            if (i % 2 == 1)
                gauss[k] += gk15_wg[i / 2] * (fl[k] + fr[k]);
        }
        abs_sum += gk15_wk[i] * (std::abs(fl[0]) + std::abs(fr[0]));
    }

    Panel<K> p{a, b, {}, 0.0};
    for (std::size_t k = 0; k < K; ++k)
        p.value[k] = h * kron[k];
    // |K15 - G7| bounds the G7 error, which dominates the K15 error.
    p.error = std::abs(h * (kron[0] - gauss[0]))
            + 4.0 * std::numeric_limits<double>::epsilon() * std::abs(h) * abs_sum;
    return p;
}

} // namespace detail

template <std::size_t K>
struct AdaptiveResult
{
    std::array<double, K> value{};
    double                error_bound = 0.0;
    std::size_t           evaluations = 0;
    std::size_t           panels      = 0;
};

//
// Integrate f over the partition given by `breakpoints` (sorted, >= 2 points).
// f : double -> std::array<double, K>.
//
// Throws QuadratureError when the evaluation budget runs out or the largest
// error panel can no longer be bisected.
//
template <std::size_t K, typename F>
AdaptiveResult<K> integrate_adaptive(F && f, std::span<const double> breakpoints,
                                     const QuadOptions & opts)
{
    using Panel = detail::Panel<K>;

    std::vector<Panel> heap;
    std::size_t        evals = 0;

    const auto by_error = [](const Panel & l, const Panel & r) {
        if (l.error != r.error)
            return l.error < r.error;
        return l.a > r.a;
    };

    auto total = [&heap] {
        std::array<special::CompensatedSum, K> v;
        special::CompensatedSum                e;
        std::vector<const Panel *>             order;
        order.reserve(heap.size());
        for (const auto & p : heap)
            order.push_back(&p);
        std::sort(order.begin(), order.end(),
                  [](const Panel * l, const Panel * r) { return l->a < r->a; });
        for (const Panel * p : order) {
            for (std::size_t k = 0; k < K; ++k)
                v[k].add(p->value[k]);
            e.add(p->error);
        }
        AdaptiveResult<K> r;
        for (std::size_t k = 0; k < K; ++k)
            r.value[k] = v[k].value();
        r.error_bound = e.value();
        return r;
    };

    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            continue;
        heap.push_back(detail::gk15<K>(f, breakpoints[i], breakpoints[i + 1]));
        evals += 15;
    }
    if (heap.empty())
        return {};
    std::make_heap(heap.begin(), heap.end(), by_error);

    double run_value = 0.0, run_error = 0.0;
    for (const auto & p : heap) {
        run_value += p.value[0];
        run_error += p.error;
    }

    const auto target = [&](double value) {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    };

    while (true) {
        if (run_error <= target(run_value)) {
            // Re-sum exactly before declaring convergence.
            AdaptiveResult<K> r = total();
            if (r.error_bound <= target(r.value[0])) {
                r.evaluations = evals;
                r.panels      = heap.size();
                return r;
            }
            run_value = r.value[0];
            run_error = r.error_bound;
        }

        if (evals + 30 > opts.max_evaluations) {
            const AdaptiveResult<K> r = total();
            throw QuadratureError("quadrature budget of " + std::to_string(opts.max_evaluations)
                                      + " evaluations exhausted",
                                  r.value[0], r.error_bound, evals);
        }

        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Panel worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            heap.push_back(worst);
            const AdaptiveResult<K> r = total();
            throw QuadratureError("quadrature hit the roundoff floor before reaching tolerance",
                                  r.value[0], r.error_bound, evals);
        }

        Panel left  = detail::gk15<K>(f, worst.a, mid);
        Panel right = detail::gk15<K>(f, mid, worst.b);
        evals += 30;

        run_value += left.value[0] + right.value[0] - worst.value[0];
        run_error += left.error + right.error - worst.error;

        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
    }
}

// Scalar convenience wrapper on [a, b].
template <typename F>
QuadResult integrate(F && f, double a, double b, const QuadOptions & opts = {})
{
    const std::array<double, 2> bp{a, b};
    auto wrapped = [&f](double x) { return std::array<double, 1>{f(x)}; };
    const auto r = integrate_adaptive<1>(wrapped, bp, opts);
    return {r.value[0], r.error_bound, r.evaluations};
}

} // namespace fock_hausdorff
