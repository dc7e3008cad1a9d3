#pragma once

//
// Invariant suite for one measure: each check is evaluated on seeded random
// data and reported with its worst observed deviation.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fock.hpp"
#include "format.hpp"
#include "hausdorff.hpp"
#include "random.hpp"

namespace fock_hausdorff {

struct CheckResult
{
    std::string name;
    bool        passed = false;
    double      worst  = 0.0;  // largest violation measure seen (check-specific units)
    std::string detail;
};

struct VerifyOptions
{
    double        alpha  = 1.0;
    std::uint64_t seed   = 42;
    std::size_t   trials = 10;
    double        tol    = 1e-10;  // moment quadrature tolerance
};

inline std::vector<CheckResult> verify_invariants(const MeasureSpec & m, const VerifyOptions & opts = {})
{
    MomentOptions mopts;
    mopts.tol = opts.tol;

    constexpr std::size_t eigen_n = 64;
    const MomentSequence  mu      = moments(m, eigen_n, mopts);
    const double          mu0     = operator_norm(mu);

    std::vector<CheckResult> out;

    {
        CheckResult c;
        c.name = "multiplier equals integral form";
        for (std::size_t i = 0; i < opts.trials; ++i) {
            TestStream             rng = trial_stream(opts.seed, i);
            const TaylorPolynomial f   = rng.polynomial_up_to(8);
            const TaylorPolynomial hf  = apply(mu, f);
            for (int k = 0; k < 20; ++k) {
                const Complex z     = rng.disc(3.0);
                const Complex lhs   = evaluate(hf, z);
                const Complex rhs   = apply_integral_oracle(m, f, z, 1e-11);
                const double  scale = 1e-7 * (1.0 + std::abs(lhs));
                c.worst             = std::max(c.worst, std::abs(lhs - rhs) / scale);
            }
        }
        c.passed = c.worst <= 1.0;
        c.detail = "max |diff| / (1e-7 (1 + |H f(z)|)) = " + shortest(c.worst);
        out.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "eigenrelation H z^n = mu_n z^n";
        std::size_t bad = 0;
        for (std::size_t n = 0; n <= eigen_n; ++n) {
            const TaylorPolynomial g = apply(mu, TaylorPolynomial::monomial(n));
            if (!(g == TaylorPolynomial::monomial(n, mu[n])))
                ++bad;
        }
        c.worst  = static_cast<double>(bad);
        c.passed = bad == 0;
        c.detail = std::to_string(bad) + " of " + std::to_string(eigen_n + 1) + " monomials differ";
        out.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "moments non-increasing";
        for (std::size_t n = 0; n < mu.N(); ++n) {
            const double slack = mu.error_bounds[n] + mu.error_bounds[n + 1];
            c.worst            = std::max(c.worst, mu[n + 1] - mu[n] - slack);
        }
        c.passed = c.worst <= 0.0;
        c.detail = "max (mu_{n+1} - mu_n - bounds) = " + shortest(c.worst);
        out.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "norm contraction p in {1, 2, 4, inf}";
        for (double p : {1.0, 2.0, 4.0, FockParams::infinity}) {
            const FockParams params{opts.alpha, p};
            for (std::size_t i = 0; i < opts.trials; ++i) {
                TestStream             rng = trial_stream(opts.seed, i);
                const TaylorPolynomial f   = rng.polynomial_up_to(10);
                const double           nf  = norm_fp(f, params, {.rel_tol = 1e-7, .cross_check_tol = 0.0});
                const double nh = norm_fp(apply(mu, f), params, {.rel_tol = 1e-7, .cross_check_tol = 0.0});
                if (nf > 0.0)
                    c.worst = std::max(c.worst, nh / (mu0 * nf) - 1.0);
            }
        }
        c.passed = c.worst <= 1e-6;
        c.detail = "max ||H f|| / (mu_0 ||f||) - 1 = " + shortest(c.worst);
        out.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "norm attained at f = 1";
        for (double p : {1.0, 2.0, FockParams::infinity}) {
            const FockParams       params{opts.alpha, p};
            const TaylorPolynomial one = TaylorPolynomial::monomial(0);
            const double ratio = norm_fp(apply(mu, one), params) / norm_fp(one, params);
            c.worst            = std::max(c.worst, std::abs(ratio / mu0 - 1.0));
        }
        c.passed = c.worst <= 1e-6;
        c.detail = "max |ratio / mu_0 - 1| = " + shortest(c.worst);
        out.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "F2 quadrature matches coefficient norm";
        for (std::size_t i = 0; i < opts.trials; ++i) {
            TestStream             rng = trial_stream(opts.seed, i);
            const TaylorPolynomial f   = rng.polynomial_up_to(10);
            if (f.is_zero())
                continue;
            const double q = norm_fp(f, {opts.alpha, 2.0}, {.rel_tol = 1e-9, .cross_check_tol = 0.0});
            const double e = norm_f2(f, opts.alpha);
            c.worst        = std::max(c.worst, std::abs(q - e) / e);
        }
        c.passed = c.worst <= 1e-7;
        c.detail = "max relative difference = " + shortest(c.worst);
        out.push_back(std::move(c));
    }

    {
        CheckResult c;
        c.name = "spectrum equals moments";
        const auto  s = point_spectrum(mu, mu.N());
        c.passed      = std::equal(s.begin(), s.end(), mu.values.begin());
        c.worst       = c.passed ? 0.0 : 1.0;
        c.detail      = c.passed ? "identical" : "differs";
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace fock_hausdorff
