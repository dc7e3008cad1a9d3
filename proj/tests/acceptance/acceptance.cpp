// Acceptance run: one PASS/FAIL line per criterion, with wall time.
//
// usage: acceptance [--expect-fail K]...
//
// Criteria named with --expect-fail still print their FAIL line but do not
// count toward the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <fock_hausdorff/fock_hausdorff.hpp>

using namespace fock_hausdorff;

namespace {

struct Outcome
{
    bool        pass = true;
    std::string detail;
};

struct Named
{
    const char * name;
    MeasureSpec  m;
};

std::vector<Named> theorem_measures()
{
    return {
        {"Atomic{(2,1)}", MeasureSpec::atomic({{2.0, 1.0}})},
        {"Atomic{(1,3)}", MeasureSpec::atomic({{1.0, 3.0}})},
        {"Power(2)", MeasureSpec::density({PowerDensity{2.0}})},
        {"ExpShift(1)", MeasureSpec::density({ExpShiftDensity{1.0}})},
    };
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

Outcome norm_equality()
{
    Outcome   o;
    double    worst = 0.0;
    std::size_t runs = 0;
    for (const auto & [name, m] : theorem_measures()) {
        const double mu0 = moment(m, 0).value;
        for (double p : {1.0, 2.0, FockParams::infinity}) {
            for (double alpha : {0.5, 1.0, 2.0}) {
                const auto b = empirical_norm_bounds(m, {alpha, p}, 200, 42);
                ++runs;
                const double dev = std::abs(b.lower / mu0 - 1.0);
                worst            = std::max(worst, dev);
                if (dev > 1e-6) {
                    o.pass = false;
                    o.detail += std::string(" ") + name + " p=" + shortest(p) + " alpha=" + shortest(alpha)
                              + " lower/mu0-1=" + sci(b.lower / mu0 - 1.0);
                }
            }
        }
    }
    o.detail = std::to_string(runs) + " runs x 221 tests, max |lower/mu_0 - 1| = " + sci(worst) + o.detail;
    return o;
}

Outcome multiplier_vs_integral()
{
    double worst = 0.0;
    for (const auto & [name, m] : theorem_measures()) {
        const auto mu = moments(m, 8);
        for (std::uint64_t i = 0; i < 10; ++i) {
            TestStream rng = trial_stream(42, i);
            const auto f   = rng.polynomial(8);
            const auto hf  = apply(mu, f);
            for (int k = 0; k < 20; ++k) {
                const Complex z = rng.disc(3.0);
                worst = std::max(worst, std::abs(evaluate(hf, z) - apply_integral_oracle(m, f, z, 1e-12)));
            }
        }
    }
    return {worst <= 1e-7, "800 points, max |multiplier - integral| = " + sci(worst)};
}

Outcome f2_formula()
{
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0}) {
        for (std::uint64_t i = 0; i < 50; ++i) {
            TestStream rng = trial_stream(42, i);
            const auto f   = rng.polynomial_up_to(10);
            const double q = norm_fp(f, {alpha, 2.0}, {.rel_tol = 1e-9, .cross_check_tol = 0.0});
            const double c = norm_f2(f, alpha);
            worst          = std::max(worst, std::abs(q - c) / c);
        }
    }
    return {worst <= 1e-7, "150 cases, max rel diff = " + sci(worst)};
}

Outcome monomial_norms()
{
    double worst = 0.0;
    for (double p : {1.0, 2.0, 3.0, 4.0}) {
        for (std::size_t n = 0; n <= 8; ++n) {
            const double q = norm_fp(TaylorPolynomial::monomial(n), {1.0, p}, {.rel_tol = 1e-8, .cross_check_tol = 0.0});
            worst          = std::max(worst, std::abs(q / monomial_norm(n, {1.0, p}) - 1.0));
        }
    }
    return {worst <= 1e-6, "36 cases, max rel diff = " + sci(worst)};
}

Outcome compactness()
{
    Outcome o;
    auto    expect = [&o](const char * name, const MeasureSpec & m, Compactness want) {
        const auto v = is_compact(m);
        if (v.verdict != want) {
            o.pass = false;
            o.detail += std::string(" wrong verdict for ") + name;
        }
    };
    const auto dirac = MeasureSpec::atomic({{2.0, 1.0}});
    expect("Atomic{(2,1)}", dirac, Compactness::Yes);
    expect("Power(2)", MeasureSpec::density({PowerDensity{2.0}}), Compactness::Yes);
    expect("Atomic{(1,3)}", MeasureSpec::atomic({{1.0, 3.0}}), Compactness::No);
    expect("atom(1,1e-9)+Power(2)", MeasureSpec::mixture({{1.0, 1e-9}}, {PowerDensity{2.0}}), Compactness::No);

    const auto  mu  = moments(dirac, 51);
    std::size_t bad = 0;
    for (int k = 0; k <= 50; ++k)
        if (truncation_error(mu, static_cast<std::size_t>(k)) != std::ldexp(1.0, -(k + 2)))
            ++bad;
    if (bad) {
        o.pass = false;
        o.detail += " " + std::to_string(bad) + " truncation errors differ from 2^-(k+2)";
    }
    o.detail = "4 verdicts, 51 truncation errors" + (o.detail.empty() ? std::string(", all exact") : o.detail);
    return o;
}

Outcome schatten_classes()
{
    Outcome    o;
    auto       fail  = [&o](const std::string & s) { o.pass = false; o.detail += " " + s; };
    const auto dirac = MeasureSpec::atomic({{2.0, 1.0}});
    for (double p : {0.5, 1.0, 2.0})
        if (schatten(dirac, p, 200).verdict != SchattenVerdict::InClass)
            fail("Atomic{(2,1)} not InClass at p=" + shortest(p));
    const auto   s1  = schatten(dirac, 1.0, 200);
    const double dev = std::abs(s1.partial_sum() + s1.tail_bound - 1.0);
    if (dev > 1e-12)
        fail("S_1 sum off by " + sci(dev));

    const auto power = MeasureSpec::density({PowerDensity{2.0}});
    if (schatten(power, 1.0, 1000).verdict != SchattenVerdict::NotInClass)
        fail("Power(2) not NotInClass at p=1");
    const auto   s2     = schatten(power, 2.0, 1'000'000);
    const double target = std::numbers::pi * std::numbers::pi / 6.0 - 1.0;
    if (s2.verdict != SchattenVerdict::InClass)
        fail("Power(2) not InClass at p=2");
    const double gap = std::abs(s2.partial_sum() - target);
    if (gap > 1e-4)
        fail("partial sum off by " + sci(gap));
    if (!(s2.partial_sum() <= target && target <= s2.partial_sum() + s2.tail_bound))
        fail("tail bound does not cover the remainder");

    const auto atom1 = MeasureSpec::atomic({{1.0, 3.0}});
    for (double p : {0.5, 1.0, 2.0, 4.0})
        if (schatten(atom1, p, 100).verdict != SchattenVerdict::NotInClass)
            fail("atom at 1 InClass at p=" + shortest(p));

    o.detail = "|S_1 - 1| = " + sci(dev) + ", |S_2(N=1e6) - (pi^2/6 - 1)| = " + sci(gap) + ", tail "
             + sci(s2.tail_bound) + o.detail;
    return o;
}

Outcome monotone_and_tail()
{
    const std::vector<Named> families = {
        {"Atomic{(2,1)}", MeasureSpec::atomic({{2.0, 1.0}})},
        {"Atomic{(1,3)}", MeasureSpec::atomic({{1.0, 3.0}})},
        {"Power(2)", MeasureSpec::density({PowerDensity{2.0}})},
        {"ExpShift(1)", MeasureSpec::density({ExpShiftDensity{1.0}})},
        {"Tabulated", MeasureSpec::density({TabulatedDensity{{1.0, 2.0, 4.0}, {1.0, 0.25, 0.0625}, 2.0}})},
        {"atom(1,1e-9)+Power(2)", MeasureSpec::mixture({{1.0, 1e-9}}, {PowerDensity{2.0}})},
    };
    Outcome o;
    for (const auto & [name, m] : families) {
        const auto mu = moments(m, 200);
        for (std::size_t n = 0; n < 200; ++n)
            if (mu[n + 1] > mu[n] + mu.error_bounds[n] + mu.error_bounds[n + 1]) {
                o.pass = false;
                o.detail += std::string(" ") + name + " increases at n=" + std::to_string(n);
                break;
            }
        const double limit = moment_tail_limit(m);
        if (limit != 0.0)
            continue;
        const double gap = std::abs(mu[200] - limit);
        if (gap > 1e-6 * (mu[0] + 1.0)) {
            o.pass = false;
            o.detail += std::string(" ") + name + " |mu_200 - limit| = " + sci(gap);
        }
    }
    o.detail = "6 families, n <= 200;" + (o.detail.empty() ? std::string(" all within bounds") : o.detail);
    return o;
}

Outcome eigenrelation()
{
    const std::vector<Named> closed = {
        {"Atomic{(2,1)}", MeasureSpec::atomic({{2.0, 1.0}})},
        {"Atomic{(1,3)}", MeasureSpec::atomic({{1.0, 3.0}})},
        {"Power(2)", MeasureSpec::density({PowerDensity{2.0}})},
        {"atom(1,1e-9)+Power(2)", MeasureSpec::mixture({{1.0, 1e-9}}, {PowerDensity{2.0}})},
    };
    std::size_t bad = 0, total = 0;
    for (const auto & [name, m] : closed) {
        const auto mu = moments(m, 64);
        for (std::size_t n = 0; n <= 64; ++n, ++total) {
            const auto   g = apply(mu, TaylorPolynomial::monomial(n));
            const auto   c = g.coefficients();
            std::size_t nonzero = 0;
            for (const Complex & a : c)
                nonzero += a != Complex{};
            if (nonzero != 1 || g[n] != Complex(mu[n], 0.0))
                ++bad;
        }
    }
    return {bad == 0, std::to_string(total) + " monomials, " + std::to_string(bad) + " mismatches"};
}

struct Criterion
{
    int                      id;
    const char *             title;
    double                   budget_s;  // 0 = none
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char ** argv)
{
    std::set<int> expected_fail;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc)
            expected_fail.insert(std::atoi(argv[++i]));
        else {
            std::fprintf(stderr, "usage: %s [--expect-fail K]...\n", argv[0]);
            return 2;
        }
    }

    const Criterion criteria[] = {
        {1, "operator norm equals mu_0 on F^p_alpha", 30.0, norm_equality},
        {2, "coefficient multiplier equals integral form", 10.0, multiplier_vs_integral},
        {3, "F2 coefficient norm equals polar quadrature", 20.0, f2_formula},
        {4, "monomial p-norm closed form", 10.0, monomial_norms},
        {5, "compactness iff no atom at t=1", 0.0, compactness},
        {6, "Schatten class membership", 0.0, schatten_classes},
        {7, "moment monotonicity and tail limit", 0.0, monotone_and_tail},
        {8, "eigenrelation H z^n = mu_n z^n", 0.0, eigenrelation},
    };

    int failures = 0;
    for (const auto & c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome    o;
        try {
            o = c.run();
        } catch (const std::exception & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            o.pass = false;
            o.detail += "; over time budget of " + shortest(c.budget_s) + " s";
        }
        const bool excused = !o.pass && expected_fail.count(c.id);
        std::printf("%s  C%d  %s  (%.2f s)  %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                    o.detail.c_str(), excused ? "  [expected failure]" : "");
        std::fflush(stdout);
        if (!o.pass && !excused)
            ++failures;
    }
    return failures == 0 ? 0 : 1;
}
