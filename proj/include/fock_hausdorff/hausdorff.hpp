#pragma once

//
// The Hausdorff operator
//
//   H_μ f(z) = ∫_1^∞ (1/t) f(z/t) dμ(t) = Σ_n μ_n a_n z^n
//
// on F^p_α. On the basis z^n it is diagonal with eigenvalues μ_n, so its
// norm, compactness and Schatten membership are all read off the moment
// sequence.
//

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "fock.hpp"
#include "format.hpp"
#include "measure.hpp"
#include "quad.hpp"
#include "random.hpp"
#include "special.hpp"
#include "taylor.hpp"

namespace fock_hausdorff {

//
// application
//

// Coefficient multiplier form: b_n = μ_n a_n.
inline TaylorPolynomial apply(const MomentSequence & mu, const TaylorPolynomial & f)
{
    if (f.degree() > mu.N() || mu.size() == 0)
        throw MomentsTooShort("moment sequence ends at N = " + std::to_string(mu.N())
                                  + " but the polynomial needs N = " + std::to_string(f.degree()),
                              f.degree());
    const auto           a = f.coefficients();
    std::vector<Complex> b(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
        b[n] = {mu[n] * a[n].real(), mu[n] * a[n].imag()};
    return TaylorPolynomial(std::move(b));
}

//
// Direct quadrature of the defining integral at one point,
// ∫ (1/t) f(z/t) dμ(t); real and imaginary parts each to `tol`.
// Independent of the moment route.
//
inline Complex apply_integral_oracle(const MeasureSpec & m, const TaylorPolynomial & f, Complex z,
                                     double tol, std::size_t max_evaluations = 1'000'000)
{
    const auto re = integrate_against_measure(
        m, [&](double t) { return f(z / t).real() / t; }, tol, max_evaluations);
    const auto im = integrate_against_measure(
        m, [&](double t) { return f(z / t).imag() / t; }, tol, max_evaluations);
    return {re.value, im.value};
}

//
// norm
//

// ‖H_μ‖ = sup_n μ_n = μ_0. Checks the monotone-moment identity on the way.
inline double operator_norm(const MomentSequence & mu)
{
    if (mu.size() == 0)
        throw DomainError("empty moment sequence");
    const auto   top  = std::max_element(mu.values.begin(), mu.values.end());
    const auto   at   = static_cast<std::size_t>(top - mu.values.begin());
    const double slack = mu.error_bounds.empty() ? 0.0 : mu.error_bounds[0] + mu.error_bounds[at];
    if (*top > mu[0] + slack)
        throw VerificationError("moment mu_" + std::to_string(at) + " exceeds mu_0 beyond error bounds");
    return *top;
}

struct EmpiricalNormBounds
{
    double           lower = 0.0;  // max test ratio ‖H f‖ / ‖f‖
    TaylorPolynomial witness;
    std::size_t      tested        = 0;
    double           operator_norm = 0.0;
};

//
// Lower bound for ‖H_μ‖ on F^p_α from the test set {z^0..z^20} plus `trials`
// random polynomials (degree <= 10, coefficients uniform on [-1,1]²; trial i
// uses stream seed ⊕ i). Norms are computed numerically, so this is the
// verification harness for the moment formula, not the source of the norm.
//
inline EmpiricalNormBounds empirical_norm_bounds(const MeasureSpec & m, const FockParams & params,
                                                 std::size_t trials, std::uint64_t seed,
                                                 const MomentOptions & mopts = {},
                                                 const NormOptions &   nopts = {.rel_tol = 1e-7})
{
    constexpr std::size_t max_monomial = 20;
    constexpr std::size_t max_random   = 10;

    const MomentSequence mu = moments(m, max_monomial, mopts);
    EmpiricalNormBounds  out;
    out.operator_norm = operator_norm(mu);

    NormOptions no = nopts;
    no.cross_check_tol = 0.0;

    auto consider = [&](const TaylorPolynomial & f) {
        const double nf = norm_fp(f, params, no);
        if (nf == 0.0)
            return;
        const double ratio = norm_fp(apply(mu, f), params, no) / nf;
        ++out.tested;
        if (ratio > out.lower || out.tested == 1) {
            out.lower   = ratio;
            out.witness = f;
        }
    };

    for (std::size_t n = 0; n <= max_monomial; ++n)
        consider(TaylorPolynomial::monomial(n));
    for (std::size_t i = 0; i < trials; ++i) {
        TestStream rng = trial_stream(seed, i);
        consider(rng.polynomial_up_to(max_random));
    }
    return out;
}

//
// finite-rank truncation and compactness
//

// ‖H_μ - H_{μ,k}‖ on F²_α = sup_{n>k} μ_n = μ_{k+1}.
inline double truncation_error(const MomentSequence & mu, std::size_t k)
{
    if (k >= mu.N())
        throw DomainError("truncation_error needs k < N (k = " + std::to_string(k) + ", N = "
                          + std::to_string(mu.N()) + ")");
    return mu[k + 1];
}

enum class Compactness { Yes, No, Inconclusive };

struct CompactnessVerdict
{
    Compactness verdict    = Compactness::Inconclusive;
    double      tail_limit = 0.0;  // lim μ_n = μ({1})
    std::string reason;
};

// Decided from the atom at t = 1, which is exactly lim μ_n.
inline CompactnessVerdict is_compact(const MeasureSpec & m)
{
    const double tail = moment_tail_limit(m);
    if (tail > 0.0) {
        return {Compactness::No, tail, "atom at t=1, mass " + shortest(tail)};
    }
    return {Compactness::Yes, 0.0, "no atom at t=1, so mu_n -> 0"};
}

// The little-o criterion is proved for 1 < p < ∞; the endpoints are open.
inline std::optional<std::string> compactness_caveat(const FockParams & params)
{
    if (params.p == 1.0 || params.is_sup())
        return "compactness on F^p_alpha is characterized only for 1 < p < inf; "
               "the criterion value is reported without a verdict claim at this endpoint";
    return std::nullopt;
}

//
// Schatten classes (on F²_α)
//

enum class SchattenVerdict { InClass, NotInClass, Inconclusive };

struct SchattenReport
{
    double              p = 2.0;
    std::vector<double> partial_sums;  // Σ_{n<=k} μ_n^p, k = 0..N
    double              tail_bound = 0.0;
    SchattenVerdict     verdict    = SchattenVerdict::Inconclusive;
    std::string         reason;

    double partial_sum() const { return partial_sums.empty() ? 0.0 : partial_sums.back(); }
};

namespace detail {

// Certified statement about Σ_{n>N} c_n^p for one component of μ.
struct TailPart
{
    enum class Kind { Bounded, Diverges, Unknown } kind = Kind::Bounded;
    double      bound = 0.0;
    std::string reason;
};

inline TailPart atoms_tail(const std::vector<Atom> & atoms, double p, std::size_t N)
{
    if (atoms.empty())
        return {};
    double mass = 0.0, t_min = std::numeric_limits<double>::infinity();
    for (const auto & a : atoms) {
        mass += a.mass;
        t_min = std::min(t_min, a.t);
    }
    if (t_min == 1.0)
        return {TailPart::Kind::Diverges, std::numeric_limits<double>::infinity(),
                "atom at t=1: mu_n does not tend to 0"};
    // μ_n <= M t_min^{-(n+1)}
    const double q = std::pow(t_min, -p);
    const double b = std::pow(mass, p) * std::pow(t_min, -p * (static_cast<double>(N) + 2.0)) / (1.0 - q);
    return {TailPart::Kind::Bounded, b, "geometric envelope M t_min^-(n+1)"};
}

// Σ_{n>N} (c/(n+s))^p <= c^p ∫_N^∞ (x+s)^{-p} dx for p > 1.
inline double power_envelope_tail(double c, double s, double p, std::size_t N)
{
    return std::pow(c, p) * std::pow(static_cast<double>(N) + s, 1.0 - p) / (p - 1.0);
}

inline TailPart density_tail(const DensityFamily & d, double p, std::size_t N)
{
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double     w   = d.weight;

    if (const auto * pw = std::get_if<PowerDensity>(&d.family)) {
        if (p <= 1.0)
            return {TailPart::Kind::Diverges, inf, "power density: mu_n = w/(n+s), not p-summable for p <= 1"};
        return {TailPart::Kind::Bounded, power_envelope_tail(w, pw->s, p, N), "integral test on w/(n+s)"};
    }

    if (std::holds_alternative<ExpShiftDensity>(d.family)) {
        // w/(n+1+λ) <= μ_n <= w/n  (log t <= t-1 below, e^{-λ(t-1)} <= 1 above)
        if (p <= 1.0)
            return {TailPart::Kind::Diverges, inf, "expshift density: mu_n >= w/(n+1+lambda), harmonic"};
        const std::size_t from = std::max<std::size_t>(N, 1);
        return {TailPart::Kind::Bounded, power_envelope_tail(w, 0.0, p, from),
                "power envelope mu_n <= w/n"};
    }

    const auto & tab = std::get<TabulatedDensity>(d.family);
    const auto   pos = std::find_if(tab.phi.begin(), tab.phi.end(), [](double v) { return v > 0.0; });
    if (pos == tab.phi.end())
        return {TailPart::Kind::Bounded, 0.0, "tabulated density vanishes identically"};
    const std::size_t j   = static_cast<std::size_t>(pos - tab.phi.begin());
    const double      phi_max = w * tab.max_value();

    // Density vanishes on [1, t_a).
    double t_a = tab.t[j];
    if (tab.interpolation == Interpolation::Linear && j > 0)
        t_a = tab.t[j - 1];

    if (t_a > 1.0) {
        // μ_n <= Φ t_a^{-n}/n <= Φ t_a^{-n} for n >= 1
        const double q = std::pow(t_a, -p);
        const double b = std::pow(phi_max, p) * std::pow(t_a, -p * (static_cast<double>(N) + 1.0)) / (1.0 - q);
        return {TailPart::Kind::Bounded, b, "support starts at t > 1: geometric envelope"};
    }
    if (p > 1.0)
        return {TailPart::Kind::Bounded, power_envelope_tail(phi_max, 0.0, p, std::max<std::size_t>(N, 1)),
                "power envelope mu_n <= max(phi)/n"};
    if (j == 0 && tab.t[0] == 1.0)
        return {TailPart::Kind::Diverges, inf,
                "tabulated density positive at t=1: mu_n >= c/n, not p-summable for p <= 1"};
    return {TailPart::Kind::Unknown, inf, "tabulated density vanishes at t=1; no usable envelope for p <= 1"};
}

} // namespace detail

//
// Σ_n μ_n^p < ∞ decides S_p membership. Partial sums come from `mu`; the
// tail beyond N is bounded per measure component, never extrapolated.
//
inline SchattenReport schatten(const MeasureSpec & m, const MomentSequence & mu, double p)
{
    if (!(p > 0.0) || !std::isfinite(p))
        throw DomainError("Schatten exponent must be positive and finite");
    if (mu.size() < 2)
        throw DomainError("Schatten report needs N >= 1");

    SchattenReport rep;
    rep.p = p;
    rep.partial_sums.reserve(mu.size());
    special::CompensatedSum s;
    for (double v : mu.values) {
        s.add(std::pow(v, p));
        rep.partial_sums.push_back(s.value());
    }

    using detail::TailPart;
    const std::size_t N  = mu.N();
    const TailPart    ta = detail::atoms_tail(m.atoms(), p, N);
    const TailPart    td = m.density() ? detail::density_tail(*m.density(), p, N) : TailPart{};

    constexpr double inf = std::numeric_limits<double>::infinity();
    if (ta.kind == TailPart::Kind::Diverges || td.kind == TailPart::Kind::Diverges) {
        rep.tail_bound = inf;
        rep.verdict    = SchattenVerdict::NotInClass;
        rep.reason     = ta.kind == TailPart::Kind::Diverges ? ta.reason : td.reason;
        return rep;
    }
    if (ta.kind == TailPart::Kind::Unknown || td.kind == TailPart::Kind::Unknown) {
        rep.tail_bound = inf;
        rep.verdict    = SchattenVerdict::Inconclusive;
        rep.reason     = td.reason;
        return rep;
    }
    // (a+b)^p: Minkowski for p >= 1, subadditivity for p < 1.
    if (p >= 1.0)
        rep.tail_bound = std::pow(std::pow(ta.bound, 1.0 / p) + std::pow(td.bound, 1.0 / p), p);
    else
        rep.tail_bound = ta.bound + td.bound;
    rep.verdict = SchattenVerdict::InClass;
    rep.reason  = m.density() ? (m.atoms().empty() ? td.reason : ta.reason + "; " + td.reason) : ta.reason;
    return rep;
}

inline SchattenReport schatten(const MeasureSpec & m, double p, std::size_t N, const MomentOptions & opts = {})
{
    if (N < 1)
        throw DomainError("Schatten report needs N >= 1");
    return schatten(m, moments(m, N, opts), p);
}

//
// point spectrum
//

// μ_0..μ_K; H_μ e_n = μ_n e_n with e_n = sqrt(α^n/n!) z^n.
inline std::vector<double> point_spectrum(const MomentSequence & mu, std::size_t K)
{
    if (K > mu.N() || mu.size() == 0)
        throw DomainError("point_spectrum needs K <= N");
    return {mu.values.begin(), mu.values.begin() + static_cast<std::ptrdiff_t>(K + 1)};
}

//
// combined report
//

struct TruncationEntry
{
    std::size_t k     = 0;
    double      error = 0.0;
};

struct OperatorReport
{
    FockParams                 params;
    WellDefinednessReport      well_defined;
    MomentSequence             moments;
    double                     operator_norm = 0.0;
    CompactnessVerdict         compact;
    std::optional<std::string> compact_caveat;
    std::vector<TruncationEntry> truncation_errors;
    SchattenReport             schatten;
    std::vector<double>        spectrum_prefix;
};

inline OperatorReport analyze(const MeasureSpec & m, const FockParams & params, std::size_t N,
                              double schatten_p, const MomentOptions & opts = {})
{
    if (N < 1)
        throw DomainError("report needs N >= 1");
    OperatorReport r;
    r.params       = params;
    r.well_defined = validate(m, opts);
    if (!r.well_defined.ok)
        return r;
    r.moments        = moments(m, N, opts);
    r.operator_norm  = operator_norm(r.moments);
    r.compact        = is_compact(m);
    r.compact_caveat = compactness_caveat(params);
    for (std::size_t k = 0; k < N; ++k)
        r.truncation_errors.push_back({k, truncation_error(r.moments, k)});
    r.schatten        = schatten(m, r.moments, schatten_p);
    r.spectrum_prefix = point_spectrum(r.moments, N);
    return r;
}

} // namespace fock_hausdorff
