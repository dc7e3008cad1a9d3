#pragma once

//
// Positive Borel measures on [1, ∞) and their moment sequences
//
//   μ_n = ∫_1^∞ t^{-(n+1)} dμ(t),   n = 0, 1, 2, ...
//
// A measure is a finite set of atoms plus at most one density w·φ(t) dt.
// Density moments that have no closed form are computed on u = 1/t, which
// maps [1, ∞) onto (0, 1] and turns the moment integrand into u^{n-1} φ(1/u).
//

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "adaptive.hpp"
#include "error.hpp"

namespace fock_hausdorff {

struct Atom
{
    double t    = 1.0;
    double mass = 0.0;
};

// dμ = t^{-s} dt
struct PowerDensity
{
    double s = 1.0;
};

// dμ = e^{-λ(t-1)} dt
struct ExpShiftDensity
{
    double lambda = 1.0;
};

enum class Interpolation { Linear, Step };

//
// Sampled density. Zero below the first sample; between samples either
// linear or left-closed step interpolation; beyond the last sample T the
// declared tail φ(T)·(t/T)^{-tail_decay}.
//
struct TabulatedDensity
{
    std::vector<double> t;
    std::vector<double> phi;
    double              tail_decay    = 0.0;
    Interpolation       interpolation = Interpolation::Linear;

    double value(double x) const
    {
        if (x < t.front())
            return 0.0;
        if (x >= t.back())
            return phi.back() * std::pow(x / t.back(), -tail_decay);
        const auto   hi = std::upper_bound(t.begin(), t.end(), x);
        const auto   i  = static_cast<std::size_t>(hi - t.begin()) - 1;
        if (interpolation == Interpolation::Step)
            return phi[i];
        const double w = (x - t[i]) / (t[i + 1] - t[i]);
        return (1.0 - w) * phi[i] + w * phi[i + 1];
    }

    double max_value() const { return *std::max_element(phi.begin(), phi.end()); }
};

struct DensityFamily
{
    std::variant<PowerDensity, ExpShiftDensity, TabulatedDensity> family;
    double                                                        weight = 1.0;

    double value(double t) const
    {
        if (t < 1.0)
            return 0.0;
        return weight * std::visit([t](const auto & f) { return eval(f, t); }, family);
    }

    // u^{n-1} φ(1/u) on (0, 1]; evaluated in log form where that avoids
    // overflow of the separate factors.
    double moment_kernel(std::size_t n, double u) const
    {
        const double e = static_cast<double>(n) - 1.0;
        return weight * std::visit(
                   [&](const auto & f) -> double {
                       using T = std::decay_t<decltype(f)>;
                       if constexpr (std::is_same_v<T, PowerDensity>)
                           return std::pow(u, e + f.s);
                       else if constexpr (std::is_same_v<T, ExpShiftDensity>)
                           return std::exp(e * std::log(u) - f.lambda * (1.0 / u - 1.0));
                       else
                           return std::pow(u, e) * f.value(1.0 / u);
                   },
                   family);
    }

    // Breakpoints of the u-space integrand on [0, 1] (kinks of tabulated data).
    std::vector<double> u_breakpoints() const
    {
        std::vector<double> bp{0.0, 1.0};
        if (const auto * tab = std::get_if<TabulatedDensity>(&family)) {
            for (double x : tab->t)
                bp.push_back(1.0 / x);
        }
        std::sort(bp.begin(), bp.end());
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        return bp;
    }

private:
    static double eval(const PowerDensity & f, double t) { return std::pow(t, -f.s); }
    static double eval(const ExpShiftDensity & f, double t) { return std::exp(-f.lambda * (t - 1.0)); }
    static double eval(const TabulatedDensity & f, double t) { return f.value(t); }
};

enum class MeasureKind { Atomic, Density, Mixture };

//
// Immutable measure description. Construction enforces the structural
// invariants (support in [1, ∞), positive masses, admissible parameters);
// finiteness of μ_0 is checked separately by validate().
//
class MeasureSpec
{
public:
    static MeasureSpec atomic(std::vector<Atom> atoms)
    {
        if (atoms.empty())
            throw DomainError("atomic measure needs at least one atom");
        check_atoms(atoms);
        return MeasureSpec(MeasureKind::Atomic, std::move(atoms), std::nullopt);
    }

    static MeasureSpec density(DensityFamily d)
    {
        check_density(d);
        return MeasureSpec(MeasureKind::Density, {}, std::move(d));
    }

    static MeasureSpec mixture(std::vector<Atom> atoms, DensityFamily d)
    {
        check_atoms(atoms);
        check_density(d);
        return MeasureSpec(MeasureKind::Mixture, std::move(atoms), std::move(d));
    }

    MeasureKind                         kind() const noexcept { return kind_; }
    const std::vector<Atom> &           atoms() const noexcept { return atoms_; }
    const std::optional<DensityFamily> & density() const noexcept { return density_; }

    // c·μ
    MeasureSpec scaled(double c) const
    {
        if (!(c > 0.0) || !std::isfinite(c))
            throw DomainError("scale factor must be positive and finite");
        MeasureSpec r = *this;
        for (auto & a : r.atoms_)
            a.mass *= c;
        if (r.density_)
            r.density_->weight *= c;
        return r;
    }

private:
    MeasureSpec(MeasureKind k, std::vector<Atom> atoms, std::optional<DensityFamily> d)
        : kind_(k)
        , atoms_(std::move(atoms))
        , density_(std::move(d))
    {}

    static void check_atoms(const std::vector<Atom> & atoms)
    {
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const auto & a = atoms[i];
            if (!std::isfinite(a.t) || a.t < 1.0)
                throw DomainError("atom " + std::to_string(i) + " at t < 1: mu must vanish on (0,1)");
            if (!std::isfinite(a.mass) || !(a.mass > 0.0))
                throw DomainError("atom " + std::to_string(i) + " has nonpositive mass");
        }
    }

    static void check_density(const DensityFamily & d)
    {
        if (!std::isfinite(d.weight) || !(d.weight > 0.0))
            throw DomainError("density weight must be positive");
        std::visit(
            [](const auto & f) {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, PowerDensity>) {
                    if (!std::isfinite(f.s) || !(f.s > 0.0))
                        throw DomainError("power density needs s > 0");
                } else if constexpr (std::is_same_v<T, ExpShiftDensity>) {
                    if (!std::isfinite(f.lambda) || !(f.lambda > 0.0))
                        throw DomainError("expshift density needs lambda > 0");
                } else {
                    if (f.t.empty() || f.t.size() != f.phi.size())
                        throw DomainError("tabulated density needs matching, nonempty samples");
                    if (!(f.t.front() >= 1.0))
                        throw DomainError("tabulated density sampled below t = 1");
                    for (std::size_t i = 0; i < f.t.size(); ++i) {
                        if (!std::isfinite(f.t[i]) || !std::isfinite(f.phi[i]))
                            throw DomainError("tabulated density has non-finite samples");
                        if (f.phi[i] < 0.0)
                            throw DomainError("tabulated density is negative at sample " + std::to_string(i));
                        if (i > 0 && !(f.t[i] > f.t[i - 1]))
                            throw DomainError("tabulated sample points must increase strictly");
                    }
                    if (!std::isfinite(f.tail_decay) || f.tail_decay < 0.0)
                        throw DomainError("tabulated density needs a declared tail_decay >= 0");
                }
            },
            d.family);
    }

    MeasureKind                  kind_;
    std::vector<Atom>            atoms_;
    std::optional<DensityFamily> density_;
};

//
// moments
//

enum class Provenance { ClosedForm, Quadrature };

struct Moment
{
    double     value       = 0.0;
    double     error_bound = 0.0;
    Provenance provenance  = Provenance::ClosedForm;
};

struct MomentOptions
{
    double      tol              = 1e-10;
    std::size_t max_evaluations  = 1'000'000;
    bool        force_quadrature = false;
};

// μ_0..μ_N with per-entry error bounds (zero for closed forms).
struct MomentSequence
{
    std::vector<double>     values;
    std::vector<double>     error_bounds;
    std::vector<Provenance> provenance;

    std::size_t N() const noexcept { return values.empty() ? 0 : values.size() - 1; }
    std::size_t size() const noexcept { return values.size(); }
    double      operator[](std::size_t n) const { return values[n]; }
};

namespace detail {

inline Moment density_moment(const DensityFamily & d, std::size_t n, const MomentOptions & opts)
{
    if (!opts.force_quadrature) {
        if (const auto * pw = std::get_if<PowerDensity>(&d.family))
            return {d.weight / (static_cast<double>(n) + pw->s), 0.0, Provenance::ClosedForm};
    }

    const std::vector<double> bp = d.u_breakpoints();
    auto kernel = [&d, n](double u) { return std::array<double, 1>{d.moment_kernel(n, u)}; };
    QuadOptions qo;
    qo.abs_tol         = opts.tol;
    qo.max_evaluations = opts.max_evaluations;
    const auto r       = integrate_adaptive<1>(kernel, bp, qo);
    return {r.value[0], r.error_bound, Provenance::Quadrature};
}

} // namespace detail

// μ_n. Atoms are summed exactly; Power(s) uses w/(n+s); everything else
// goes through adaptive quadrature on u = 1/t.
inline Moment moment(const MeasureSpec & m, std::size_t n, const MomentOptions & opts = {})
{
    special::CompensatedSum sum;
    for (const auto & a : m.atoms())
        sum.add(a.mass * std::pow(a.t, -(static_cast<double>(n) + 1.0)));

    Moment r{0.0, 0.0, Provenance::ClosedForm};
    if (m.density()) {
        const Moment dm = detail::density_moment(*m.density(), n, opts);
        sum.add(dm.value);
        r.error_bound = dm.error_bound;
        r.provenance  = dm.provenance;
    }
    r.value = sum.value();
    return r;
}

inline MomentSequence moments(const MeasureSpec & m, std::size_t N, const MomentOptions & opts = {})
{
    MomentSequence seq;
    seq.values.reserve(N + 1);
    seq.error_bounds.reserve(N + 1);
    seq.provenance.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        try {
            const Moment mu = moment(m, n, opts);
            seq.values.push_back(mu.value);
            seq.error_bounds.push_back(mu.error_bound);
            seq.provenance.push_back(mu.provenance);
        } catch (const QuadratureError & e) {
            throw QuadratureError("moment mu_" + std::to_string(n) + ": " + e.what(), e.estimate(),
                                  e.error_bound(), e.evaluations());
        }
    }
    return seq;
}

// lim μ_n = μ({1}) by dominated convergence: t^{-(n+1)} → 1_{t=1} on [1, ∞).
inline double moment_tail_limit(const MeasureSpec & m)
{
    double mass = 0.0;
    for (const auto & a : m.atoms())
        if (a.t == 1.0)
            mass += a.mass;
    return mass;
}

//
// well-definedness
//

struct WellDefinednessReport
{
    double                   mu0               = 0.0;
    bool                     ok                = false;
    bool                     total_mass_finite = true;
    bool                     quadrature_failed = false;  // ok is false because μ_0 did not converge
    std::string              reason;
    std::vector<std::string> notes;
};

//
// ok iff μ_0 < ∞. Moments are non-increasing for support in [1, ∞), so
// sup_n μ_n = μ_0 and finiteness of μ_0 is the whole condition.
//
inline WellDefinednessReport validate(const MeasureSpec & m, const MomentOptions & opts = {})
{
    WellDefinednessReport rep;
    constexpr double inf = std::numeric_limits<double>::infinity();

    if (const auto & d = m.density()) {
        if (const auto * pw = std::get_if<PowerDensity>(&d->family)) {
            rep.total_mass_finite = pw->s > 1.0;
        } else if (const auto * tab = std::get_if<TabulatedDensity>(&d->family)) {
            const bool live_tail = tab->phi.back() > 0.0;
            if (live_tail && tab->tail_decay == 0.0) {
                rep.mu0    = inf;
                rep.ok     = false;
                rep.reason = "declared tail t^0 makes the integral of t^-1 dmu diverge";
                rep.total_mass_finite = false;
                return rep;
            }
            rep.total_mass_finite = !live_tail || tab->tail_decay > 1.0;
        }
    }
    if (!rep.total_mass_finite)
        rep.notes.push_back("total mass mu[1,inf) is infinite; accepted because only mu_0 enters "
                            "the well-definedness condition");

    try {
        const Moment mu0 = moment(m, 0, opts);
        rep.mu0          = mu0.value;
        rep.ok           = std::isfinite(mu0.value);
        if (!rep.ok)
            rep.reason = "mu_0 is not finite";
        if (mu0.provenance == Provenance::Quadrature)
            rep.notes.push_back("mu_0 by quadrature, error bound " + std::to_string(mu0.error_bound));
    } catch (const QuadratureError & e) {
        rep.mu0               = inf;
        rep.ok                = false;
        rep.quadrature_failed = true;
        rep.reason            = std::string("mu_0 quadrature did not converge: ") + e.what();
    }
    return rep;
}

} // namespace fock_hausdorff
