#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include <fock_hausdorff/measure.hpp>
#include <fock_hausdorff/measure_io.hpp>

#include "oracles.hpp"

using namespace fock_hausdorff;

namespace {

MeasureSpec dirac2() { return MeasureSpec::atomic({{2.0, 1.0}}); }
MeasureSpec atom1() { return MeasureSpec::atomic({{1.0, 3.0}}); }
MeasureSpec power(double s) { return MeasureSpec::density({PowerDensity{s}}); }
MeasureSpec expshift(double l) { return MeasureSpec::density({ExpShiftDensity{l}}); }

} // namespace

TEST(Parse, AtomicDocument)
{
    const auto m = parse_measure(R"({"kind":"atomic","atoms":[{"t":2.0,"mass":1.0}]})");
    ASSERT_EQ(m.kind(), MeasureKind::Atomic);
    ASSERT_EQ(m.atoms().size(), 1u);
    EXPECT_EQ(m.atoms()[0].t, 2.0);
    EXPECT_EQ(m.atoms()[0].mass, 1.0);
    EXPECT_FALSE(m.density());
}

TEST(Parse, PowerDocument)
{
    const auto m = parse_measure(R"({"kind":"density","family":"power","s":2.0})");
    ASSERT_EQ(m.kind(), MeasureKind::Density);
    ASSERT_TRUE(m.density());
    EXPECT_EQ(std::get<PowerDensity>(m.density()->family).s, 2.0);
}

TEST(Parse, SupportBelowOneIsDomainError)
{
    EXPECT_THROW(parse_measure(R"({"kind":"atomic","atoms":[{"t":0.5,"mass":1.0}]})"), DomainError);
}

TEST(Parse, NonpositiveMassIsDomainError)
{
    EXPECT_THROW(parse_measure(R"({"kind":"atomic","atoms":[{"t":2,"mass":0}]})"), DomainError);
    EXPECT_THROW(parse_measure(R"({"kind":"atomic","atoms":[{"t":2,"mass":-1}]})"), DomainError);
}

TEST(Parse, PowerWithZeroExponentRejected)
{
    EXPECT_THROW(parse_measure(R"({"kind":"density","family":"power","s":0})"), DomainError);
}

TEST(Parse, SyntaxErrorCarriesLineAndColumn)
{
    try {
        parse_measure("{\n  \"kind\": \"atomic\",\n  \"atoms\": [ }");
        FAIL() << "expected ParseError";
    } catch (const ParseError & e) {
        EXPECT_NE(e.location().find("line 3"), std::string::npos) << e.location();
    }
}

TEST(Parse, FieldErrorCarriesPath)
{
    try {
        parse_measure(R"({"kind":"atomic","atoms":[{"t":2,"mass":1},{"t":"x","mass":1}]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError & e) {
        EXPECT_EQ(e.location(), "/atoms/1/t");
    }
}

TEST(Parse, UnknownKeysAndKindsRejected)
{
    EXPECT_THROW(parse_measure(R"({"kind":"density","family":"power","s":2,"x":1})"), ParseError);
    EXPECT_THROW(parse_measure(R"({"kind":"gaussian"})"), ParseError);
    EXPECT_THROW(parse_measure(R"({"kind":"density","family":"cauchy"})"), ParseError);
}

TEST(Parse, TabulatedNeedsDeclaredTail)
{
    EXPECT_THROW(parse_measure(R"({"kind":"density","family":"tabulated","samples":[[1,1],[2,0.5]]})"),
                 ParseError);
    EXPECT_THROW(
        parse_measure(R"({"kind":"density","family":"tabulated","samples":[[2,1],[1,0.5]],"tail_decay":2})"),
        DomainError);
}

TEST(Parse, RoundTripThroughJson)
{
    const char * docs[] = {
        R"({"kind":"atomic","atoms":[{"t":2.0,"mass":1.0},{"t":1.0,"mass":0.25}]})",
        R"({"kind":"density","family":"expshift","lambda":1.5,"weight":2.0})",
        R"({"kind":"density","family":"tabulated","samples":[[1,1],[3,0.5]],"tail_decay":3,"interpolation":"step"})",
        R"({"kind":"mixture","atoms":[{"t":1.0,"mass":1e-9}],"density":{"family":"power","s":2}})",
    };
    for (const char * d : docs) {
        const auto m  = parse_measure(d);
        const auto j  = measure_to_json(m);
        const auto m2 = parse_measure(j.dump());
        EXPECT_EQ(measure_to_json(m2).dump(), j.dump()) << d;
    }
}

TEST(Validate, SpecExamples)
{
    auto r = validate(dirac2());
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.mu0, 0.5);

    r = validate(power(2.0));
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.mu0, 0.5);

    TabulatedDensity flat{{1.0, 2.0}, {1.0, 1.0}, 0.0};
    r = validate(MeasureSpec::density({flat}));
    EXPECT_FALSE(r.ok);
    EXPECT_TRUE(std::isinf(r.mu0));
    EXPECT_FALSE(r.reason.empty());
}

TEST(Validate, InfiniteTotalMassIsAcceptedWithNote)
{
    const auto r = validate(power(0.5));
    EXPECT_TRUE(r.ok);
    EXPECT_DOUBLE_EQ(r.mu0, 2.0);
    EXPECT_FALSE(r.total_mass_finite);
    EXPECT_FALSE(r.notes.empty());
}

TEST(Moment, ClosedForms)
{
    EXPECT_EQ(moment(dirac2(), 0).value, 0.5);
    EXPECT_EQ(moment(power(2.0), 3).value, 0.2);
    EXPECT_EQ(moment(power(2.0), 3).provenance, Provenance::ClosedForm);
}

TEST(Moment, ExpShiftAgainstSimpsonOracle)
{
    for (std::size_t n : {0u, 1u, 2u, 5u, 20u}) {
        const Moment m   = moment(expshift(1.0), n);
        const double ref = oracle::expshift_moment(1.0, n);
        EXPECT_NEAR(m.value, ref, 1e-10) << "n = " << n;
        EXPECT_EQ(m.provenance, Provenance::Quadrature);
        EXPECT_LE(m.error_bound, 1e-10);
    }
    // μ_0 + μ_1 = 1 for λ = 1 (integrate t^{-2} e^{-(t-1)} by parts).
    EXPECT_NEAR(moment(expshift(1.0), 0).value + moment(expshift(1.0), 1).value, 1.0, 1e-10);
}

TEST(Moment, ForcedQuadratureMatchesPowerClosedForm)
{
    MomentOptions o;
    o.force_quadrature = true;
    for (std::size_t n = 0; n <= 10; ++n) {
        const Moment m = moment(power(2.0), n, o);
        EXPECT_NEAR(m.value, 1.0 / (static_cast<double>(n) + 2.0), 1e-10);
        EXPECT_EQ(m.provenance, Provenance::Quadrature);
    }
}

TEST(Moment, TabulatedMatchesPiecewiseIntegral)
{
    // φ = 1 on [1, 2) (step), then (t/2)^{-3} beyond 2 with φ(2) = 1.
    TabulatedDensity tab{{1.0, 2.0}, {1.0, 1.0}, 3.0, Interpolation::Step};
    const auto       m = MeasureSpec::density({tab});
    // μ_0 = ∫_1^2 t^{-1} dt + 8 ∫_2^∞ t^{-4} dt = ln 2 + 1/3.
    EXPECT_NEAR(moment(m, 0).value, std::log(2.0) + 1.0 / 3.0, 1e-10);
}

TEST(Moments, SpecSequences)
{
    auto mu = moments(dirac2(), 3);
    EXPECT_EQ(mu.values, (std::vector<double>{0.5, 0.25, 0.125, 0.0625}));
    mu = moments(atom1(), 2);
    EXPECT_EQ(mu.values, (std::vector<double>{3, 3, 3}));
    mu = moments(power(2.0), 4);
    for (std::size_t n = 0; n <= 4; ++n)
        EXPECT_DOUBLE_EQ(mu[n], 1.0 / (static_cast<double>(n) + 2.0));
}

TEST(Moments, BudgetExhaustionNamesIndex)
{
    MomentOptions o;
    o.max_evaluations = 40;
    o.tol             = 1e-15;
    try {
        moments(expshift(1.0), 3, o);
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError & e) {
        EXPECT_NE(std::string(e.what()).find("mu_0"), std::string::npos) << e.what();
        EXPECT_GT(e.estimate(), 0.0);
    }
}

TEST(TailLimit, SpecExamples)
{
    EXPECT_EQ(moment_tail_limit(atom1()), 3.0);
    EXPECT_EQ(moment_tail_limit(dirac2()), 0.0);
    EXPECT_EQ(moment_tail_limit(MeasureSpec::mixture({{1.0, 0.5}}, {PowerDensity{2.0}})), 0.5);
}

TEST(Scaled, MultipliesEveryMoment)
{
    const auto m = MeasureSpec::mixture({{3.0, 2.0}}, {ExpShiftDensity{2.0}});
    const auto c = m.scaled(2.5);
    for (std::size_t n = 0; n < 6; ++n)
        EXPECT_NEAR(moment(c, n).value, 2.5 * moment(m, n).value, 1e-12);
    EXPECT_THROW(m.scaled(0.0), DomainError);
}
