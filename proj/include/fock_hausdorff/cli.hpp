#pragma once

//
// Command implementations behind the fock-hausdorff tool. Flag parsing lives
// in tools/; everything here takes a filled RunConfig and writes to streams.
//
// Exit codes: 0 ok, 1 invalid input, 2 ill-defined measure, 3 verification
// failure, 4 quadrature budget exhausted.
//

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "fock.hpp"
#include "format.hpp"
#include "hausdorff.hpp"
#include "measure_io.hpp"
#include "report.hpp"
#include "taylor.hpp"
#include "verify.hpp"

namespace fock_hausdorff::cli {

enum class Command { Moments, Apply, Norm, Opnorm, Compact, Schatten, Spectrum, Report, Verify };
enum class Format { Json, Csv, Text };

enum ExitCode : int {
    ok              = 0,
    invalid_input   = 1,
    ill_defined     = 2,
    verify_failed   = 3,
    budget_exceeded = 4,
};

struct RunConfig
{
    Command     command = Command::Report;
    std::string measure_path;
    std::string function_path;
    std::size_t N          = 64;
    double      p          = 2.0;
    double      alpha      = 1.0;
    double      tol        = 1e-10;
    std::uint64_t seed     = 42;
    Format      output_format = Format::Text;
    double      schatten_p    = 2.0;  // report only
};

inline std::optional<Command> command_from_string(const std::string & s)
{
    if (s == "moments") return Command::Moments;
    if (s == "apply") return Command::Apply;
    if (s == "norm") return Command::Norm;
    if (s == "opnorm") return Command::Opnorm;
    if (s == "compact") return Command::Compact;
    if (s == "schatten") return Command::Schatten;
    if (s == "spectrum") return Command::Spectrum;
    if (s == "report") return Command::Report;
    if (s == "verify") return Command::Verify;
    return std::nullopt;
}

// REAL or "inf".
inline double parse_exponent(const std::string & s)
{
    if (s == "inf" || s == "Inf" || s == "INF")
        return FockParams::infinity;
    std::size_t used = 0;
    double      v    = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw ParseError("-p", "expected a real number or inf, got '" + s + "'");
    }
    if (used != s.size())
        throw ParseError("-p", "expected a real number or inf, got '" + s + "'");
    return v;
}

namespace detail {

inline std::string read_file(const std::string & path, const char * what)
{
    if (path.empty())
        throw ParseError(what, "no file given");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError(path, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void check_config(const RunConfig & c)
{
    if (!(c.tol > 0.0) || !std::isfinite(c.tol))
        throw DomainError("--tol must be positive");
    if (!(c.alpha > 0.0) || !std::isfinite(c.alpha))
        throw DomainError("--alpha must be positive");
    const bool csv_ok = c.command == Command::Moments || c.command == Command::Spectrum;
    if (c.output_format == Format::Csv && !csv_ok)
        throw DomainError("csv output is available for moments and spectrum only");
}

class IllDefined : public Error
{
public:
    using Error::Error;
};

struct Context
{
    const RunConfig & config;
    std::ostream &    out;
    MeasureSpec       measure;
    MomentOptions     mopts;

    explicit Context(const RunConfig & c, std::ostream & o)
        : config(c)
        , out(o)
        , measure(parse_measure(read_file(c.measure_path, "--measure")))
    {
        mopts.tol = c.tol;
    }

    void require_well_defined() const
    {
        const auto wd = validate(measure, mopts);
        if (wd.quadrature_failed)
            throw QuadratureError(wd.reason, wd.mu0, std::numeric_limits<double>::infinity(), 0);
        if (!wd.ok)
            throw IllDefined("measure is not admissible: " + wd.reason);
    }

    MomentSequence moments_to(std::size_t N) const
    {
        require_well_defined();
        return fock_hausdorff::moments(measure, N, mopts);
    }

    FockParams params() const { return FockParams::make(config.alpha, config.p); }

    void dump(const ordered_json & j) const { out << j.dump(2) << '\n'; }
};

inline ordered_json moments_json(const MomentSequence & mu)
{
    ordered_json a = ordered_json::array();
    for (std::size_t n = 0; n < mu.size(); ++n)
        a.push_back({{"n", n},
                     {"mu_n", mu.values[n]},
                     {"error_bound", mu.error_bounds[n]},
                     {"provenance", to_string(mu.provenance[n])}});
    return a;
}

inline void print_polynomial(std::ostream & out, const TaylorPolynomial & f)
{
    const auto a = f.coefficients();
    for (std::size_t n = 0; n < a.size(); ++n)
        out << n << ' ' << shortest(a[n].real()) << ' ' << shortest(a[n].imag()) << '\n';
}

inline int cmd_moments(Context & ctx)
{
    const auto mu = ctx.moments_to(ctx.config.N);
    switch (ctx.config.output_format) {
    case Format::Csv: write_sequence_csv(ctx.out, mu.values); break;
    case Format::Json: ctx.dump({{"moments", moments_json(mu)}}); break;
    case Format::Text:
        for (std::size_t n = 0; n < mu.size(); ++n)
            ctx.out << n << ' ' << shortest(mu.values[n]) << '\n';
        break;
    }
    return ok;
}

inline int cmd_apply(Context & ctx)
{
    const auto f  = parse_polynomial(read_file(ctx.config.function_path, "--function"));
    const auto mu = ctx.moments_to(std::max(ctx.config.N, f.degree()));
    const auto hf = apply(mu, f);
    if (ctx.config.output_format == Format::Json)
        ctx.dump({{"coefficients", polynomial_to_json(hf)}});
    else
        print_polynomial(ctx.out, hf);
    return ok;
}

inline int cmd_norm(Context & ctx)
{
    const auto       f      = parse_polynomial(read_file(ctx.config.function_path, "--function"));
    const FockParams params = ctx.params();
    const auto       mu     = ctx.moments_to(std::max(ctx.config.N, f.degree()));
    const FockNorm   nf     = norm_fp_result(f, params);
    const FockNorm   nh     = norm_fp_result(apply(mu, f), params);
    const double     ratio  = nf.value > 0.0 ? nh.value / nf.value : 0.0;

    if (ctx.config.output_format == Format::Json) {
        ordered_json j;
        j["fock"]         = {{"alpha", params.alpha}, {"p", real_to_json(params.p)}};
        j["norm_f"]       = {{"value", nf.value}, {"error_bound", nf.error_bound}};
        j["norm_Hf"]      = {{"value", nh.value}, {"error_bound", nh.error_bound}};
        j["ratio"]        = ratio;
        j["operator_norm"] = operator_norm(mu);
        ctx.dump(j);
    } else {
        ctx.out << "||f||    " << shortest(nf.value) << '\n'
                << "||H f||  " << shortest(nh.value) << '\n'
                << "ratio    " << shortest(ratio) << '\n';
    }
    return ok;
}

inline int cmd_opnorm(Context & ctx)
{
    const FockParams params = ctx.params();
    const auto       mu     = ctx.moments_to(ctx.config.N);
    const double     norm   = operator_norm(mu);
    if (ctx.config.output_format == Format::Json)
        ctx.dump({{"fock", {{"alpha", params.alpha}, {"p", real_to_json(params.p)}}},
                  {"operator_norm", norm},
                  {"error_bound", mu.error_bounds[0]}});
    else
        ctx.out << shortest(norm) << '\n';
    return ok;
}

inline int cmd_compact(Context & ctx)
{
    ctx.require_well_defined();
    const FockParams params = ctx.params();
    const auto       v      = is_compact(ctx.measure);
    const auto       caveat = compactness_caveat(params);
    if (ctx.config.output_format == Format::Json) {
        ordered_json j;
        j["verdict"]    = to_string(v.verdict);
        j["tail_limit"] = v.tail_limit;
        j["reason"]     = v.reason;
        if (caveat)
            j["caveat"] = *caveat;
        ctx.dump(j);
    } else {
        ctx.out << (v.verdict == Compactness::Yes ? "compact (" : "NOT compact (") << v.reason << ")\n";
        if (caveat)
            ctx.out << "note: " << *caveat << '\n';
    }
    return ok;
}

inline int cmd_schatten(Context & ctx)
{
    if (!std::isfinite(ctx.config.p) || !(ctx.config.p > 0.0))
        throw DomainError("Schatten exponent -p must be positive and finite");
    const auto mu = ctx.moments_to(std::max<std::size_t>(ctx.config.N, 1));
    const auto s  = schatten(ctx.measure, mu, ctx.config.p);
    if (ctx.config.output_format == Format::Json) {
        ctx.dump(schatten_to_json(s));
    } else {
        ctx.out << "S_" << shortest(s.p) << " on F2_alpha: " << to_string(s.verdict) << '\n'
                << "partial sum (n <= " << mu.N() << ")  " << shortest(s.partial_sum()) << '\n'
                << "tail bound  " << shortest(s.tail_bound) << '\n'
                << "reason  " << s.reason << '\n';
    }
    return ok;
}

inline int cmd_spectrum(Context & ctx)
{
    const auto mu = ctx.moments_to(ctx.config.N);
    const auto s  = point_spectrum(mu, mu.N());
    const bool compact = is_compact(ctx.measure).verdict == Compactness::Yes;
    switch (ctx.config.output_format) {
    case Format::Csv: write_sequence_csv(ctx.out, s); break;
    case Format::Json: {
        ordered_json j;
        j["eigenvalues"] = s;
        j["eigenvectors"] = "e_n = sqrt(alpha^n / n!) z^n";
        if (compact)
            j["note"] = "0 lies in the closure of the point spectrum";
        ctx.dump(j);
        break;
    }
    case Format::Text:
        for (std::size_t n = 0; n < s.size(); ++n)
            ctx.out << n << ' ' << shortest(s[n]) << '\n';
        if (compact)
            ctx.out << "note: 0 lies in the closure of the point spectrum\n";
        break;
    }
    return ok;
}

inline int cmd_report(Context & ctx)
{
    const FockParams params = ctx.params();
    const auto       r = analyze(ctx.measure, params, std::max<std::size_t>(ctx.config.N, 1),
                                 ctx.config.schatten_p, ctx.mopts);
    if (!r.well_defined.ok) {
        ctx.dump(report_to_json(ctx.measure, r));
        if (r.well_defined.quadrature_failed)
            throw QuadratureError(r.well_defined.reason, r.well_defined.mu0,
                                  std::numeric_limits<double>::infinity(), 0);
        throw IllDefined("measure is not admissible: " + r.well_defined.reason);
    }
    if (ctx.config.output_format == Format::Json) {
        ctx.dump(report_to_json(ctx.measure, r));
        return ok;
    }
    ctx.out << "mu_0           " << shortest(r.well_defined.mu0) << '\n'
            << "operator norm  " << shortest(r.operator_norm) << '\n'
            << "compact        " << to_string(r.compact.verdict) << " (" << r.compact.reason << ")\n";
    if (r.compact_caveat)
        ctx.out << "               note: " << *r.compact_caveat << '\n';
    ctx.out << "schatten S_" << shortest(r.schatten.p) << "  " << to_string(r.schatten.verdict) << " ("
            << r.schatten.reason << ")\n";
    for (const auto & note : r.well_defined.notes)
        ctx.out << "note: " << note << '\n';
    return ok;
}

inline int cmd_verify(Context & ctx)
{
    ctx.require_well_defined();
    VerifyOptions vo;
    vo.alpha = ctx.config.alpha;
    vo.seed  = ctx.config.seed;
    vo.tol   = ctx.config.tol;
    const auto checks = verify_invariants(ctx.measure, vo);

    bool all = true;
    for (const auto & c : checks)
        all = all && c.passed;

    if (ctx.config.output_format == Format::Json) {
        ordered_json a = ordered_json::array();
        for (const auto & c : checks)
            a.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        ctx.dump({{"seed", ctx.config.seed}, {"passed", all}, {"checks", a}});
    } else {
        for (const auto & c : checks)
            ctx.out << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  [" << c.detail << "]\n";
    }
    if (!all)
        throw VerificationError("invariant suite reported failures");
    return ok;
}

} // namespace detail

// Runs one command; diagnostics go to `err`, results to `out`.
inline int run(const RunConfig & config, std::ostream & out, std::ostream & err)
{
    try {
        detail::check_config(config);
        detail::Context ctx(config, out);
        switch (config.command) {
        case Command::Moments: return detail::cmd_moments(ctx);
        case Command::Apply: return detail::cmd_apply(ctx);
        case Command::Norm: return detail::cmd_norm(ctx);
        case Command::Opnorm: return detail::cmd_opnorm(ctx);
        case Command::Compact: return detail::cmd_compact(ctx);
        case Command::Schatten: return detail::cmd_schatten(ctx);
        case Command::Spectrum: return detail::cmd_spectrum(ctx);
        case Command::Report: return detail::cmd_report(ctx);
        case Command::Verify: return detail::cmd_verify(ctx);
        }
    } catch (const ParseError & e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    } catch (const detail::IllDefined & e) {
        err << "error: " << e.what() << '\n';
        return ill_defined;
    } catch (const VerificationError & e) {
        err << "error: " << e.what() << '\n';
        return verify_failed;
    } catch (const QuadratureError & e) {
        err << "error: " << e.what() << " (estimate " << shortest(e.estimate()) << ", error bound "
            << shortest(e.error_bound()) << ", " << e.evaluations() << " evaluations)\n";
        return budget_exceeded;
    } catch (const Error & e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }
    return invalid_input;
}

} // namespace fock_hausdorff::cli
