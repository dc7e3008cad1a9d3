#pragma once

//
// OperatorReport <-> JSON, moment/spectrum CSV.
//
// Non-finite reals are written as the strings "inf" / "-inf" since JSON has
// no infinity. The layout is described by docs/report.schema.json.
//

#include <cmath>
#include <cstddef>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "error.hpp"
#include "format.hpp"
#include "hausdorff.hpp"
#include "measure_io.hpp"

namespace fock_hausdorff {

using ordered_json = nlohmann::ordered_json;

inline ordered_json real_to_json(double x)
{
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return x;
}

inline double real_from_json(const nlohmann::json & j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw ParseError("", "expected a number or \"inf\"");
    }
    return j.get<double>();
}

inline const char * to_string(Compactness c)
{
    switch (c) {
    case Compactness::Yes: return "yes";
    case Compactness::No: return "no";
    default: return "inconclusive";
    }
}

inline const char * to_string(SchattenVerdict v)
{
    switch (v) {
    case SchattenVerdict::InClass: return "in_class";
    case SchattenVerdict::NotInClass: return "not_in_class";
    default: return "inconclusive";
    }
}

inline const char * to_string(Provenance p)
{
    return p == Provenance::ClosedForm ? "closed_form" : "quadrature";
}

inline ordered_json schatten_to_json(const SchattenReport & s)
{
    ordered_json j;
    j["space"] = "F2_alpha";
    j["p"]     = s.p;
    // Checkpoints n = 0, 1, 3, 7, ... and N keep long runs readable.
    ordered_json sums = ordered_json::array();
    const std::size_t N = s.partial_sums.empty() ? 0 : s.partial_sums.size() - 1;
    for (std::size_t n = 0; n < s.partial_sums.size(); n = 2 * n + 1)
        sums.push_back({{"n", n}, {"sum", s.partial_sums[n]}});
    if (!s.partial_sums.empty() && (sums.empty() || sums.back()["n"].get<std::size_t>() != N))
        sums.push_back({{"n", N}, {"sum", s.partial_sums[N]}});
    j["partial_sums"] = sums;
    j["partial_sum"]  = s.partial_sum();
    j["tail_bound"]   = real_to_json(s.tail_bound);
    j["verdict"]      = to_string(s.verdict);
    j["reason"]       = s.reason;
    return j;
}

inline ordered_json report_to_json(const MeasureSpec & m, const OperatorReport & r)
{
    ordered_json j;
    j["measure"] = measure_to_json(m);
    j["fock"]    = {{"alpha", r.params.alpha}, {"p", real_to_json(r.params.p)}};

    ordered_json wd;
    wd["ok"]                = r.well_defined.ok;
    wd["mu0"]               = real_to_json(r.well_defined.mu0);
    wd["total_mass_finite"] = r.well_defined.total_mass_finite;
    wd["reason"]            = r.well_defined.reason;
    wd["notes"]             = r.well_defined.notes;
    j["well_defined"]       = wd;
    if (!r.well_defined.ok)
        return j;

    j["N"]             = r.moments.N();
    j["operator_norm"] = r.operator_norm;

    ordered_json c;
    c["verdict"]    = to_string(r.compact.verdict);
    c["tail_limit"] = r.compact.tail_limit;
    c["reason"]     = r.compact.reason;
    if (r.compact_caveat)
        c["caveat"] = *r.compact_caveat;
    j["compact"] = c;

    ordered_json tr = ordered_json::array();
    for (const auto & e : r.truncation_errors)
        tr.push_back({{"k", e.k}, {"error", e.error}});
    j["truncation_errors"] = tr;

    j["schatten"] = schatten_to_json(r.schatten);

    j["spectrum_prefix"] = r.spectrum_prefix;

    ordered_json mu = ordered_json::array();
    for (std::size_t n = 0; n < r.moments.size(); ++n)
        mu.push_back({{"n", n},
                      {"mu_n", r.moments.values[n]},
                      {"error_bound", r.moments.error_bounds[n]},
                      {"provenance", to_string(r.moments.provenance[n])}});
    j["moments"] = mu;
    return j;
}

//
// Reads back what report_to_json writes. Partial sums come back as the
// checkpoints only.
//
struct ParsedReport
{
    MeasureSpec    measure;
    OperatorReport report;
    std::vector<std::pair<std::size_t, double>> schatten_checkpoints;
};

inline ParsedReport report_from_json(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error & e) {
        throw ParseError("byte " + std::to_string(e.byte), "malformed report JSON");
    }
    try {
        ParsedReport   out{parse_measure(j.at("measure").dump()), {}, {}};
        OperatorReport & r = out.report;
        r.params = {j.at("fock").at("alpha").get<double>(), real_from_json(j.at("fock").at("p"))};

        const auto & wd              = j.at("well_defined");
        r.well_defined.ok            = wd.at("ok").get<bool>();
        r.well_defined.mu0           = real_from_json(wd.at("mu0"));
        r.well_defined.total_mass_finite = wd.at("total_mass_finite").get<bool>();
        r.well_defined.reason        = wd.at("reason").get<std::string>();
        r.well_defined.notes         = wd.at("notes").get<std::vector<std::string>>();
        if (!r.well_defined.ok)
            return out;

        r.operator_norm = j.at("operator_norm").get<double>();

        const auto & c     = j.at("compact");
        const auto   cv    = c.at("verdict").get<std::string>();
        r.compact.verdict  = cv == "yes" ? Compactness::Yes : cv == "no" ? Compactness::No : Compactness::Inconclusive;
        r.compact.tail_limit = c.at("tail_limit").get<double>();
        r.compact.reason   = c.at("reason").get<std::string>();
        if (c.contains("caveat"))
            r.compact_caveat = c.at("caveat").get<std::string>();

        for (const auto & e : j.at("truncation_errors"))
            r.truncation_errors.push_back({e.at("k").get<std::size_t>(), e.at("error").get<double>()});

        const auto & s   = j.at("schatten");
        r.schatten.p     = s.at("p").get<double>();
        r.schatten.tail_bound = real_from_json(s.at("tail_bound"));
        const auto sv    = s.at("verdict").get<std::string>();
        r.schatten.verdict = sv == "in_class"       ? SchattenVerdict::InClass
                           : sv == "not_in_class" ? SchattenVerdict::NotInClass
                                                  : SchattenVerdict::Inconclusive;
        r.schatten.reason = s.at("reason").get<std::string>();
        for (const auto & e : s.at("partial_sums"))
            out.schatten_checkpoints.emplace_back(e.at("n").get<std::size_t>(), e.at("sum").get<double>());

        r.spectrum_prefix = j.at("spectrum_prefix").get<std::vector<double>>();
        for (const auto & e : j.at("moments")) {
            r.moments.values.push_back(e.at("mu_n").get<double>());
            r.moments.error_bounds.push_back(e.at("error_bound").get<double>());
            r.moments.provenance.push_back(e.at("provenance").get<std::string>() == "closed_form"
                                               ? Provenance::ClosedForm
                                               : Provenance::Quadrature);
        }
        if (r.moments.N() != j.at("N").get<std::size_t>())
            throw ParseError("/N", "moment count does not match N");
        return out;
    } catch (const nlohmann::json::exception & e) {
        throw ParseError("", std::string("report does not match the schema: ") + e.what());
    }
}

// CSV with header n,mu_n and 17 significant digits.
inline void write_sequence_csv(std::ostream & os, std::span<const double> values)
{
    os << "n,mu_n\n";
    for (std::size_t n = 0; n < values.size(); ++n)
        os << n << ',' << digits17(values[n]) << '\n';
}

} // namespace fock_hausdorff
