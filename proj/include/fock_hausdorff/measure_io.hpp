#pragma once

//
// Measure-spec documents (JSON).
//
//   {"kind":"atomic",  "atoms":[{"t":2.0,"mass":1.0}, ...]}
//   {"kind":"density", "family":"power",    "s":2.0,      "weight":1.0}
//   {"kind":"density", "family":"expshift", "lambda":1.0}
//   {"kind":"density", "family":"tabulated","samples":[[1.0,0.5],[2.0,0.25]],
//                      "tail_decay":2.0, "interpolation":"linear"}
//   {"kind":"mixture", "atoms":[...], "density":{"family":"power","s":2.0}}
//
// "weight" is optional (default 1). Unknown keys are rejected.
//

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

#include "error.hpp"
#include "measure.hpp"

namespace fock_hausdorff {

namespace detail {

using json = nlohmann::json;

inline std::string line_col(std::string_view text, std::size_t byte)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_document(std::string_view text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error & e) {
        const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
        throw ParseError(line_col(text, at), "malformed JSON");
    }
}

inline void only_keys(const json & j, const std::string & path, std::set<std::string> allowed)
{
    if (!j.is_object())
        throw ParseError(path.empty() ? "/" : path, "expected an object");
    for (const auto & [k, v] : j.items())
        if (!allowed.contains(k))
            throw ParseError(path + "/" + k, "unknown field");
}

inline const json & field(const json & j, const std::string & path, const char * key)
{
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(path + "/" + key, "missing field");
    return *it;
}

inline double number(const json & j, const std::string & path)
{
    if (!j.is_number())
        throw ParseError(path, "expected a number");
    return j.get<double>();
}

inline double number_field(const json & j, const std::string & path, const char * key)
{
    return number(field(j, path, key), path + "/" + key);
}

inline std::string string_field(const json & j, const std::string & path, const char * key)
{
    const json & v = field(j, path, key);
    if (!v.is_string())
        throw ParseError(path + "/" + key, "expected a string");
    return v.get<std::string>();
}

inline std::vector<Atom> parse_atoms(const json & j, const std::string & path)
{
    if (!j.is_array())
        throw ParseError(path, "expected an array of atoms");
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string p = path + "/" + std::to_string(i);
        only_keys(j[i], p, {"t", "mass"});
        atoms.push_back({number_field(j[i], p, "t"), number_field(j[i], p, "mass")});
    }
    return atoms;
}

// `j` holds the density keys; `path` locates it for messages.
inline DensityFamily parse_density(const json & j, const std::string & path,
                                   std::set<std::string> extra_keys)
{
    const std::string family = string_field(j, path, "family");
    DensityFamily     d;

    auto allowed = [&](std::initializer_list<const char *> keys) {
        extra_keys.insert("family");
        extra_keys.insert("weight");
        for (const char * k : keys)
            extra_keys.insert(k);
        only_keys(j, path, extra_keys);
    };

    if (family == "power") {
        allowed({"s"});
        d.family = PowerDensity{number_field(j, path, "s")};
    } else if (family == "expshift") {
        allowed({"lambda"});
        d.family = ExpShiftDensity{number_field(j, path, "lambda")};
    } else if (family == "tabulated") {
        allowed({"samples", "tail_decay", "interpolation"});
        TabulatedDensity tab;
        const json &     samples = field(j, path, "samples");
        if (!samples.is_array())
            throw ParseError(path + "/samples", "expected an array of [t, phi] pairs");
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const std::string p = path + "/samples/" + std::to_string(i);
            if (!samples[i].is_array() || samples[i].size() != 2)
                throw ParseError(p, "expected a [t, phi] pair");
            tab.t.push_back(number(samples[i][0], p + "/0"));
            tab.phi.push_back(number(samples[i][1], p + "/1"));
        }
        // Tail behaviour is a hypothesis, never inferred from the samples.
        tab.tail_decay = number_field(j, path, "tail_decay");
        if (j.contains("interpolation")) {
            const std::string rule = string_field(j, path, "interpolation");
            if (rule == "linear")
                tab.interpolation = Interpolation::Linear;
            else if (rule == "step")
                tab.interpolation = Interpolation::Step;
            else
                throw ParseError(path + "/interpolation", "expected \"linear\" or \"step\"");
        }
        d.family = std::move(tab);
    } else {
        throw ParseError(path + "/family", "unknown density family \"" + family + "\"");
    }
    if (j.contains("weight"))
        d.weight = number_field(j, path, "weight");
    return d;
}

} // namespace detail

//
// Parse a measure-spec document. Structural and domain checks only; μ_0 < ∞
// is left to validate().
//
inline MeasureSpec parse_measure(std::string_view text)
{
    using detail::json;
    const json doc = detail::parse_document(text);
    if (!doc.is_object())
        throw ParseError("/", "expected a JSON object");

    const std::string kind = detail::string_field(doc, "", "kind");
    if (kind == "atomic") {
        detail::only_keys(doc, "", {"kind", "atoms"});
        return MeasureSpec::atomic(detail::parse_atoms(detail::field(doc, "", "atoms"), "/atoms"));
    }
    if (kind == "density")
        return MeasureSpec::density(detail::parse_density(doc, "", {"kind"}));
    if (kind == "mixture") {
        detail::only_keys(doc, "", {"kind", "atoms", "density"});
        auto atoms = detail::parse_atoms(detail::field(doc, "", "atoms"), "/atoms");
        auto d     = detail::parse_density(detail::field(doc, "", "density"), "/density", {});
        return MeasureSpec::mixture(std::move(atoms), std::move(d));
    }
    throw ParseError("/kind", "unknown kind \"" + kind + "\"");
}

namespace detail {

template <typename Json>
Json density_to_json(const DensityFamily & d)
{
    Json j;
    std::visit(
        [&j](const auto & f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerDensity>) {
                j["family"] = "power";
                j["s"]      = f.s;
            } else if constexpr (std::is_same_v<T, ExpShiftDensity>) {
                j["family"] = "expshift";
                j["lambda"] = f.lambda;
            } else {
                j["family"]  = "tabulated";
                Json samples = Json::array();
                for (std::size_t i = 0; i < f.t.size(); ++i)
                    samples.push_back(Json::array({f.t[i], f.phi[i]}));
                j["samples"]       = samples;
                j["tail_decay"]    = f.tail_decay;
                j["interpolation"] = f.interpolation == Interpolation::Linear ? "linear" : "step";
            }
        },
        d.family);
    if (d.weight != 1.0)
        j["weight"] = d.weight;
    return j;
}

} // namespace detail

// Inverse of parse_measure.
template <typename Json = nlohmann::ordered_json>
Json measure_to_json(const MeasureSpec & m)
{
    Json j;
    auto atoms = [&m] {
        Json a = Json::array();
        for (const auto & at : m.atoms())
            a.push_back(Json{{"t", at.t}, {"mass", at.mass}});
        return a;
    };
    switch (m.kind()) {
    case MeasureKind::Atomic:
        j["kind"]  = "atomic";
        j["atoms"] = atoms();
        break;
    case MeasureKind::Density: {
        j["kind"]    = "density";
        const Json d = detail::density_to_json<Json>(*m.density());
        for (auto it = d.begin(); it != d.end(); ++it)
            j[it.key()] = it.value();
        break;
    }
    case MeasureKind::Mixture:
        j["kind"]    = "mixture";
        j["atoms"]   = atoms();
        j["density"] = detail::density_to_json<Json>(*m.density());
        break;
    }
    return j;
}

} // namespace fock_hausdorff
