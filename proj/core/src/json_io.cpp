#include "bellforge/json_io.hpp"

#include "bellforge/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>

namespace bellforge {

using json = nlohmann::ordered_json;

namespace {

json tuple_to_json_1based(const SettingTuple& tuple, bool general) {
    json arr = json::array();
    for (int i : tuple) {
        if (general && i == kAbsent)
            arr.push_back(0);
        else
            arr.push_back(i + 1);
    }
    return arr;
}

json terms_to_json(const TermMap& terms, bool general) {
    json arr = json::array();
    for (const auto& [tuple, coeff] : terms) {
        json term;
        term["settings"] = tuple_to_json_1based(tuple, general);
        term["coeff"] = to_string(coeff);
        arr.push_back(std::move(term));
    }
    return arr;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

const json& require(const json& doc, const char* field, const std::string& where) {
    auto it = doc.find(field);
    if (it == doc.end()) throw InputError("missing field '" + where + field + "'");
    return *it;
}

Rational field_rational(const json& value, const std::string& where) {
    if (!value.is_string()) throw InputError("field '" + where + "' must be a \"p/q\" string");
    try {
        return parse_rational(value.get<std::string>());
    } catch (const InputError& e) {
        throw InputError("field '" + where + "': " + e.what());
    }
}

} // namespace

const FullCorrelationInequality& ParsedInequality::full() const {
    if (!is_full()) throw InputError("expected a full-correlation inequality document");
    return std::get<FullCorrelationInequality>(value);
}

const GeneralInequality& ParsedInequality::general() const {
    if (is_full()) throw InputError("expected a general (CH-type) inequality document");
    return std::get<GeneralInequality>(value);
}

std::string serialize(const FullCorrelationInequality& ineq, const std::optional<std::string>& name,
                      bool canonical_marker) {
    json doc;
    doc["kind"] = "full";
    doc["settings"] = ineq.scenario().settings_per_party();
    doc["terms"] = terms_to_json(ineq.terms(), /*general=*/false);
    doc["bound"] = to_string(ineq.bound());
    if (name) doc["name"] = *name;
    if (canonical_marker) doc["canonical"] = true;
    return dump(doc);
}

std::string serialize(const GeneralInequality& ineq, const std::optional<std::string>& name) {
    json doc;
    doc["kind"] = "general";
    doc["settings"] = ineq.scenario().settings_per_party();
    doc["terms"] = terms_to_json(ineq.terms(), /*general=*/true);
    doc["constant"] = to_string(ineq.constant());
    doc["bound"] = to_string(ineq.bound());
    if (name) doc["name"] = *name;
    return dump(doc);
}

ParsedInequality parse_inequality(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("inequality document must be a JSON object");

    const json& kind = require(doc, "kind", "");
    if (!kind.is_string() || (kind != "full" && kind != "general"))
        throw InputError("field 'kind' must be \"full\" or \"general\"");
    const bool general = kind == "general";

    const json& settings = require(doc, "settings", "");
    if (!settings.is_array() || settings.empty())
        throw InputError("field 'settings' must be a non-empty array");
    std::vector<int> per_party;
    for (std::size_t p = 0; p < settings.size(); ++p) {
        if (!settings[p].is_number_integer() || settings[p].get<long long>() < 1)
            throw InputError("field 'settings[" + std::to_string(p) + "]' must be a positive integer");
        per_party.push_back(settings[p].get<int>());
    }
    Scenario scenario(per_party);

    const json& terms = require(doc, "terms", "");
    if (!terms.is_array()) throw InputError("field 'terms' must be an array");
    TermMap term_map;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string where = "terms[" + std::to_string(t) + "].";
        const json& term = terms[t];
        if (!term.is_object()) throw InputError("field 'terms[" + std::to_string(t) + "]' must be an object");
        const json& tuple = require(term, "settings", where);
        if (!tuple.is_array() || tuple.size() != static_cast<std::size_t>(scenario.parties()))
            throw InputError("field '" + where + "settings' must list one setting per party");
        SettingTuple key(tuple.size());
        for (std::size_t p = 0; p < tuple.size(); ++p) {
            if (!tuple[p].is_number_integer())
                throw InputError("field '" + where + "settings[" + std::to_string(p) + "]' must be an integer");
            const long long raw = tuple[p].get<long long>();
            const long long lo = general ? 0 : 1;
            if (raw < lo || raw > scenario.settings(static_cast<int>(p)))
                throw InputError("field '" + where + "settings[" + std::to_string(p) +
                                 "]' is out of range for the scenario");
            key[p] = static_cast<int>(raw) - 1; // 0 becomes kAbsent
        }
        Rational coeff = field_rational(require(term, "coeff", where), where + "coeff");
        if (!term_map.emplace(std::move(key), std::move(coeff)).second)
            throw InputError("field '" + where + "settings' duplicates an earlier term");
    }

    Rational bound(1);
    if (auto it = doc.find("bound"); it != doc.end()) bound = field_rational(*it, "bound");

    std::optional<std::string> name;
    if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) throw InputError("field 'name' must be a string");
        name = it->get<std::string>();
    }

    if (general) {
        Rational constant(0);
        if (auto it = doc.find("constant"); it != doc.end()) constant = field_rational(*it, "constant");
        return ParsedInequality{GeneralInequality(std::move(scenario), std::move(term_map),
                                                  std::move(constant), std::move(bound)),
                                name};
    }
    if (doc.find("constant") != doc.end())
        throw InputError("field 'constant' is only valid for kind \"general\"");
    return ParsedInequality{
        FullCorrelationInequality(std::move(scenario), std::move(term_map), std::move(bound)), name};
}

double round_real(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return std::strtod(buffer, nullptr);
}

std::string serialize(const TightnessReport& report) {
    json doc;
    doc["lr_max"] = to_string(report.lr_max);
    doc["is_face"] = report.is_face;
    doc["saturating_count"] = report.saturating_count;
    doc["rank"] = report.rank;
    doc["dimension"] = report.dimension;
    doc["is_facet"] = report.is_facet;
    return dump(doc);
}

std::string serialize(const FacetList& list) {
    json doc;
    doc["settings"] = list.scenario.settings_per_party();
    json facets = json::array();
    for (const auto& facet : list.facets) facets.push_back(json::parse(serialize(facet)));
    doc["facets"] = std::move(facets);
    doc["orbit_classes"] = list.orbit_classes;
    return dump(doc);
}

std::string serialize(const QuantumReport& report) {
    json doc;
    doc["quantum_value"] = round_real(report.quantum_value);
    doc["violation_factor"] = round_real(report.violation_factor);
    doc["critical_visibility"] = round_real(report.critical_visibility);
    doc["max_eigenvalue"] = round_real(report.max_eigenvalue);
    json angles = json::array();
    for (const auto& party : report.settings.angles) {
        json row = json::array();
        for (double phi : party) row.push_back(round_real(phi));
        angles.push_back(std::move(row));
    }
    doc["settings"] = std::move(angles);
    doc["state_tag"] = report.state_tag;
    doc["seed"] = report.seed;
    doc["restarts"] = report.restarts;
    doc["converged"] = report.converged;
    doc["lr_bound"] = round_real(report.lr_bound_value);
    return dump(doc);
}

std::string serialize(const PartyDecomposition& decomposition) {
    json doc;
    doc["party"] = decomposition.party + 1;
    doc["bound"] = to_string(decomposition.bound);
    json components = json::array();
    for (const auto& component : decomposition.components)
        components.push_back(json::parse(serialize(component)));
    doc["components"] = std::move(components);
    return dump(doc);
}

} // namespace bellforge
