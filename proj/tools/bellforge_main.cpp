// bellforge: construct, verify and evaluate full-correlation Bell
// inequalities. Every subcommand prints a JSON payload on stdout;
// diagnostics go to stderr. Exit codes: 0 ok, 1 error, 2 guard refusal.

#include "bellforge/acceptance.hpp"
#include "bellforge/catalog.hpp"
#include "bellforge/convert.hpp"
#include "bellforge/equivalence.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/json_io.hpp"
#include "bellforge/lift.hpp"
#include "bellforge/polytope.hpp"
#include "bellforge/quantum.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using bellforge::EnumerationCaps;
using bellforge::FullCorrelationInequality;
using bellforge::GeneralInequality;
using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bellforge::InputError("cannot open file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

FullCorrelationInequality load_full(const std::string& path) {
    const auto parsed = bellforge::parse_inequality(read_file(path));
    if (parsed.is_full()) return parsed.full();
    // Accept general documents that are secretly full-correlation.
    return parsed.general().to_full_correlation();
}

GeneralInequality load_general(const std::string& path) {
    const auto parsed = bellforge::parse_inequality(read_file(path));
    if (parsed.is_full()) return GeneralInequality::from_full_correlation(parsed.full());
    return parsed.general();
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

bellforge::Scenario parse_scenario(const std::string& text) {
    std::vector<int> settings;
    for (const auto& part : split(text, ',')) settings.push_back(std::stoi(part));
    return bellforge::Scenario(settings);
}

void emit(const json& payload) { std::cout << payload.dump(2) << "\n"; }
void emit_raw(const std::string& serialized) { std::cout << serialized; }

json catalog_entry_json(const bellforge::CatalogEntry& entry) {
    json doc;
    doc["name"] = entry.name;
    doc["provenance"] = entry.provenance;
    doc["inequality"] = json::parse(bellforge::serialize(entry.inequality, entry.name));
    json expected;
    expected["lr_bound"] = bellforge::to_string(entry.expected.lr_bound);
    expected["algebraic_bound"] = bellforge::to_string(entry.expected.algebraic_bound);
    expected["violation_factor"] = bellforge::round_real(entry.expected.violation_factor);
    expected["v_crit"] = bellforge::round_real(entry.expected.v_crit);
    expected["is_facet"] = entry.expected.is_facet;
    doc["expected"] = std::move(expected);
    doc["has_recipe"] = entry.recipe.has_value();
    return doc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"full-correlation Bell inequalities: polytope checks, lifting, GHZ violations"};
    app.require_subcommand(1);

    const EnumerationCaps caps = EnumerationCaps::from_env();

    std::string input_path, second_path, scenario_text, mode, flip_text, fix_text, inputs_text;
    std::string catalog_action, catalog_name;
    int party = 1;
    int restarts = 32;
    std::uint64_t seed = 0;
    double quantum_value = 0;
    bool verify = true;

    auto* bound_cmd = app.add_subcommand("bound", "LR and algebraic bounds of an inequality");
    bound_cmd->add_option("ineq", input_path, "inequality JSON file")->required();

    auto* tight_cmd = app.add_subcommand("tight", "face/facet test with exact rank certificate");
    tight_cmd->add_option("ineq", input_path, "inequality JSON file")->required();

    auto* facets_cmd = app.add_subcommand("facets", "brute-force facet enumeration (tiny scenarios)");
    facets_cmd->add_option("--scenario", scenario_text, "settings per party, e.g. 2,2")->required();

    auto* extend_cmd = app.add_subcommand("extend", "lift faces to one more party");
    extend_cmd->add_option("--mode", mode, "chsh | general | four-term")->required();
    extend_cmd->add_option("--inputs", inputs_text, "comma-separated inequality files")->required();
    extend_cmd->add_option("--flip", flip_text, "four-term mode: two 1-based term indices i,j");
    extend_cmd->add_flag("--verify,!--no-verify", verify,
                         "run the all-vertex bound and rank check (default on)");

    auto* decompose_cmd = app.add_subcommand("decompose", "factor out one party's settings");
    decompose_cmd->add_option("ineq", input_path, "inequality JSON file")->required();
    decompose_cmd->add_option("--party", party, "1-based party index")->required();

    auto* canonical_cmd = app.add_subcommand("canonical", "orbit-minimal representative");
    canonical_cmd->add_option("ineq", input_path, "inequality JSON file")->required();

    auto* equivalent_cmd = app.add_subcommand("equivalent", "same orbit under the equivalence group?");
    equivalent_cmd->add_option("a", input_path, "first inequality")->required();
    equivalent_cmd->add_option("b", second_path, "second inequality")->required();

    auto* dehom_cmd = app.add_subcommand("dehomogenize", "substitute +1 for chosen settings");
    dehom_cmd->add_option("ineq", input_path, "full-correlation inequality JSON file")->required();
    dehom_cmd->add_option("--fix", fix_text, "1-based party=setting list, e.g. 2=2,3=1")->required();

    auto* hom_cmd = app.add_subcommand("homogenize", "CH-type to CHSH-type via auxiliary settings");
    hom_cmd->add_option("gen", input_path, "general inequality JSON file")->required();

    auto* optimize_cmd = app.add_subcommand("optimize", "maximize the GHZ violation");
    optimize_cmd->add_option("ineq", input_path, "inequality JSON file")->required();
    optimize_cmd->add_option("--restarts", restarts, "multi-start count (default 32)");
    optimize_cmd->add_option("--seed", seed, "RNG seed (default 0)");

    auto* vcrit_cmd = app.add_subcommand("vcrit", "critical visibility for a quantum value");
    vcrit_cmd->add_option("ineq", input_path, "inequality JSON file")->required();
    vcrit_cmd->add_option("--quantum-value", quantum_value, "observed quantum value")->required();

    auto* catalog_cmd = app.add_subcommand("catalog", "named inequalities from the construction");
    catalog_cmd->add_option("action", catalog_action, "list | get | check")->required();
    catalog_cmd->add_option("name", catalog_name, "entry name");

    auto* reproduce_cmd =
        app.add_subcommand("reproduce-paper", "run the full acceptance suite, one line per claim");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bound_cmd->parsed()) {
            const auto ineq = load_full(input_path);
            json payload;
            payload["lr_bound"] = bellforge::to_string(bellforge::lr_bound(ineq, caps));
            payload["algebraic_bound"] = bellforge::to_string(ineq.algebraic_bound());
            emit(payload);
        } else if (tight_cmd->parsed()) {
            emit_raw(bellforge::serialize(bellforge::tightness(load_full(input_path), caps)));
        } else if (facets_cmd->parsed()) {
            emit_raw(bellforge::serialize(bellforge::enumerate_facets(parse_scenario(scenario_text), {}, caps)));
        } else if (extend_cmd->parsed()) {
            bellforge::LiftOptions options;
            options.verify = verify;
            options.caps = caps;
            std::vector<FullCorrelationInequality> inputs;
            for (const auto& path : split(inputs_text, ',')) inputs.push_back(load_full(path));
            bellforge::LiftResult result = [&] {
                if (mode == "chsh") {
                    if (inputs.size() != 2)
                        throw bellforge::InputError("extend --mode chsh needs exactly two inputs");
                    return bellforge::chsh_extend(inputs[0], inputs[1], options);
                }
                if (mode == "general") return bellforge::compose_lift(inputs, options);
                if (mode == "four-term") {
                    if (inputs.size() != 1)
                        throw bellforge::InputError("extend --mode four-term needs exactly one input");
                    const auto indices = split(flip_text, ',');
                    if (indices.size() != 2)
                        throw bellforge::InputError("extend --mode four-term needs --flip i,j");
                    std::vector<bellforge::SettingTuple> keys;
                    for (const auto& [tuple, coeff] : inputs[0].terms()) {
                        (void)coeff;
                        keys.push_back(tuple);
                    }
                    const std::size_t i = std::stoul(indices[0]), j = std::stoul(indices[1]);
                    if (i < 1 || j < 1 || i > keys.size() || j > keys.size())
                        throw bellforge::InputError("--flip indices out of range");
                    return bellforge::four_term_extend(inputs[0], {keys[i - 1], keys[j - 1]}, options);
                }
                throw bellforge::InputError("unknown extend mode '" + mode + "'");
            }();
            json payload;
            payload["inequality"] = json::parse(bellforge::serialize(result.inequality));
            payload["verified"] = result.verified;
            if (result.report) payload["report"] = json::parse(bellforge::serialize(*result.report));
            emit(payload);
        } else if (decompose_cmd->parsed()) {
            emit_raw(bellforge::serialize(bellforge::decompose(load_full(input_path), party - 1)));
        } else if (canonical_cmd->parsed()) {
            const auto canonical = bellforge::canonical_form(load_full(input_path));
            emit_raw(bellforge::serialize(canonical, std::nullopt, /*canonical_marker=*/true));
        } else if (equivalent_cmd->parsed()) {
            json payload;
            payload["equivalent"] = bellforge::equivalent(load_full(input_path), load_full(second_path));
            emit(payload);
        } else if (dehom_cmd->parsed()) {
            std::map<int, int> fix;
            for (const auto& part : split(fix_text, ',')) {
                const auto kv = split(part, '=');
                if (kv.size() != 2) throw bellforge::InputError("--fix expects party=setting pairs");
                fix[std::stoi(kv[0]) - 1] = std::stoi(kv[1]) - 1;
            }
            emit_raw(bellforge::serialize(bellforge::dehomogenize(load_full(input_path), fix)));
        } else if (hom_cmd->parsed()) {
            emit_raw(bellforge::serialize(bellforge::homogenize(load_general(input_path))));
        } else if (optimize_cmd->parsed()) {
            bellforge::OptimizeOptions options;
            options.restarts = restarts;
            options.seed = seed;
            emit_raw(bellforge::serialize(
                bellforge::maximize_ghz_violation(load_full(input_path), options, {}, caps)));
        } else if (vcrit_cmd->parsed()) {
            const auto result = bellforge::critical_visibility(load_full(input_path), quantum_value, 0.0, caps);
            json payload;
            payload["v_crit"] = bellforge::round_real(result.v_crit);
            payload["violation"] = result.violation;
            if (!result.violation) std::cerr << "no violation: quantum value does not exceed the LR bound\n";
            emit(payload);
        } else if (catalog_cmd->parsed()) {
            if (catalog_action == "list") {
                json payload = json::array();
                for (const auto& name : bellforge::catalog_all_names())
                    payload.push_back(catalog_entry_json(bellforge::catalog_get(name)));
                emit(payload);
            } else if (catalog_action == "get") {
                if (catalog_name.empty()) throw bellforge::InputError("catalog get needs a name");
                emit(catalog_entry_json(bellforge::catalog_get(catalog_name)));
            } else if (catalog_action == "check") {
                if (catalog_name.empty()) throw bellforge::InputError("catalog check needs a name");
                const auto result = bellforge::catalog_check(catalog_name, {}, caps);
                json payload;
                payload["name"] = result.name;
                json fields = json::array();
                for (const auto& field : result.fields) {
                    json f;
                    f["field"] = field.field;
                    f["expected"] = field.expected;
                    f["actual"] = field.actual;
                    f["pass"] = field.pass;
                    fields.push_back(std::move(f));
                }
                payload["fields"] = std::move(fields);
                payload["pass"] = result.pass;
                emit(payload);
                if (!result.pass) return 1;
            } else {
                throw bellforge::InputError("catalog action must be list, get or check");
            }
        } else if (reproduce_cmd->parsed()) {
            const auto results = bellforge::run_acceptance(caps);
            json payload = json::array();
            bool all = true;
            for (const auto& r : results) {
                std::cerr << (r.passed ? "PASS" : "FAIL") << "  " << r.id << "  " << r.key << "  ("
                          << r.description << ")\n";
                for (const auto& line : r.details) std::cerr << "      " << line << "\n";
                json item;
                item["id"] = r.id;
                item["key"] = r.key;
                item["description"] = r.description;
                item["pass"] = r.passed;
                item["details"] = r.details;
                item["seconds"] = bellforge::round_real(r.seconds);
                payload.push_back(std::move(item));
                all = all && r.passed;
            }
            emit(payload);
            if (!all) return 1;
        }
    } catch (const bellforge::CapExceeded& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const bellforge::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
