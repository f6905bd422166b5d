#pragma once

#include "bellforge/lift.hpp"
#include "bellforge/quantum.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bellforge {

// Published properties an entry is checked against.
struct ExpectedProperties {
    Rational lr_bound;
    Rational algebraic_bound;
    double violation_factor = 0;
    double v_crit = 0;
    bool is_facet = false;
};

// Construction recipes. A chain recipe starts from the single-party facets
// a_1, a_2 (whose two-setting extension is the CHSH inequality) and applies
// four_term_extend once per recorded flip pair, appending one party each
// step. A compose recipe lifts a list of single-party trivial faces in one
// step.
struct ChainRecipe {
    std::vector<std::pair<SettingTuple, SettingTuple>> flips; // 0-based term keys
};
struct ComposeRecipe {
    std::vector<std::vector<Rational>> face_weights;
};
using Recipe = std::variant<ChainRecipe, ComposeRecipe>;

struct CatalogEntry {
    std::string name;
    std::string provenance; // "native" (built by the lift construction) or "external-standard"
    FullCorrelationInequality inequality;
    ExpectedProperties expected;
    std::optional<Recipe> recipe;
};

// The named inequalities. catalog_names() lists the eight construction
// entries; catalog_all_names() adds the mabk8 contrast entry.
const std::vector<std::string>& catalog_names();
std::vector<std::string> catalog_all_names();
CatalogEntry catalog_get(const std::string& name);

FullCorrelationInequality run_recipe(const Recipe& recipe);

// The n-party MABK inequality (normalized to LR bound 1) by the standard
// recursive doubling; 2^n terms for even n.
FullCorrelationInequality mabk(int parties);

// Searches the C(4,2)=6 flip pairs of `from` for one whose four_term_extend
// is equivalent to `target`. Used once per chain step to record the pair.
std::optional<std::pair<SettingTuple, SettingTuple>> find_flip_pair(
    const FullCorrelationInequality& from, const FullCorrelationInequality& target);

struct CatalogCheckField {
    std::string field;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct CatalogCheckResult {
    std::string name;
    std::vector<CatalogCheckField> fields;
    bool pass = false;
};

struct CatalogCheckOptions {
    bool run_quantum = true;
    bool run_recipe = true;
    OptimizeOptions optimize;
    double tolerance = 1e-6;
};

CatalogCheckResult catalog_check(const std::string& name, const CatalogCheckOptions& options = {},
                                 EnumerationCaps caps = EnumerationCaps::from_env());

} // namespace bellforge
