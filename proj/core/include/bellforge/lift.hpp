#pragma once

#include "bellforge/polytope.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace bellforge {

// One party's settings factored out of a full-correlation inequality:
// I = c_1 f_1 + ... + c_N f_N with the f_k over the scenario without that
// party. Recombining the components reproduces the inequality exactly.
struct PartyDecomposition {
    Scenario scenario;  // original scenario
    int party = 0;      // removed party (0-based)
    Rational bound;
    std::vector<FullCorrelationInequality> components; // f_1..f_N, possibly zero
};

PartyDecomposition decompose(const FullCorrelationInequality& ineq, int party);

// Sum c_k f_k with the party's variables reinserted at their position.
FullCorrelationInequality recompose(const PartyDecomposition& d);

// The N alternating-sign combinations I(c_1^) = f_1+...+f_N and
// I(c_k^) = f_1 - ... -f_k ... +f_N for k >= 2.
std::vector<FullCorrelationInequality> structure_values(const PartyDecomposition& d);

// Rebuilds the inequality through the structure identity
// I = ((-(N-3)c_1 + c_2 + ... + c_N)/2) S_1 + sum_{k>=2} ((c_1-c_k)/2) S_k;
// must agree with recompose() exactly.
FullCorrelationInequality recompose_via_structure(const PartyDecomposition& d);

struct LiftOptions {
    bool verify = true;
    EnumerationCaps caps = EnumerationCaps::from_env();
};

struct LiftResult {
    FullCorrelationInequality inequality;
    bool verified = false;                  // false above the enumeration cap
    std::optional<TightnessReport> report;  // present when verified
};

// The lifting construction: N faces B_1..B_N of a common polytope combine
// into an inequality over the scenario extended by one party with N
// settings (appended last). When the all-vertex bound holds the result is a
// face, and a facet whenever all inputs are facets; with verify=true both
// are certified by the rank test rather than assumed.
LiftResult compose_lift(const std::vector<FullCorrelationInequality>& faces,
                        const LiftOptions& options = {});

// The two-setting case 1/2 (c_1 (B_1+B_2) + c_2 (B_1-B_2)); for this case
// the construction is an exact correspondence between facet pairs of the
// base polytope and facets of the extended one.
LiftResult chsh_extend(const FullCorrelationInequality& b1, const FullCorrelationInequality& b2,
                       const LiftOptions& options = {});

// Splits a two-setting party back into B_1 = f_1+f_2, B_2 = f_1-f_2 and
// tests both for facet-ness, exercising the converse direction.
struct ConverseReport {
    FullCorrelationInequality b1;
    FullCorrelationInequality b2;
    TightnessReport b1_report;
    TightnessReport b2_report;
};
ConverseReport converse_check(const FullCorrelationInequality& ineq,
                              EnumerationCaps caps = EnumerationCaps::from_env());

// Four-term recipe: B_1 = ineq, B_2 = ineq with the two flip_pair terms
// negated (required to be a face; checked). The result has exactly four
// terms: the unflipped pair times the new party's setting 1, the flipped
// pair times setting 2.
LiftResult four_term_extend(const FullCorrelationInequality& ineq,
                            const std::pair<SettingTuple, SettingTuple>& flip_pair,
                            const LiftOptions& options = {});

// Searches the 2^N sign flips of one party's settings for a choice whose
// decomposition yields at least one structure value that is a face of the
// reduced polytope. Returns the sign vector, or nullopt if none works.
std::optional<std::vector<std::int8_t>> face_sign_search(const FullCorrelationInequality& ineq,
                                                         int party,
                                                         EnumerationCaps caps = EnumerationCaps::from_env());

// Single-party helpers: the facets |a_i| = 1 of F_m (positive orientation)
// and the faces sum p_i a_i = 1 with sum |p_i| = 1.
std::vector<FullCorrelationInequality> trivial_facets(int m);
FullCorrelationInequality trivial_face(const std::vector<Rational>& weights);

} // namespace bellforge
