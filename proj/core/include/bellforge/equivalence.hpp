#pragma once

#include "bellforge/inequality.hpp"

#include <random>
#include <vector>

namespace bellforge {

// One party's relabeling: a permutation of its settings and a sign per
// setting, both indexed by the old setting.
struct PartyAction {
    std::vector<int> new_setting;     // image of old setting i
    std::vector<std::int8_t> sign;    // sign applied to old setting i's variable
};

// Element of the equivalence group: per-party sign flips and setting
// permutations plus a permutation of parties (restricted to parties with
// equal setting counts, so the scenario vector is preserved).
struct GroupElement {
    std::vector<int> source_party;    // new position q holds old party source_party[q]
    std::vector<PartyAction> actions; // indexed by old party
};

GroupElement identity_element(const Scenario& s);
GroupElement compose(const GroupElement& after, const GroupElement& first);
GroupElement inverse(const GroupElement& g);
GroupElement random_element(const Scenario& s, std::mt19937_64& rng);

// Relabels/negates the coefficients per g. Exact; preserves bounds, term
// count, LR maximum and the whole tightness report.
FullCorrelationInequality act(const GroupElement& g, const FullCorrelationInequality& ineq);

struct CanonicalGuards {
    int max_total_settings = 20;
};

// Lexicographically minimal dense coefficient vector over the group orbit
// (party-major tuple order). Deterministic; idempotent; orbit-constant.
FullCorrelationInequality canonical_form(const FullCorrelationInequality& ineq,
                                         CanonicalGuards guards = {});

bool equivalent(const FullCorrelationInequality& a, const FullCorrelationInequality& b,
                CanonicalGuards guards = {});

// Cheap orbit invariants for callers above the canonical guard.
struct OrbitFingerprint {
    std::vector<Rational> abs_coefficients; // sorted ascending
    std::size_t term_count = 0;
    Rational algebraic_bound;

    bool operator==(const OrbitFingerprint& other) const = default;
};

OrbitFingerprint orbit_fingerprint(const FullCorrelationInequality& ineq);

namespace detail {

// The three exact strategies behind canonical_form, exposed so tests can
// cross-check them on overlapping inputs.
FullCorrelationInequality canonical_full_scan(const FullCorrelationInequality& ineq);
FullCorrelationInequality canonical_binary(const FullCorrelationInequality& ineq);
FullCorrelationInequality canonical_backtracking(const FullCorrelationInequality& ineq);

// Group order as a double (infinity-safe upper estimate for strategy choice).
double group_order(const Scenario& s);

} // namespace detail

} // namespace bellforge
