#pragma once

#include "bellforge/caps.hpp"
#include "bellforge/inequality.hpp"

#include <vector>

namespace bellforge {

// Outcome of the face/facet test: local-realistic maximum, saturating
// strategies, and the exact rank certificate.
struct TightnessReport {
    Rational lr_max;
    bool is_face = false;
    // Strategies (out of all 2^total) whose value equals the bound.
    unsigned long long saturating_count = 0;
    long long rank = 0;
    long long dimension = 0;
    bool is_facet = false;
};

struct FacetEnumerationGuards {
    long long max_dimension = 8;
    unsigned long long max_vertices = 64; // reduced strategy count
};

struct FacetList {
    Scenario scenario;
    std::vector<FullCorrelationInequality> facets;        // each normalized to bound 1
    std::vector<std::vector<std::size_t>> orbit_classes;  // partition of facet indices
};

// Local-realistic maximum via the analytic last-party reduction: for each
// assignment of the other parties the last party contributes sum_k |f_k|,
// so the enumeration exponent drops by one party.
Rational lr_bound(const FullCorrelationInequality& ineq,
                  EnumerationCaps caps = EnumerationCaps::from_env());

// Plain maximum over every deterministic strategy. Independent of the
// reduction above; used to cross-check it.
Rational lr_bound_bruteforce(const FullCorrelationInequality& ineq,
                             EnumerationCaps caps = EnumerationCaps::from_env());

// Brute-force LR maximum of a CH-type inequality (no inversion reduction;
// lower-order terms break the symmetry).
Rational lr_bound_general(const GeneralInequality& ineq,
                          EnumerationCaps caps = EnumerationCaps::from_env());

// Face and facet test: collects saturating strategies and certifies the
// facet property by the exact rank of their correlation vectors.
TightnessReport tightness(const FullCorrelationInequality& ineq,
                          EnumerationCaps caps = EnumerationCaps::from_env());

// Brute-force facet enumeration for tiny scenarios: solves for the
// hyperplane through every dimension-sized subset of distinct vertices,
// keeps supporting hyperplanes with a full-rank saturating set, and groups
// the survivors into equivalence classes.
FacetList enumerate_facets(const Scenario& scenario,
                           FacetEnumerationGuards guards = {},
                           EnumerationCaps caps = EnumerationCaps::from_env());

} // namespace bellforge
