#include "bellforge/acceptance.hpp"

#include "bellforge/catalog.hpp"
#include "bellforge/convert.hpp"
#include "bellforge/equivalence.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/json_io.hpp"
#include "bellforge/lift.hpp"
#include "bellforge/polytope.hpp"
#include "bellforge/quantum.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace bellforge {

namespace {

struct Check {
    CriterionResult result;

    explicit Check(int id, std::string key, std::string description) {
        result.id = id;
        result.key = std::move(key);
        result.description = std::move(description);
        result.passed = true;
    }

    void require(bool ok, const std::string& what) {
        if (!ok) {
            result.passed = false;
            result.details.push_back("FAILED: " + what);
        }
    }

    void note(const std::string& line) { result.details.push_back(line); }
};

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(12);
    out << v;
    return out.str();
}

// Random sparse full-correlation tensor with small rational coefficients.
FullCorrelationInequality random_full(const Scenario& s, std::mt19937_64& rng, double density = 0.6) {
    TermMap terms;
    const long long dim = s.dimension();
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (long long idx = 0; idx < dim; ++idx) {
        if (keep(rng) > density) continue;
        const long num = static_cast<long>(rng() % 19) - 9;
        const long den = 1 + static_cast<long>(rng() % 9);
        if (num == 0) continue;
        terms.emplace(s.index_tuple(idx), rational(num, den));
    }
    return FullCorrelationInequality(s, std::move(terms), Rational(1));
}

GeneralInequality random_general(const Scenario& s, std::mt19937_64& rng, double density = 0.5) {
    TermMap terms;
    const int n = s.parties();
    // Partial keys: every party either absent or one of its settings.
    std::vector<long long> radix(static_cast<std::size_t>(n));
    long long space = 1;
    for (int p = 0; p < n; ++p) {
        radix[static_cast<std::size_t>(p)] = s.settings(p) + 1;
        space *= s.settings(p) + 1;
    }
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (long long code = 1; code < space; ++code) { // 0 is the all-absent key
        if (keep(rng) > density) continue;
        const long num = static_cast<long>(rng() % 19) - 9;
        if (num == 0) continue;
        const long den = 1 + static_cast<long>(rng() % 9);
        SettingTuple key(static_cast<std::size_t>(n));
        long long rest = code;
        for (int p = n - 1; p >= 0; --p) {
            const long long digit = rest % radix[static_cast<std::size_t>(p)];
            rest /= radix[static_cast<std::size_t>(p)];
            key[static_cast<std::size_t>(p)] = static_cast<int>(digit) - 1; // -1 is kAbsent
        }
        terms.emplace(std::move(key), rational(num, den));
    }
    const long cnum = static_cast<long>(rng() % 19) - 9;
    return GeneralInequality(s, std::move(terms), rational(cnum, 1 + static_cast<long>(rng() % 9)),
                             Rational(1));
}

CriterionResult criterion_bounds(EnumerationCaps caps) {
    Check check(1, "bounds-four-term",
                "four-term inequalities for 3..8 parties: LR bound exactly 1, algebraic bound exactly 2");
    for (int n = 3; n <= 8; ++n) {
        const auto entry = catalog_get("wzg" + std::to_string(n));
        const Rational lr = lr_bound(entry.inequality, caps);
        const Rational alg = entry.inequality.algebraic_bound();
        check.require(lr == 1, entry.name + ": lr_bound = " + to_string(lr) + ", expected 1");
        check.require(alg == 2, entry.name + ": algebraic_bound = " + to_string(alg) + ", expected 2");
    }
    return check.result;
}

CriterionResult criterion_tightness(EnumerationCaps caps) {
    Check check(2, "tightness-facets",
                "the four-term inequalities and i44 are facets: exact rank equals the dimension");
    for (int n = 3; n <= 8; ++n) {
        const auto entry = catalog_get("wzg" + std::to_string(n));
        const TightnessReport report = tightness(entry.inequality, caps);
        const long long expected_rank = 1ll << n;
        check.require(report.is_facet, entry.name + ": is_facet = false");
        check.require(report.rank == expected_rank, entry.name + ": rank = " + std::to_string(report.rank) +
                                                        ", expected " + std::to_string(expected_rank));
        check.note(entry.name + ": saturating_count = " + std::to_string(report.saturating_count) +
                   ", rank = " + std::to_string(report.rank));
    }
    const auto i44 = catalog_get("i44");
    const TightnessReport report = tightness(i44.inequality, caps);
    check.require(report.is_facet && report.rank == 16,
                  "i44: expected facet with rank 16, got rank " + std::to_string(report.rank));
    check.note("i44: saturating_count = " + std::to_string(report.saturating_count));
    return check.result;
}

CriterionResult criterion_quantum(EnumerationCaps caps) {
    Check check(3, "ghz-violations",
                "GHZ violation factor 2 and visibility 0.5 for the four-term family; sqrt(2) for CHSH");
    const double tol = 1e-6;
    OptimizeOptions options; // 32 restarts, seed 0
    for (int n = 3; n <= 8; ++n) {
        const auto entry = catalog_get("wzg" + std::to_string(n));
        const QuantumReport report = maximize_ghz_violation(entry.inequality, options, {}, caps);
        check.require(std::abs(report.violation_factor - 2.0) <= tol,
                      entry.name + ": violation_factor = " + fmt(report.violation_factor));
        check.require(std::abs(report.critical_visibility - 0.5) <= tol,
                      entry.name + ": critical_visibility = " + fmt(report.critical_visibility));
        // The GHZ value 2 equals the algebraic bound, so it must also be
        // the operator's top eigenvalue at the found settings.
        check.require(std::abs(report.max_eigenvalue - 2.0) <= tol,
                      entry.name + ": max_eigenvalue = " + fmt(report.max_eigenvalue));
    }
    const auto chsh = catalog_get("chsh");
    const QuantumReport report = maximize_ghz_violation(chsh.inequality, options, {}, caps);
    const double sqrt2 = std::sqrt(2.0);
    check.require(std::abs(report.violation_factor - sqrt2) <= tol,
                  "chsh: violation_factor = " + fmt(report.violation_factor));
    check.require(std::abs(report.quantum_value - report.max_eigenvalue) <= tol,
                  "chsh: optimizer value " + fmt(report.quantum_value) +
                      " differs from dense eigensolve " + fmt(report.max_eigenvalue));
    check.note("chsh: quantum_value = " + fmt(report.quantum_value) +
               ", max_eigenvalue = " + fmt(report.max_eigenvalue));
    return check.result;
}

CriterionResult criterion_chain(EnumerationCaps caps) {
    Check check(4, "construction-chain",
                "repeated lifting regenerates CHSH, the four-term family and i44 up to canonical form");
    const auto seeds = trivial_facets(2);
    LiftOptions lift_options;
    lift_options.caps = caps;

    LiftResult step = chsh_extend(seeds[0], seeds[1], lift_options);
    check.require(canonical_form(step.inequality) == canonical_form(catalog_get("chsh").inequality),
                  "chsh_extend(a1, a2) is not the CHSH inequality up to canonical form");
    check.require(step.report && step.report->is_facet, "CHSH step is not a certified facet");

    FullCorrelationInequality current = step.inequality;
    for (int n = 3; n <= 8; ++n) {
        const auto entry = catalog_get("wzg" + std::to_string(n));
        const auto& chain = std::get<ChainRecipe>(*entry.recipe);
        const auto& flip = chain.flips.back();
        LiftResult next = four_term_extend(current, flip, lift_options);
        check.require(next.inequality.term_count() == 4,
                      entry.name + ": chain output does not have 4 terms");
        const Rational lr = lr_bound(next.inequality, caps);
        const Rational alg = next.inequality.algebraic_bound();
        check.require(lr == 1 && alg == 2, entry.name + ": chain output bounds lr=" + to_string(lr) +
                                               " alg=" + to_string(alg));
        check.require(next.report && next.report->is_facet,
                      entry.name + ": chain output is not a certified facet");
        check.require(canonical_form(next.inequality) == canonical_form(entry.inequality),
                      entry.name + ": chain output is not equivalent to the published inequality");
        current = next.inequality;
    }

    const auto i44 = catalog_get("i44");
    LiftResult lifted = compose_lift(
        [&] {
            std::vector<FullCorrelationInequality> faces;
            for (const auto& weights : std::get<ComposeRecipe>(*i44.recipe).face_weights)
                faces.push_back(trivial_face(weights));
            return faces;
        }(),
        lift_options);
    check.require(canonical_form(lifted.inequality) == canonical_form(i44.inequality),
                  "i44: lifted inequality is not equivalent to the stored entry");
    check.require(lifted.report && lifted.report->is_facet, "i44: lifted inequality is not a facet");
    // The inputs are faces but not facets of the single-party polytope, yet
    // the lift is tight.
    for (const auto& weights : std::get<ComposeRecipe>(*i44.recipe).face_weights) {
        const TightnessReport tr = tightness(trivial_face(weights), caps);
        check.require(tr.is_face && !tr.is_facet, "i44 input face is not a proper (non-facet) face");
    }
    return check.result;
}

CriterionResult criterion_structure(EnumerationCaps caps) {
    (void)caps;
    Check check(5, "structure-identity",
                "decompose/reconstruct is the exact identity on random tensors");
    const std::vector<std::vector<int>> scenarios = {{2, 2},    {3, 2},    {3, 3},   {2, 2, 2},
                                                     {3, 2, 2}, {3, 3, 2}, {3, 3, 3}};
    std::mt19937_64 rng(20120521); // fixed seed
    for (const auto& settings : scenarios) {
        const Scenario s(settings);
        for (int trial = 0; trial < 200; ++trial) {
            const FullCorrelationInequality ineq = random_full(s, rng);
            const int party = static_cast<int>(rng() % static_cast<unsigned long long>(s.parties()));
            const PartyDecomposition d = decompose(ineq, party);
            if (!(recompose(d) == ineq)) {
                check.require(false, s.str() + " trial " + std::to_string(trial) +
                                         ": recompose is not the identity");
                break;
            }
            if (!(recompose_via_structure(d) == ineq)) {
                check.require(false, s.str() + " trial " + std::to_string(trial) +
                                         ": structure identity reconstruction failed");
                break;
            }
        }
    }
    check.note("7 scenarios x 200 random tensors, exact equality");
    return check.result;
}

CriterionResult criterion_iff(EnumerationCaps caps) {
    Check check(6, "two-setting-iff",
                "two-setting correspondence between facet pairs of F_22 and facets of F_222; facet census");

    const FacetList f22 = enumerate_facets(Scenario({2, 2}), {}, caps);
    check.require(f22.facets.size() == 16,
                  "F_22: found " + std::to_string(f22.facets.size()) + " facets, expected 16");
    check.require(f22.orbit_classes.size() == 1,
                  "F_22: found " + std::to_string(f22.orbit_classes.size()) +
                      " equivalence classes, expected 1");
    check.note("F_22: facets = " + std::to_string(f22.facets.size()) +
               ", classes = " + std::to_string(f22.orbit_classes.size()));

    const FacetList f222 = enumerate_facets(Scenario({2, 2, 2}), {}, caps);
    check.require(f222.facets.size() == 256,
                  "F_222: found " + std::to_string(f222.facets.size()) + " facets, expected 256");
    check.require(f222.orbit_classes.size() == 1,
                  "F_222: found " + std::to_string(f222.orbit_classes.size()) +
                      " equivalence classes, expected 1");
    check.note("F_222: facets = " + std::to_string(f222.facets.size()) +
               ", classes = " + std::to_string(f222.orbit_classes.size()));
    for (const FacetList* list : {&f22, &f222}) {
        std::string census = list->scenario.str() + " class census:";
        for (const auto& members : list->orbit_classes)
            census += " [" + std::to_string(members.size()) + " facets, " +
                      std::to_string(list->facets[members[0]].term_count()) + " terms]";
        check.note(census);
    }

    const auto wzg3_canonical = canonical_form(catalog_get("wzg3").inequality);
    bool contains = false;
    for (const auto& facet : f222.facets)
        if (canonical_form(facet) == wzg3_canonical) {
            contains = true;
            break;
        }
    check.require(contains, "F_222 facet list does not contain the three-party four-term inequality");

    // Forward direction: every facet of F_222 splits along its last party
    // into two facets of F_22.
    bool forward = true;
    for (const auto& facet : f222.facets) {
        const ConverseReport split = converse_check(facet, caps);
        if (!split.b1_report.is_facet || !split.b2_report.is_facet) {
            forward = false;
            check.require(false, "a facet of F_222 split into non-facets of F_22");
            break;
        }
    }
    if (forward) check.note("all 256 facets split into facet pairs of F_22");

    // Converse direction: every ordered pair of F_22 facets extends (the
    // bound holds automatically for two settings) to a facet of F_222.
    LiftOptions lift_options;
    lift_options.caps = caps;
    bool converse = true;
    for (const auto& b1 : f22.facets) {
        for (const auto& b2 : f22.facets) {
            const LiftResult lifted = chsh_extend(b1, b2, lift_options);
            if (!lifted.report || lifted.report->lr_max > 1) continue; // bound failed: not covered by the iff
            if (!lifted.report->is_facet) {
                converse = false;
                check.require(false, "a bound-satisfying extension of an F_22 facet pair is not a facet");
                break;
            }
        }
        if (!converse) break;
    }
    if (converse) check.note("all 256 facet pairs with the vertex bound extend to facets");
    return check.result;
}

CriterionResult criterion_invariance(EnumerationCaps caps) {
    Check check(7, "equivalence-invariance",
                "Group actions preserve bounds and tightness; canonical form is orbit-constant");
    for (const auto& name : catalog_names()) {
        const CatalogEntry entry = catalog_get(name);
        const Rational lr = lr_bound(entry.inequality, caps);
        const Rational alg = entry.inequality.algebraic_bound();
        const TightnessReport base = tightness(entry.inequality, caps);
        const FullCorrelationInequality canonical = canonical_form(entry.inequality);
        check.require(canonical_form(canonical) == canonical, name + ": canonical form is not idempotent");

        std::mt19937_64 rng(0xB311F04Eull + static_cast<unsigned long long>(entry.inequality.scenario().parties()));
        for (int trial = 0; trial < 50; ++trial) {
            const GroupElement g = random_element(entry.inequality.scenario(), rng);
            const FullCorrelationInequality moved = act(g, entry.inequality);
            if (lr_bound(moved, caps) != lr || moved.algebraic_bound() != alg) {
                check.require(false, name + ": bounds changed under the group action");
                break;
            }
            const TightnessReport tr = tightness(moved, caps);
            const bool same = tr.lr_max == base.lr_max && tr.is_face == base.is_face &&
                              tr.saturating_count == base.saturating_count && tr.rank == base.rank &&
                              tr.dimension == base.dimension && tr.is_facet == base.is_facet;
            if (!same) {
                check.require(false, name + ": tightness report changed under the group action");
                break;
            }
            if (!(canonical_form(moved) == canonical)) {
                check.require(false, name + ": canonical form is not orbit-constant");
                break;
            }
        }
    }
    return check.result;
}

CriterionResult criterion_conversions(EnumerationCaps caps) {
    Check check(8, "conversion-laws",
                "dehomogenize(homogenize(g)) = g; dehomogenization preserves validity");

    std::mt19937_64 rng(19331207);
    const std::vector<std::vector<int>> round_trip_scenarios = {{2, 2}, {3, 2}, {2, 2, 2}, {3, 3}};
    int done = 0;
    while (done < 100) {
        const Scenario s(round_trip_scenarios[static_cast<std::size_t>(done) % round_trip_scenarios.size()]);
        const GeneralInequality g = random_general(s, rng);
        const auto fix = homogenization_fix_map(g);
        const FullCorrelationInequality homogenized = homogenize(g);
        const GeneralInequality back = dehomogenize(homogenized, fix);
        if (!(back == g)) {
            check.require(false, "round trip failed on " + s.str() + " after " + std::to_string(done) +
                                     " successes");
            break;
        }
        ++done;
    }
    if (done == 100) check.note("100 random round trips exact");

    // Validity preservation: substituting +1 never raises the LR maximum.
    const std::vector<std::vector<int>> grids = {{1},    {2},    {3},    {1, 1}, {2, 1},
                                                 {2, 2}, {3, 1}, {3, 2}, {3, 3}};
    bool valid = true;
    for (const auto& settings : grids) {
        const Scenario s(settings);
        for (int trial = 0; trial < 25 && valid; ++trial) {
            const FullCorrelationInequality ineq = random_full(s, rng, 0.8);
            std::map<int, int> fix;
            for (int p = 0; p < s.parties(); ++p)
                if (rng() & 1) fix[p] = static_cast<int>(rng() % static_cast<unsigned>(s.settings(p)));
            if (fix.empty()) fix[0] = 0;
            bool drops_all = true;
            for (int p = 0; p < s.parties(); ++p)
                drops_all = drops_all && fix.count(p) && s.settings(p) == 1;
            if (drops_all) continue;
            const GeneralInequality reduced = dehomogenize(ineq, fix);
            if (lr_bound_general(reduced, caps) > lr_bound(ineq, caps)) {
                valid = false;
                check.require(false, "dehomogenization raised the LR maximum on " + s.str());
            }
        }
    }
    if (valid) check.note("substitution never raised the LR maximum on 9 scenario grids");

    return check.result;
}

} // namespace

CriterionResult run_criterion(int id, EnumerationCaps caps) {
    const auto start = std::chrono::steady_clock::now();
    CriterionResult result;
    switch (id) {
        case 1: result = criterion_bounds(caps); break;
        case 2: result = criterion_tightness(caps); break;
        case 3: result = criterion_quantum(caps); break;
        case 4: result = criterion_chain(caps); break;
        case 5: result = criterion_structure(caps); break;
        case 6: result = criterion_iff(caps); break;
        case 7: result = criterion_invariance(caps); break;
        case 8: result = criterion_conversions(caps); break;
        default: throw InputError("unknown acceptance criterion " + std::to_string(id));
    }
    result.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::vector<CriterionResult> run_acceptance(EnumerationCaps caps) {
    std::vector<CriterionResult> results;
    for (int id = 1; id <= 8; ++id) results.push_back(run_criterion(id, caps));
    return results;
}

} // namespace bellforge
