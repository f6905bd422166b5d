#include "bellforge/catalog.hpp"
#include "bellforge/convert.hpp"
#include "bellforge/equivalence.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/polytope.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace bellforge;

namespace {

FullCorrelationInequality random_sparse(const Scenario& s, std::mt19937_64& rng, double density) {
    TermMap terms;
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (long long idx = 0; idx < s.dimension(); ++idx) {
        if (keep(rng) > density) continue;
        const long num = static_cast<long>(rng() % 19) - 9;
        if (num == 0) continue;
        terms.emplace(s.index_tuple(idx), rational(num, 1 + static_cast<long>(rng() % 9)));
    }
    return FullCorrelationInequality(s, std::move(terms), Rational(1));
}

GeneralInequality random_general(const Scenario& s, std::mt19937_64& rng) {
    TermMap terms;
    const int n = s.parties();
    long long space = 1;
    for (int p = 0; p < n; ++p) space *= s.settings(p) + 1;
    for (long long code = 1; code < space; ++code) {
        if (rng() % 2) continue;
        const long num = static_cast<long>(rng() % 19) - 9;
        if (num == 0) continue;
        SettingTuple key(static_cast<std::size_t>(n));
        long long rest = code;
        for (int p = n - 1; p >= 0; --p) {
            key[static_cast<std::size_t>(p)] = static_cast<int>(rest % (s.settings(p) + 1)) - 1;
            rest /= s.settings(p) + 1;
        }
        terms.emplace(std::move(key), rational(num, 1 + static_cast<long>(rng() % 9)));
    }
    return GeneralInequality(s, std::move(terms),
                             rational(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 9)));
}

} // namespace

TEST_CASE("group action basics") {
    const auto chsh = catalog_get("chsh").inequality;
    const GroupElement id = identity_element(chsh.scenario());
    CHECK(act(id, chsh) == chsh);

    // Flipping the sign of b_2 negates exactly the two terms using it and
    // keeps the inequality a facet.
    GroupElement flip = id;
    flip.actions[1].sign[1] = -1;
    const auto flipped = act(flip, chsh);
    CHECK(flipped.coefficient({0, 1}) == rational(-1, 2));
    CHECK(flipped.coefficient({1, 1}) == rational(1, 2));
    CHECK(flipped.coefficient({0, 0}) == rational(1, 2));
    CHECK(tightness(flipped).is_facet);

    // The three-party four-term inequality is symmetric under swapping
    // the first two parties.
    const auto wzg3 = catalog_get("wzg3").inequality;
    GroupElement swap = identity_element(wzg3.scenario());
    swap.source_party = {1, 0, 2};
    CHECK(act(swap, wzg3) == wzg3);

    // shape mismatch rejected
    CHECK_THROWS_AS(act(identity_element(Scenario({2, 2})), wzg3), InputError);
}

TEST_CASE("group axioms") {
    std::mt19937_64 rng(123);
    const Scenario s({3, 2, 3});
    const auto ineq = random_sparse(s, rng, 0.5);
    for (int trial = 0; trial < 30; ++trial) {
        const GroupElement g1 = random_element(s, rng);
        const GroupElement g2 = random_element(s, rng);
        CHECK(act(compose(g2, g1), ineq) == act(g2, act(g1, ineq)));
        CHECK(act(inverse(g1), act(g1, ineq)) == ineq);
        CHECK(act(compose(g1, identity_element(s)), ineq) == act(g1, ineq));
    }
}

TEST_CASE("action preserves orbit invariants") {
    std::mt19937_64 rng(5);
    const auto i44 = catalog_get("i44").inequality;
    const Rational lr = lr_bound(i44);
    const Rational alg = i44.algebraic_bound();
    const auto fp = orbit_fingerprint(i44);
    for (int trial = 0; trial < 20; ++trial) {
        const auto moved = act(random_element(i44.scenario(), rng), i44);
        CHECK(lr_bound(moved) == lr);
        CHECK(moved.algebraic_bound() == alg);
        CHECK(moved.term_count() == i44.term_count());
        CHECK(orbit_fingerprint(moved) == fp);
    }
}

TEST_CASE("canonical form: idempotent and orbit-constant") {
    std::mt19937_64 rng(31337);
    const std::vector<std::string> names = {"chsh", "wzg3", "wzg5", "i44"};
    for (const auto& name : names) {
        const auto ineq = catalog_get(name).inequality;
        const auto canonical = canonical_form(ineq);
        CHECK(canonical_form(canonical) == canonical);
        for (int trial = 0; trial < 20; ++trial) {
            const auto moved = act(random_element(ineq.scenario(), rng), ineq);
            CHECK(canonical_form(moved) == canonical);
        }
    }
}

TEST_CASE("canonical strategies agree on overlapping inputs") {
    std::mt19937_64 rng(77);
    // binary versus full scan on two- and three-party sparse inputs
    for (const auto& settings : {std::vector<int>{2, 2}, std::vector<int>{2, 2, 2}}) {
        const Scenario s(settings);
        for (int trial = 0; trial < 25; ++trial) {
            auto ineq = random_sparse(s, rng, 0.3);
            while (ineq.term_count() == 0 || ineq.term_count() > 6) ineq = random_sparse(s, rng, 0.3);
            const auto scan = detail::canonical_full_scan(ineq);
            CHECK(detail::canonical_binary(ineq) == scan);
            CHECK(detail::canonical_backtracking(ineq) == scan);
        }
    }
    // backtracking versus full scan where settings counts differ
    for (const auto& settings : {std::vector<int>{3, 2}, std::vector<int>{3, 3}}) {
        const Scenario s(settings);
        for (int trial = 0; trial < 15; ++trial) {
            const auto ineq = random_sparse(s, rng, 0.5);
            if (ineq.term_count() == 0) continue;
            CHECK(detail::canonical_backtracking(ineq) == detail::canonical_full_scan(ineq));
        }
    }
}

TEST_CASE("the CHSH-class facets of F_22 share one canonical form") {
    const FacetList f22 = enumerate_facets(Scenario({2, 2}));
    std::set<TermMap> four_term_classes, single_term_classes;
    for (const auto& facet : f22.facets) {
        const auto canonical = canonical_form(facet);
        if (facet.term_count() == 4)
            four_term_classes.insert(canonical.terms());
        else
            single_term_classes.insert(canonical.terms());
    }
    CHECK(four_term_classes.size() == 1);
    CHECK(single_term_classes.size() == 1);
    CHECK(*four_term_classes.begin() == canonical_form(catalog_get("chsh").inequality).terms());
}

TEST_CASE("canonical guard refuses oversized scenarios") {
    const Scenario big(std::vector<int>(11, 2));
    TermMap terms;
    terms.emplace(SettingTuple(11, 0), Rational(1));
    CHECK_THROWS_AS(canonical_form(FullCorrelationInequality(big, std::move(terms))), CapExceeded);
}

TEST_CASE("equivalent() compares orbits") {
    const auto chsh = catalog_get("chsh").inequality;
    std::mt19937_64 rng(4);
    const auto moved = act(random_element(chsh.scenario(), rng), chsh);
    CHECK(equivalent(chsh, moved));
    TermMap single;
    single.emplace(SettingTuple{0, 0}, Rational(1));
    CHECK(!equivalent(chsh, FullCorrelationInequality(chsh.scenario(), std::move(single))));
    CHECK(!equivalent(chsh, catalog_get("wzg3").inequality)); // different scenarios
}

TEST_CASE("dehomogenize: CHSH with b_2 fixed to +1") {
    const auto chsh = catalog_get("chsh").inequality;
    const GeneralInequality reduced = dehomogenize(chsh, {{1, 1}});
    CHECK(reduced.scenario() == Scenario({2, 1}));
    CHECK(reduced.constant() == 0);
    // 1/2 (a1 b1 + a1 + a2 b1 - a2)
    TermMap expected;
    expected.emplace(SettingTuple{0, 0}, rational(1, 2));
    expected.emplace(SettingTuple{0, kAbsent}, rational(1, 2));
    expected.emplace(SettingTuple{1, 0}, rational(1, 2));
    expected.emplace(SettingTuple{1, kAbsent}, rational(-1, 2));
    CHECK(reduced.terms() == expected);
    CHECK(lr_bound_general(reduced) == 1);

    // fixing nothing is the identity embedding
    const GeneralInequality same = dehomogenize(chsh, {});
    CHECK(same == GeneralInequality::from_full_correlation(chsh));
}

TEST_CASE("dehomogenize i44 to a 3x3 CH-type inequality with LR bound 1") {
    const auto i44 = catalog_get("i44").inequality;
    const GeneralInequality reduced = dehomogenize(i44, {{0, 3}, {1, 3}});
    CHECK(reduced.scenario() == Scenario({3, 3}));
    CHECK(lr_bound_general(reduced) == 1);
}

TEST_CASE("homogenize: marginals become auxiliary settings") {
    // 1/2 (a1 b1 + a1 + a2 b1 - a2) over (2,1) homogenizes to CHSH.
    TermMap terms;
    terms.emplace(SettingTuple{0, 0}, rational(1, 2));
    terms.emplace(SettingTuple{0, kAbsent}, rational(1, 2));
    terms.emplace(SettingTuple{1, 0}, rational(1, 2));
    terms.emplace(SettingTuple{1, kAbsent}, rational(-1, 2));
    const GeneralInequality g(Scenario({2, 1}), std::move(terms));
    CHECK(homogenize(g) == catalog_get("chsh").inequality);

    // constant-only: the product of all auxiliary variables
    const GeneralInequality constant_only(Scenario({2, 2}), {}, Rational(1));
    const auto lifted = homogenize(constant_only);
    CHECK(lifted.scenario() == Scenario({3, 3}));
    CHECK(lifted.term_count() == 1);
    CHECK(lifted.coefficient({2, 2}) == 1);
}

TEST_CASE("conversion laws on random inequalities") {
    std::mt19937_64 rng(271828);
    const std::vector<std::vector<int>> scenarios = {{2, 2}, {3, 2}, {2, 2, 2}};
    for (int trial = 0; trial < 100; ++trial) {
        const Scenario s(scenarios[static_cast<std::size_t>(trial) % scenarios.size()]);
        const GeneralInequality g = random_general(s, rng);
        const auto fix = homogenization_fix_map(g);
        CHECK(dehomogenize(homogenize(g), fix) == g);
    }

    // The full-correlation polytope is centrally symmetric, so the
    // homogenized LR maximum is the symmetrized one: max(max g, -min g).
    // Equality with lr(g) holds exactly when the maximum dominates.
    for (int trial = 0; trial < 20; ++trial) {
        const GeneralInequality g = random_general(Scenario({2, 2}), rng);
        const GeneralInequality neg(g.scenario(), scaled(g.terms(), Rational(-1)),
                                    Rational(-g.constant()));
        const Rational hi = lr_bound_general(g);
        const Rational lo = lr_bound_general(neg); // = -min g
        CHECK(lr_bound(homogenize(g)) == std::max(hi, lo));
    }

    // substitution never raises the LR maximum
    for (int trial = 0; trial < 30; ++trial) {
        const Scenario s({3, 3});
        const auto ineq = random_sparse(s, rng, 0.7);
        const GeneralInequality reduced = dehomogenize(ineq, {{0, static_cast<int>(rng() % 3)}});
        CHECK(lr_bound_general(reduced) <= lr_bound(ineq));
    }
}
