#include "bellforge/catalog.hpp"
#include "bellforge/equivalence.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/lift.hpp"
#include "bellforge/polytope.hpp"

#include <doctest.h>

#include <random>

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

} // namespace

TEST_CASE("decompose collects terms per setting of one party") {
    const auto chsh = catalog_get("chsh").inequality;
    const PartyDecomposition d = decompose(chsh, 1);
    REQUIRE(d.components.size() == 2);
    // f_1 = 1/2 (a_1 + a_2), f_2 = 1/2 (a_1 - a_2)
    CHECK(d.components[0].coefficient({0}) == rational(1, 2));
    CHECK(d.components[0].coefficient({1}) == rational(1, 2));
    CHECK(d.components[1].coefficient({0}) == rational(1, 2));
    CHECK(d.components[1].coefficient({1}) == rational(-1, 2));

    const auto wzg3 = catalog_get("wzg3").inequality;
    const PartyDecomposition dc = decompose(wzg3, 2);
    // f_1 = 1/2 (a1 b1 - a2 b2), f_2 = 1/2 (-a1 b2 - a2 b1)
    CHECK(dc.components[0].coefficient({0, 0}) == rational(1, 2));
    CHECK(dc.components[0].coefficient({1, 1}) == rational(-1, 2));
    CHECK(dc.components[1].coefficient({0, 1}) == rational(-1, 2));
    CHECK(dc.components[1].coefficient({1, 0}) == rational(-1, 2));

    // zero inequality: all components zero
    const PartyDecomposition dz = decompose(FullCorrelationInequality(Scenario({2, 2}), {}), 0);
    for (const auto& f : dz.components) CHECK(f.term_count() == 0);

    CHECK_THROWS_AS(decompose(chsh, 2), InputError);
}

TEST_CASE("structure values") {
    const auto chsh = catalog_get("chsh").inequality;
    const auto sv = structure_values(decompose(chsh, 1));
    REQUIRE(sv.size() == 2);
    // f1 + f2 = a_1, f1 - f2 = a_2
    CHECK(sv[0].term_count() == 1);
    CHECK(sv[0].coefficient({0}) == 1);
    CHECK(sv[1].coefficient({1}) == 1);

    // one-component decomposition degenerates to [f_1]
    TermMap terms;
    terms.emplace(SettingTuple{0, 0}, rational(1, 2));
    const FullCorrelationInequality ineq(Scenario({2, 1}), std::move(terms));
    const auto single = structure_values(decompose(ineq, 1));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == decompose(ineq, 1).components[0]);
}

TEST_CASE("i44 decomposed on the first party reproduces the four trivial faces") {
    const auto entry = catalog_get("i44");
    const auto sv = structure_values(decompose(entry.inequality, 0));
    REQUIRE(sv.size() == 4);
    const auto& weights = std::get<ComposeRecipe>(*entry.recipe).face_weights;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto expected = trivial_face(weights[k]);
        CHECK(sv[k].terms() == expected.terms());
    }
}

TEST_CASE("decompose/recompose identity on random tensors") {
    std::mt19937_64 rng(8);
    const std::vector<std::vector<int>> scenarios = {{2, 2}, {3, 3}, {2, 2, 2}, {3, 3, 3}};
    for (const auto& settings : scenarios) {
        const Scenario s(settings);
        for (int trial = 0; trial < 50; ++trial) {
            const auto ineq = random_sparse(s, rng, 0.6);
            const int party = static_cast<int>(rng() % static_cast<unsigned>(s.parties()));
            const PartyDecomposition d = decompose(ineq, party);
            CHECK(recompose(d) == ineq);
            CHECK(recompose_via_structure(d) == ineq);
        }
    }
}

TEST_CASE("chsh_extend of the single-party facets is CHSH") {
    const auto seeds = trivial_facets(2);
    const LiftResult result = chsh_extend(seeds[0], seeds[1]);
    CHECK(result.inequality == catalog_get("chsh").inequality);
    REQUIRE(result.report);
    CHECK(result.report->is_facet);
}

TEST_CASE("compose_lift of four non-tight single-party faces is the i44 facet") {
    const auto entry = catalog_get("i44");
    const auto& weights = std::get<ComposeRecipe>(*entry.recipe).face_weights;
    std::vector<FullCorrelationInequality> faces;
    for (const auto& w : weights) faces.push_back(trivial_face(w));

    // each input is a face but not a facet of the single-party polytope
    for (const auto& face : faces) {
        const TightnessReport tr = tightness(face);
        CHECK(tr.is_face);
        CHECK(!tr.is_facet);
    }

    const LiftResult result = compose_lift(faces);
    REQUIRE(result.report);
    CHECK(result.report->is_facet);
    CHECK(equivalent(result.inequality, entry.inequality));
}

TEST_CASE("lifting a facet against itself yields the one-setting extension, again a facet") {
    // 1/2 (c_1 (B+B) + c_2 (B-B)) = c_1 B. The two-setting correspondence is
    // exact in both directions, so this is a facet of the extended polytope;
    // the rank certificate confirms it.
    const auto chsh = catalog_get("chsh").inequality;
    const LiftResult result = chsh_extend(chsh, chsh);
    CHECK(result.inequality.term_count() == 4);
    for (const auto& [tuple, coeff] : result.inequality.terms()) {
        (void)coeff;
        CHECK(tuple.back() == 0); // only setting 1 of the new party appears
    }
    REQUIRE(result.report);
    CHECK(result.report->is_face);
    CHECK(result.report->is_facet);
    CHECK(result.report->rank == 8);

    // Same with B_2 = -B_1 (the antipodal facet): I = c_2 B_1, still a facet.
    const LiftResult antipodal = chsh_extend(chsh, chsh.negated());
    REQUIRE(antipodal.report);
    CHECK(antipodal.report->is_facet);
    for (const auto& [tuple, coeff] : antipodal.inequality.terms()) {
        (void)coeff;
        CHECK(tuple.back() == 1);
    }
}

TEST_CASE("compose_lift input validation") {
    const auto chsh = catalog_get("chsh").inequality;
    const auto wzg3 = catalog_get("wzg3").inequality;
    CHECK_THROWS_AS(compose_lift({}), InputError);
    CHECK_THROWS_AS(compose_lift({chsh, wzg3}), InputError); // scenario mismatch
    CHECK_THROWS_AS(compose_lift({chsh, FullCorrelationInequality(chsh.scenario(), {}, Rational(0))}),
                    InputError); // bound 0
}

TEST_CASE("four_term_extend: flip recipe") {
    const auto chsh = catalog_get("chsh").inequality;
    // Flip the {a1 b2, a2 b1} pair: equivalent to the three-party inequality.
    const LiftResult result = four_term_extend(chsh, {{0, 1}, {1, 0}});
    CHECK(result.inequality.term_count() == 4);
    CHECK(result.inequality.algebraic_bound() == chsh.algebraic_bound());
    CHECK(equivalent(result.inequality, catalog_get("wzg3").inequality));
    REQUIRE(result.report);
    CHECK(result.report->is_facet);

    // unflipped pair rides setting 1, flipped pair rides setting 2
    CHECK(result.inequality.coefficient({0, 0, 0}) == rational(1, 2));
    CHECK(result.inequality.coefficient({1, 1, 0}) == rational(-1, 2));
    CHECK(result.inequality.coefficient({0, 1, 1}) == rational(1, 2));
    CHECK(result.inequality.coefficient({1, 0, 1}) == rational(1, 2));

    CHECK_THROWS_AS(four_term_extend(catalog_get("i44").inequality, {{0, 0}, {1, 0}}), InputError);
    CHECK_THROWS_AS(four_term_extend(chsh, {{0, 0}, {0, 0}}), InputError);
    CHECK_THROWS_AS(four_term_extend(chsh, {{0, 0}, {3, 3}}), InputError);
}

TEST_CASE("four_term_extend rejects a flip whose companion is not a face") {
    // (+,+,+,+) on the three-party even-plane monomials has LR max 2;
    // flipping {111, 122} keeps the product of signed terms +1, so the
    // companion also reaches 2 and is not a face.
    const FullCorrelationInequality ineq = FullCorrelationInequality::from_terms_1based(
        Scenario({2, 2, 2}), {{{1, 1, 1}, rational(1, 2)},
                              {{1, 2, 2}, rational(1, 2)},
                              {{2, 1, 2}, rational(1, 2)},
                              {{2, 2, 1}, rational(1, 2)}});
    CHECK_THROWS_WITH_AS(four_term_extend(ineq, {{0, 0, 0}, {0, 1, 1}}),
                         doctest::Contains("not a face"), InputError);
}

TEST_CASE("the seven-party flip pair extends to the published eight-party inequality exactly") {
    const auto wzg7 = catalog_get("wzg7").inequality;
    // flip the two terms carried by setting 2 of every late party
    const SettingTuple t3{1, 1, 1, 0, 1, 1, 1};
    const SettingTuple t4{0, 0, 1, 1, 1, 1, 1};
    const LiftResult result = four_term_extend(wzg7, {t3, t4});
    CHECK(result.inequality == catalog_get("wzg8").inequality);
}

TEST_CASE("chain of six extensions: facets with LR bound 1 and algebraic bound 2") {
    LiftOptions options;
    options.verify = false;
    const auto seeds = trivial_facets(2);
    FullCorrelationInequality current = chsh_extend(seeds[0], seeds[1], options).inequality;
    for (int n = 3; n <= 8; ++n) {
        const auto entry = catalog_get("wzg" + std::to_string(n));
        const auto& chain = std::get<ChainRecipe>(*entry.recipe);
        current = four_term_extend(current, chain.flips.back(), options).inequality;
        CHECK(current.term_count() == 4);
        CHECK(current.algebraic_bound() == 2);
    }
    CHECK(current.scenario().parties() == 8);
    CHECK(lr_bound(current) == 1);
    CHECK(tightness(current).is_facet);
}

TEST_CASE("converse check splits a facet into a facet pair") {
    const auto wzg3 = catalog_get("wzg3").inequality;
    const ConverseReport report = converse_check(wzg3);
    CHECK(report.b1_report.is_facet);
    CHECK(report.b2_report.is_facet);
    CHECK_THROWS_AS(converse_check(catalog_get("i44").inequality), InputError);
}

TEST_CASE("sign search finds a face-producing relabeling") {
    const auto wzg3 = catalog_get("wzg3").inequality;
    for (int party = 0; party < 3; ++party) {
        const auto signs = face_sign_search(wzg3, party);
        REQUIRE(signs.has_value());
    }
}

TEST_CASE("trivial faces and facets") {
    const auto facets = trivial_facets(3);
    CHECK(facets.size() == 3);
    for (const auto& f : facets) {
        CHECK(f.term_count() == 1);
        CHECK(tightness(f).is_facet);
    }
    CHECK_THROWS_AS(trivial_face({rational(1, 2), rational(1, 4)}), InputError);
    const auto face = trivial_face({rational(1, 2), rational(-1, 2)});
    CHECK(lr_bound(face) == 1);
}
