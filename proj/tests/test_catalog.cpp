#include "bellforge/catalog.hpp"
#include "bellforge/equivalence.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/json_io.hpp"
#include "bellforge/polytope.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace bellforge;

TEST_CASE("catalog names and lookup") {
    CHECK(catalog_names().size() == 8);
    CHECK(catalog_all_names().size() == 9);
    CHECK_THROWS_AS(catalog_get("nope"), InputError);
}

TEST_CASE("wzg8 matches the published eight-party inequality") {
    const auto entry = catalog_get("wzg8");
    CHECK(entry.inequality.term_count() == 4);
    CHECK(entry.inequality.scenario() == Scenario(std::vector<int>(8, 2)));
    // sign pattern (+,-,+,+) on the four displayed monomials
    CHECK(entry.inequality.coefficient({0, 0, 0, 0, 0, 0, 0, 0}) == rational(1, 2));
    CHECK(entry.inequality.coefficient({1, 1, 0, 1, 0, 0, 0, 0}) == rational(-1, 2));
    CHECK(entry.inequality.coefficient({1, 1, 1, 0, 1, 1, 1, 1}) == rational(1, 2));
    CHECK(entry.inequality.coefficient({0, 0, 1, 1, 1, 1, 1, 1}) == rational(1, 2));
}

TEST_CASE("i44 has thirteen terms with coefficients in sixths") {
    const auto entry = catalog_get("i44");
    CHECK(entry.inequality.term_count() == 13);
    for (const auto& [tuple, coeff] : entry.inequality.terms()) {
        (void)tuple;
        const auto mag = rational_abs(coeff);
        CHECK((mag == rational(1, 6) || mag == rational(1, 3)));
    }
    CHECK(entry.inequality.coefficient({0, 0}) == rational(-1, 3));
    CHECK(entry.inequality.algebraic_bound() == rational(7, 3));
}

TEST_CASE("recipes regenerate their entries up to canonical form") {
    for (const auto& name : {"chsh", "wzg3", "i44"}) {
        const auto entry = catalog_get(name);
        REQUIRE(entry.recipe);
        const auto rebuilt = run_recipe(*entry.recipe);
        CHECK(canonical_form(rebuilt) == canonical_form(entry.inequality));
    }
}

TEST_CASE("recorded flip pairs agree with a fresh search") {
    // Re-derive the first two chain steps; the deeper ones are covered by
    // the acceptance chain run.
    const auto chsh = catalog_get("chsh").inequality;
    const auto pair3 = find_flip_pair(chsh, catalog_get("wzg3").inequality);
    REQUIRE(pair3.has_value());
    const auto wzg3_entry = catalog_get("wzg3");
    const auto out3 =
        four_term_extend(chsh, std::get<ChainRecipe>(*wzg3_entry.recipe).flips[0], {.verify = false})
            .inequality;
    CHECK(equivalent(out3, catalog_get("wzg3").inequality));
    const auto pair4 = find_flip_pair(out3, catalog_get("wzg4").inequality);
    REQUIRE(pair4.has_value());
}

TEST_CASE("mabk doubling") {
    CHECK(mabk(2) == catalog_get("chsh").inequality);
    const auto m3 = mabk(3);
    CHECK(m3.term_count() == 4);
    CHECK(lr_bound(m3) == 1);
    CHECK(equivalent(m3, catalog_get("wzg3").inequality)); // Mermin class
    const auto m8 = mabk(8);
    CHECK(m8.term_count() == 256); // the contrast with the four-term entry
    CHECK(m8.algebraic_bound() == 16);
    CHECK(lr_bound(m8) == 1);
}

TEST_CASE("catalog check passes for the CHSH entry") {
    const auto result = catalog_check("chsh");
    CHECK(result.pass);
    for (const auto& field : result.fields) CHECK(field.pass);
}

TEST_CASE("every catalog entry re-derives its expected properties") {
    for (const auto& name : catalog_all_names()) {
        const auto result = catalog_check(name);
        CHECK_MESSAGE(result.pass, name);
    }
}

TEST_CASE("committed catalog data files match the serializer byte for byte") {
    for (const auto& name : catalog_all_names()) {
        const std::string path = std::string(BELLFORGE_SOURCE_DIR) + "/data/catalog/v1/" + name + ".json";
        std::ifstream in(path);
        REQUIRE_MESSAGE(in.good(), path);
        std::ostringstream buffer;
        buffer << in.rdbuf();
        const auto entry = catalog_get(name);
        CHECK(buffer.str() == serialize(entry.inequality, entry.name));
    }
}
