#include "bellforge/catalog.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/polytope.hpp"
#include "bellforge/quantum.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bellforge;

namespace {

constexpr double kPi = std::numbers::pi;

AngleSettings zero_angles(const Scenario& s) {
    AngleSettings a;
    for (int p = 0; p < s.parties(); ++p)
        a.angles.emplace_back(static_cast<std::size_t>(s.settings(p)), 0.0);
    return a;
}

AngleSettings random_angles(const Scenario& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uniform(-kPi, kPi);
    AngleSettings a;
    for (int p = 0; p < s.parties(); ++p) {
        a.angles.emplace_back();
        for (int i = 0; i < s.settings(p); ++i) a.angles.back().push_back(uniform(rng));
    }
    return a;
}

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

TEST_CASE("bell operator basics") {
    TermMap terms;
    terms.emplace(SettingTuple{0, 0}, Rational(1));
    const FullCorrelationInequality xx(Scenario({1, 1}), std::move(terms));
    const auto b = bell_operator(xx, zero_angles(xx.scenario()));
    // X (x) X at angle 0
    CHECK(b(0, 3).real() == doctest::Approx(1.0));
    CHECK(b(1, 2).real() == doctest::Approx(1.0));
    CHECK(std::abs(b(0, 0)) == doctest::Approx(0.0));
    CHECK((b - b.adjoint()).norm() == doctest::Approx(0.0));
    CHECK(std::abs(b.trace()) == doctest::Approx(0.0));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(b, Eigen::EigenvaluesOnly);
    CHECK(solver.eigenvalues().minCoeff() == doctest::Approx(-1.0));
    CHECK(solver.eigenvalues().maxCoeff() == doctest::Approx(1.0));

    // zero inequality: zero operator
    const FullCorrelationInequality zero(Scenario({2, 2}), {});
    CHECK(bell_operator(zero, zero_angles(zero.scenario())).norm() == doctest::Approx(0.0));

    // settings shape must match
    CHECK_THROWS_AS(bell_operator(xx, zero_angles(Scenario({2, 2}))), InputError);
}

TEST_CASE("CHSH at the standard configuration") {
    const auto chsh = catalog_get("chsh").inequality;
    AngleSettings settings;
    settings.angles = {{0.0, kPi / 2}, {kPi / 4, -kPi / 4}};
    CHECK(max_eigenvalue_bound(chsh, settings) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

    // GHZ_2 reaches sqrt(2) at the reflected configuration (the closed form
    // depends on angle sums).
    AngleSettings ghz_settings;
    ghz_settings.angles = {{0.0, kPi / 2}, {-kPi / 4, kPi / 4}};
    CHECK(ghz_value(chsh, ghz_settings) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("closed-form GHZ value equals the operator expectation") {
    std::mt19937_64 rng(6174);
    const std::vector<std::vector<int>> scenarios = {{2, 2}, {3, 2}, {2, 2, 2}, {2, 2, 2, 2}, {3, 3, 2}};
    for (const auto& settings : scenarios) {
        const Scenario s(settings);
        for (int trial = 0; trial < 20; ++trial) {
            const auto ineq = random_sparse(s, rng, 0.5);
            const auto angles = random_angles(s, rng);
            CHECK(ghz_value(ineq, angles) ==
                  doctest::Approx(ghz_value_operator(ineq, angles)).epsilon(1e-10));
        }
    }
    // one eight-party sparse case against the 256-dimensional operator
    const Scenario s8(std::vector<int>(8, 2));
    for (int trial = 0; trial < 5; ++trial) {
        const auto ineq = random_sparse(s8, rng, 0.02);
        const auto angles = random_angles(s8, rng);
        CHECK(ghz_value(ineq, angles) ==
              doctest::Approx(ghz_value_operator(ineq, angles)).epsilon(1e-10));
    }
}

TEST_CASE("single term: all angles zero give cos(0) = 1 and no quantum advantage") {
    TermMap terms;
    terms.emplace(SettingTuple{0, 0, 0}, Rational(1));
    const FullCorrelationInequality single(Scenario({2, 2, 2}), std::move(terms));
    CHECK(ghz_value(single, zero_angles(single.scenario())) == doctest::Approx(1.0));

    OptimizeOptions options;
    options.restarts = 8;
    const QuantumReport report = maximize_ghz_violation(single, options);
    CHECK(report.violation_factor == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimizer recovers the Tsirelson value for CHSH") {
    const QuantumReport report = maximize_ghz_violation(catalog_get("chsh").inequality);
    CHECK(report.violation_factor == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(report.quantum_value == doctest::Approx(report.max_eigenvalue).epsilon(1e-6));
    CHECK(report.converged);
    CHECK(report.seed == 0);
    CHECK(report.restarts == 32);
}

TEST_CASE("optimizer reaches the factor-2 GHZ violation of the three-party inequality") {
    const auto wzg3 = catalog_get("wzg3").inequality;
    const QuantumReport report = maximize_ghz_violation(wzg3);
    CHECK(report.violation_factor == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(report.critical_visibility == doctest::Approx(0.5).epsilon(1e-6));
    // the found angles really evaluate to 2 in the closed form
    CHECK(ghz_value(wzg3, report.settings) == doctest::Approx(2.0).epsilon(1e-9));
    // and GHZ is the top eigenvector's value there
    CHECK(report.max_eigenvalue == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("eight-party inequality: value 2 and eigenvalue cross-check") {
    const auto wzg8 = catalog_get("wzg8").inequality;
    OptimizeOptions options;
    options.restarts = 16;
    const QuantumReport report = maximize_ghz_violation(wzg8, options);
    CHECK(report.quantum_value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(ghz_value(wzg8, report.settings) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(report.max_eigenvalue == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(report.critical_visibility == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("coordinate ascent never decreases the objective") {
    std::mt19937_64 rng(55);
    std::vector<std::pair<int, double>> trace;
    OptimizeOptions options;
    options.restarts = 4;
    options.sweep_trace = &trace;
    const auto ineq = random_sparse(Scenario({2, 2, 2}), rng, 0.6);
    maximize_ghz_violation(ineq, options);
    REQUIRE(!trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].first != trace[i - 1].first) continue; // new restart
        CHECK(trace[i].second >= trace[i - 1].second - 1e-12);
    }
}

TEST_CASE("violation factor never exceeds algebraic/lr") {
    std::mt19937_64 rng(808);
    OptimizeOptions options;
    options.restarts = 6;
    for (int trial = 0; trial < 10; ++trial) {
        auto ineq = random_sparse(Scenario({2, 2}), rng, 0.7);
        if (ineq.term_count() == 0) continue;
        const QuantumReport report = maximize_ghz_violation(ineq, options);
        const double cap = to_double(ineq.algebraic_bound()) / report.lr_bound_value;
        CHECK(report.violation_factor <= cap + 1e-9);
    }
}

TEST_CASE("a common offset on one party's initial angles is absorbed") {
    const auto wzg3 = catalog_get("wzg3").inequality;
    std::mt19937_64 rng(99);
    const AngleSettings start = random_angles(wzg3.scenario(), rng);
    AngleSettings shifted = start;
    for (double& phi : shifted.angles[0]) phi += 0.7;

    OptimizeOptions options;
    options.restarts = 1;
    options.initial = start;
    const double base = maximize_ghz_violation(wzg3, options).quantum_value;
    options.initial = shifted;
    const double moved = maximize_ghz_violation(wzg3, options).quantum_value;
    CHECK(base == doctest::Approx(moved).epsilon(1e-9));
}

TEST_CASE("critical visibility") {
    const auto wzg8 = catalog_get("wzg8").inequality;
    const VisibilityResult at_two = critical_visibility(wzg8, 2.0);
    CHECK(at_two.v_crit == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(at_two.violation);

    // at the LR bound the violation vanishes exactly
    const VisibilityResult at_bound = critical_visibility(wzg8, 1.0);
    CHECK(at_bound.v_crit == doctest::Approx(1.0));
    CHECK(!at_bound.violation);

    CHECK_THROWS_AS(critical_visibility(wzg8, 0.0), InputError);
}

TEST_CASE("dense operator cap refuses thirteen parties but the closed form works") {
    const Scenario s(std::vector<int>(13, 2));
    TermMap terms;
    terms.emplace(SettingTuple(13, 0), Rational(1));
    const FullCorrelationInequality ineq(s, std::move(terms));
    CHECK(ghz_value(ineq, zero_angles(s)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bell_operator(ineq, zero_angles(s)), CapExceeded);
}
