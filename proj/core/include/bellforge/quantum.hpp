#pragma once

#include "bellforge/inequality.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bellforge {

// Equatorial measurement angles, one per setting per party. The observable
// A(phi) = cos(phi) X + sin(phi) Y is traceless with eigenvalues +/-1.
struct AngleSettings {
    std::vector<std::vector<double>> angles;

    bool matches(const Scenario& s) const;
};

struct QubitCaps {
    int max_parties_dense = 12; // 4096-dimensional dense operators
};

// B = sum_t alpha(t) (x)_p A(phi_{p,i_p}); Hermitian and traceless.
Eigen::MatrixXcd bell_operator(const FullCorrelationInequality& ineq, const AngleSettings& settings,
                               QubitCaps caps = {});

// <GHZ_n|B|GHZ_n> in closed form: sum_t alpha(t) cos(sum_p phi_{p,i_p}).
// No dimension cap.
double ghz_value(const FullCorrelationInequality& ineq, const AngleSettings& settings);

// Same expectation through the dense operator; cross-checks the closed form.
double ghz_value_operator(const FullCorrelationInequality& ineq, const AngleSettings& settings,
                          QubitCaps caps = {});

// Largest eigenvalue of the Bell operator (state-optimal value at fixed
// settings), by dense self-adjoint eigensolve.
double max_eigenvalue_bound(const FullCorrelationInequality& ineq, const AngleSettings& settings,
                            QubitCaps caps = {});

struct OptimizeOptions {
    int restarts = 32;
    std::uint64_t seed = 0;
    double sweep_tolerance = 1e-12;
    int max_sweeps = 10000;
    // Start of the first restart (random when absent); remaining restarts
    // stay random. Lets callers probe offset invariance.
    std::optional<AngleSettings> initial;
    // When set, receives (restart, objective) after every sweep.
    std::vector<std::pair<int, double>>* sweep_trace = nullptr;
};

struct QuantumReport {
    double quantum_value = 0;
    double violation_factor = 0;
    double critical_visibility = 0;
    double max_eigenvalue = 0; // NaN when the scenario exceeds the dense cap
    AngleSettings settings;
    std::string state_tag;
    std::uint64_t seed = 0;
    int restarts = 0;
    bool converged = false; // best restart hit the sweep tolerance
    double lr_bound_value = 0;
};

// Multi-start cyclic coordinate ascent on the GHZ closed form. Each single
// angle enters as A cos(phi) + B sin(phi) and is maximized exactly at
// atan2(B, A), so sweeps never decrease the objective. Deterministic for a
// given seed.
QuantumReport maximize_ghz_violation(const FullCorrelationInequality& ineq,
                                     OptimizeOptions options = {}, QubitCaps caps = {},
                                     EnumerationCaps enum_caps = EnumerationCaps::from_env());

struct VisibilityResult {
    double v_crit = 0;
    bool violation = false; // quantum_value > lr_bound
};

// v_crit = (lr - noise) / (quantum - noise); the noise expectation is 0 for
// equatorial observables. Values above 1 mean the inequality does not
// detect the state.
VisibilityResult critical_visibility(const FullCorrelationInequality& ineq, double quantum_value,
                                     double noise_value = 0.0,
                                     EnumerationCaps enum_caps = EnumerationCaps::from_env());

} // namespace bellforge
