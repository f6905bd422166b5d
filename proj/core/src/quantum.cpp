#include "bellforge/quantum.hpp"

#include "bellforge/errors.hpp"
#include "bellforge/polytope.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace bellforge {

namespace {

constexpr double kPi = std::numbers::pi;

void check_settings(const FullCorrelationInequality& ineq, const AngleSettings& settings) {
    if (!settings.matches(ineq.scenario()))
        throw InputError("angle settings do not match scenario " + ineq.scenario().str());
}

void check_dense_cap(const Scenario& s, const QubitCaps& caps) {
    if (s.parties() > caps.max_parties_dense)
        throw CapExceeded("dense operator refused: " + std::to_string(s.parties()) +
                              " parties exceed the cap of " + std::to_string(caps.max_parties_dense),
                          caps.max_parties_dense, s.parties());
}

Eigen::Matrix2cd equatorial_observable(double phi) {
    // cos(phi) X + sin(phi) Y = [[0, e^{-i phi}], [e^{i phi}, 0]]
    Eigen::Matrix2cd a;
    const std::complex<double> e(std::cos(phi), std::sin(phi));
    a << 0.0, std::conj(e), e, 0.0;
    return a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::Matrix2cd& b) {
    Eigen::MatrixXcd out(a.rows() * 2, a.cols() * 2);
    for (long r = 0; r < a.rows(); ++r)
        for (long c = 0; c < a.cols(); ++c) out.block(2 * r, 2 * c, 2, 2) = a(r, c) * b;
    return out;
}

double wrap_angle(double phi) {
    phi = std::fmod(phi, 2 * kPi);
    if (phi > kPi) phi -= 2 * kPi;
    if (phi <= -kPi) phi += 2 * kPi;
    return phi;
}

} // namespace

bool AngleSettings::matches(const Scenario& s) const {
    if (static_cast<int>(angles.size()) != s.parties()) return false;
    for (int p = 0; p < s.parties(); ++p)
        if (static_cast<int>(angles[static_cast<std::size_t>(p)].size()) != s.settings(p)) return false;
    return true;
}

Eigen::MatrixXcd bell_operator(const FullCorrelationInequality& ineq, const AngleSettings& settings,
                               QubitCaps caps) {
    check_settings(ineq, settings);
    check_dense_cap(ineq.scenario(), caps);
    const int n = ineq.scenario().parties();
    const long dim = 1l << n;
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [tuple, coeff] : ineq.terms()) {
        Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(1, 1);
        for (int p = 0; p < n; ++p) {
            const double phi =
                settings.angles[static_cast<std::size_t>(p)][static_cast<std::size_t>(tuple[static_cast<std::size_t>(p)])];
            term = kron(term, equatorial_observable(phi));
        }
        b += to_double(coeff) * term;
    }
    return b;
}

double ghz_value(const FullCorrelationInequality& ineq, const AngleSettings& settings) {
    check_settings(ineq, settings);
    const int n = ineq.scenario().parties();
    double value = 0;
    for (const auto& [tuple, coeff] : ineq.terms()) {
        double sum = 0;
        for (int p = 0; p < n; ++p)
            sum += settings.angles[static_cast<std::size_t>(p)][static_cast<std::size_t>(tuple[static_cast<std::size_t>(p)])];
        value += to_double(coeff) * std::cos(sum);
    }
    return value;
}

double ghz_value_operator(const FullCorrelationInequality& ineq, const AngleSettings& settings,
                          QubitCaps caps) {
    const Eigen::MatrixXcd b = bell_operator(ineq, settings, caps);
    const long dim = b.rows();
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(dim);
    ghz(0) = 1.0 / std::sqrt(2.0);
    ghz(dim - 1) = 1.0 / std::sqrt(2.0);
    return (ghz.adjoint() * b * ghz)(0, 0).real();
}

double max_eigenvalue_bound(const FullCorrelationInequality& ineq, const AngleSettings& settings,
                            QubitCaps caps) {
    const Eigen::MatrixXcd b = bell_operator(ineq, settings, caps);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(b, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

namespace {

struct Objective {
    const FullCorrelationInequality* ineq;
    std::vector<SettingTuple> tuples;
    std::vector<double> coeffs;
    // terms_of[p][i]: indices of terms using setting i of party p
    std::vector<std::vector<std::vector<std::size_t>>> terms_of;

    explicit Objective(const FullCorrelationInequality& inequality) : ineq(&inequality) {
        const Scenario& s = inequality.scenario();
        terms_of.resize(static_cast<std::size_t>(s.parties()));
        for (int p = 0; p < s.parties(); ++p)
            terms_of[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(s.settings(p)));
        std::size_t t = 0;
        for (const auto& [tuple, coeff] : inequality.terms()) {
            tuples.push_back(tuple);
            coeffs.push_back(to_double(coeff));
            for (int p = 0; p < s.parties(); ++p)
                terms_of[static_cast<std::size_t>(p)][static_cast<std::size_t>(tuple[static_cast<std::size_t>(p)])]
                    .push_back(t);
            ++t;
        }
    }

    double value(const AngleSettings& settings) const {
        double v = 0;
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            double sum = 0;
            for (int p = 0; p < ineq->scenario().parties(); ++p)
                sum += settings.angles[static_cast<std::size_t>(p)]
                                      [static_cast<std::size_t>(tuples[t][static_cast<std::size_t>(p)])];
            v += coeffs[t] * std::cos(sum);
        }
        return v;
    }
};

} // namespace

QuantumReport maximize_ghz_violation(const FullCorrelationInequality& ineq, OptimizeOptions options,
                                     QubitCaps caps, EnumerationCaps enum_caps) {
    const Scenario& s = ineq.scenario();
    const Objective objective(ineq);
    if (options.restarts < 1) options.restarts = 1;

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> uniform(-kPi, kPi);

    AngleSettings best;
    double best_value = -std::numeric_limits<double>::infinity();
    bool best_converged = false;

    std::vector<double> term_sums(objective.tuples.size());
    for (int restart = 0; restart < options.restarts; ++restart) {
        AngleSettings current;
        current.angles.resize(static_cast<std::size_t>(s.parties()));
        for (int p = 0; p < s.parties(); ++p) {
            current.angles[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(s.settings(p)));
            for (int i = 0; i < s.settings(p); ++i)
                current.angles[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = uniform(rng);
        }
        if (restart == 0 && options.initial) {
            if (!options.initial->matches(s))
                throw InputError("initial angle settings do not match scenario " + s.str());
            current = *options.initial;
        }

        for (std::size_t t = 0; t < objective.tuples.size(); ++t) {
            double sum = 0;
            for (int p = 0; p < s.parties(); ++p)
                sum += current.angles[static_cast<std::size_t>(p)]
                                     [static_cast<std::size_t>(objective.tuples[t][static_cast<std::size_t>(p)])];
            term_sums[t] = sum;
        }

        double value = objective.value(current);
        bool converged = false;
        for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
            for (int p = 0; p < s.parties(); ++p) {
                for (int i = 0; i < s.settings(p); ++i) {
                    const auto& touched = objective.terms_of[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
                    if (touched.empty()) continue;
                    double& phi = current.angles[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
                    double c = 0, d = 0;
                    for (std::size_t t : touched) {
                        const double rest = term_sums[t] - phi;
                        c += objective.coeffs[t] * std::cos(rest);
                        d -= objective.coeffs[t] * std::sin(rest);
                    }
                    if (c == 0 && d == 0) continue;
                    const double updated = std::atan2(d, c);
                    for (std::size_t t : touched) term_sums[t] += updated - phi;
                    phi = updated;
                }
            }
            const double new_value = objective.value(current);
            const double improvement = new_value - value;
            value = new_value;
            if (options.sweep_trace) options.sweep_trace->emplace_back(restart, value);
            if (improvement < options.sweep_tolerance) {
                converged = true;
                break;
            }
        }

        if (value > best_value) {
            best_value = value;
            for (auto& party : current.angles)
                for (double& phi : party) phi = wrap_angle(phi);
            best = current;
            best_converged = converged;
        }
    }

    QuantumReport report;
    report.quantum_value = best_value;
    report.settings = best;
    report.state_tag = "GHZ_" + std::to_string(s.parties());
    report.seed = options.seed;
    report.restarts = options.restarts;
    report.converged = best_converged;
    report.lr_bound_value = to_double(lr_bound(ineq, enum_caps));
    report.violation_factor = report.lr_bound_value > 0 ? best_value / report.lr_bound_value
                                                        : std::numeric_limits<double>::quiet_NaN();
    // Equatorial observables are traceless, so the white-noise expectation
    // vanishes and v_crit reduces to lr / quantum.
    report.critical_visibility = best_value != 0 ? report.lr_bound_value / best_value
                                                 : std::numeric_limits<double>::quiet_NaN();
    if (s.parties() <= caps.max_parties_dense && ineq.term_count() > 0)
        report.max_eigenvalue = max_eigenvalue_bound(ineq, best, caps);
    else if (ineq.term_count() == 0)
        report.max_eigenvalue = 0;
    else
        report.max_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    return report;
}

VisibilityResult critical_visibility(const FullCorrelationInequality& ineq, double quantum_value,
                                     double noise_value, EnumerationCaps enum_caps) {
    const double lr = to_double(lr_bound(ineq, enum_caps));
    if (quantum_value <= noise_value)
        throw InputError("critical_visibility undefined: quantum value does not exceed the noise value");
    VisibilityResult result;
    result.v_crit = (lr - noise_value) / (quantum_value - noise_value);
    result.violation = quantum_value > lr;
    return result;
}

} // namespace bellforge
