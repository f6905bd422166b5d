#pragma once

#include "bellforge/rational.hpp"
#include "bellforge/scenario.hpp"
#include "bellforge/vertex.hpp"

#include <map>
#include <utility>
#include <vector>

namespace bellforge {

using TermMap = std::map<SettingTuple, Rational>;

// Full-correlation (CHSH-type) Bell inequality: a sparse exact-rational
// coefficient tensor over setting tuples, bounded by a rational. On
// construction the inequality is rescaled to bound 1 when the bound is
// nonzero; the pre-scaling bound is kept as metadata. Immutable.
class FullCorrelationInequality {
public:
    FullCorrelationInequality(Scenario scenario, TermMap terms, Rational bound = Rational(1));

    // Convenience constructor for transcriptions written with 1-based
    // setting indices.
    static FullCorrelationInequality from_terms_1based(
        Scenario scenario, const std::vector<std::pair<SettingTuple, Rational>>& terms,
        Rational bound = Rational(1));

    const Scenario& scenario() const { return scenario_; }
    const TermMap& terms() const { return terms_; }
    const Rational& bound() const { return bound_; }
    const Rational& original_bound() const { return original_bound_; }

    std::size_t term_count() const { return terms_.size(); }
    Rational coefficient(const SettingTuple& tuple) const;

    // Sum of coefficient moduli: the maximum if every correlation could be
    // +/-1 independently.
    Rational algebraic_bound() const;

    // Exact value of the coefficient form at a deterministic strategy.
    Rational evaluate(const Vertex& v) const;

    // Coefficients negated (the inequality of the antipodal face).
    FullCorrelationInequality negated() const;

    bool operator==(const FullCorrelationInequality& other) const {
        return scenario_ == other.scenario_ && terms_ == other.terms_ && bound_ == other.bound_;
    }

private:
    Scenario scenario_;
    TermMap terms_;
    Rational bound_;
    Rational original_bound_;
};

// CH-type Bell inequality: terms over party subsets (kAbsent marks a party
// missing from a term) plus a constant. The all-absent key is disallowed;
// its weight lives in the constant. Normalized to bound 1 like the
// full-correlation type.
class GeneralInequality {
public:
    GeneralInequality(Scenario scenario, TermMap terms, Rational constant = Rational(0),
                      Rational bound = Rational(1));

    const Scenario& scenario() const { return scenario_; }
    const TermMap& terms() const { return terms_; }
    const Rational& constant() const { return constant_; }
    const Rational& bound() const { return bound_; }
    const Rational& original_bound() const { return original_bound_; }

    std::size_t term_count() const { return terms_.size(); }
    Rational algebraic_bound() const; // sum of |coeff| plus |constant|

    Rational evaluate(const Vertex& v) const;

    // True when every term covers all parties and the constant is zero;
    // such inequalities round-trip losslessly to FullCorrelationInequality.
    bool is_full_correlation() const;
    FullCorrelationInequality to_full_correlation() const;
    static GeneralInequality from_full_correlation(const FullCorrelationInequality& ineq);

    bool operator==(const GeneralInequality& other) const {
        return scenario_ == other.scenario_ && terms_ == other.terms_ &&
               constant_ == other.constant_ && bound_ == other.bound_;
    }

private:
    Scenario scenario_;
    TermMap terms_;
    Rational constant_;
    Rational bound_;
    Rational original_bound_;
};

// Term-map algebra shared by the lift and equivalence engines.
void add_scaled_into(TermMap& into, const TermMap& from, const Rational& factor);
TermMap scaled(const TermMap& terms, const Rational& factor);

} // namespace bellforge
