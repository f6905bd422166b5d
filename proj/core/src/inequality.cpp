#include "bellforge/inequality.hpp"

#include "bellforge/errors.hpp"

namespace bellforge {

namespace {

void drop_zeros(TermMap& terms) {
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->second == 0)
            it = terms.erase(it);
        else
            ++it;
    }
}

} // namespace

FullCorrelationInequality::FullCorrelationInequality(Scenario scenario, TermMap terms, Rational bound)
    : scenario_(std::move(scenario)), terms_(std::move(terms)), bound_(bound), original_bound_(bound) {
    for (const auto& [tuple, coeff] : terms_) {
        (void)coeff;
        if (!scenario_.valid_tuple(tuple))
            throw InputError("term setting tuple out of range for scenario " + scenario_.str());
    }
    drop_zeros(terms_);
    if (bound_ < 0)
        throw InputError("bound must be nonnegative (dividing by it would flip the inequality)");
    if (bound_ != 0 && bound_ != 1) {
        for (auto& [tuple, coeff] : terms_) {
            (void)tuple;
            coeff /= bound_;
        }
        bound_ = 1;
    }
}

FullCorrelationInequality FullCorrelationInequality::from_terms_1based(
    Scenario scenario, const std::vector<std::pair<SettingTuple, Rational>>& terms, Rational bound) {
    TermMap map;
    for (const auto& [tuple, coeff] : terms) {
        SettingTuple t = tuple;
        for (int& i : t) --i;
        if (!map.emplace(std::move(t), coeff).second)
            throw InputError("duplicate term in inequality transcription");
    }
    return FullCorrelationInequality(std::move(scenario), std::move(map), std::move(bound));
}

Rational FullCorrelationInequality::coefficient(const SettingTuple& tuple) const {
    auto it = terms_.find(tuple);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational FullCorrelationInequality::algebraic_bound() const {
    Rational sum(0);
    for (const auto& [tuple, coeff] : terms_) {
        (void)tuple;
        sum += rational_abs(coeff);
    }
    return sum;
}

Rational FullCorrelationInequality::evaluate(const Vertex& v) const {
    if (!v.belongs_to(scenario_))
        throw InputError("vertex does not belong to scenario " + scenario_.str());
    Rational value(0);
    for (const auto& [tuple, coeff] : terms_) {
        if (v.correlation(tuple) > 0)
            value += coeff;
        else
            value -= coeff;
    }
    return value;
}

FullCorrelationInequality FullCorrelationInequality::negated() const {
    TermMap terms;
    for (const auto& [tuple, coeff] : terms_) terms.emplace(tuple, -coeff);
    return FullCorrelationInequality(scenario_, std::move(terms), bound_);
}

GeneralInequality::GeneralInequality(Scenario scenario, TermMap terms, Rational constant, Rational bound)
    : scenario_(std::move(scenario)),
      terms_(std::move(terms)),
      constant_(std::move(constant)),
      bound_(bound),
      original_bound_(bound) {
    for (const auto& [tuple, coeff] : terms_) {
        (void)coeff;
        if (!scenario_.valid_partial_tuple(tuple))
            throw InputError("term partial tuple out of range for scenario " + scenario_.str());
        bool all_absent = true;
        for (int i : tuple) all_absent = all_absent && i == kAbsent;
        if (all_absent)
            throw InputError("the all-absent term key is disallowed; use the constant instead");
    }
    drop_zeros(terms_);
    if (bound_ < 0)
        throw InputError("bound must be nonnegative (dividing by it would flip the inequality)");
    if (bound_ != 0 && bound_ != 1) {
        for (auto& [tuple, coeff] : terms_) {
            (void)tuple;
            coeff /= bound_;
        }
        constant_ /= bound_;
        bound_ = 1;
    }
}

Rational GeneralInequality::algebraic_bound() const {
    Rational sum = rational_abs(constant_);
    for (const auto& [tuple, coeff] : terms_) {
        (void)tuple;
        sum += rational_abs(coeff);
    }
    return sum;
}

Rational GeneralInequality::evaluate(const Vertex& v) const {
    if (!v.belongs_to(scenario_))
        throw InputError("vertex does not belong to scenario " + scenario_.str());
    Rational value = constant_;
    for (const auto& [tuple, coeff] : terms_) {
        int prod = 1;
        for (std::size_t p = 0; p < tuple.size(); ++p)
            if (tuple[p] != kAbsent) prod *= v.outcome(static_cast<int>(p), tuple[p]);
        if (prod > 0)
            value += coeff;
        else
            value -= coeff;
    }
    return value;
}

bool GeneralInequality::is_full_correlation() const {
    if (constant_ != 0) return false;
    for (const auto& [tuple, coeff] : terms_) {
        (void)coeff;
        for (int i : tuple)
            if (i == kAbsent) return false;
    }
    return true;
}

FullCorrelationInequality GeneralInequality::to_full_correlation() const {
    if (!is_full_correlation())
        throw InputError("inequality has lower-order terms or a constant; not full-correlation");
    return FullCorrelationInequality(scenario_, terms_, bound_);
}

GeneralInequality GeneralInequality::from_full_correlation(const FullCorrelationInequality& ineq) {
    return GeneralInequality(ineq.scenario(), ineq.terms(), Rational(0), ineq.bound());
}

void add_scaled_into(TermMap& into, const TermMap& from, const Rational& factor) {
    if (factor == 0) return;
    for (const auto& [tuple, coeff] : from) {
        auto [it, inserted] = into.emplace(tuple, coeff * factor);
        if (!inserted) {
            it->second += coeff * factor;
            if (it->second == 0) into.erase(it);
        }
    }
}

TermMap scaled(const TermMap& terms, const Rational& factor) {
    TermMap out;
    if (factor == 0) return out;
    for (const auto& [tuple, coeff] : terms) out.emplace(tuple, coeff * factor);
    return out;
}

} // namespace bellforge
