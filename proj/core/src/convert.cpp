#include "bellforge/convert.hpp"

#include "bellforge/errors.hpp"

namespace bellforge {

GeneralInequality dehomogenize(const FullCorrelationInequality& ineq,
                               const std::map<int, int>& fixed_settings) {
    const Scenario& s = ineq.scenario();
    const int n = s.parties();
    for (const auto& [party, setting] : fixed_settings) {
        if (party < 0 || party >= n) throw InputError("dehomogenize: invalid party index");
        if (setting < 0 || setting >= s.settings(party))
            throw InputError("dehomogenize: invalid setting choice for party " + std::to_string(party + 1));
    }

    // New scenario: the fixed setting disappears; later settings shift down.
    std::vector<int> new_settings;
    std::vector<int> new_party_of(static_cast<std::size_t>(n), kAbsent);
    for (int p = 0; p < n; ++p) {
        const auto it = fixed_settings.find(p);
        const int m = s.settings(p) - (it != fixed_settings.end() ? 1 : 0);
        if (m > 0) {
            new_party_of[static_cast<std::size_t>(p)] = static_cast<int>(new_settings.size());
            new_settings.push_back(m);
        }
    }
    if (new_settings.empty())
        throw InputError("dehomogenize: substitution removes every party");
    Scenario out_scenario(new_settings);

    TermMap terms;
    Rational constant(0);
    for (const auto& [tuple, coeff] : ineq.terms()) {
        SettingTuple key(new_settings.size(), kAbsent);
        bool any = false;
        for (int p = 0; p < n; ++p) {
            const int i = tuple[static_cast<std::size_t>(p)];
            const auto it = fixed_settings.find(p);
            if (it != fixed_settings.end() && i == it->second) continue; // substituted by +1
            int j = i;
            if (it != fixed_settings.end() && i > it->second) --j;
            key[static_cast<std::size_t>(new_party_of[static_cast<std::size_t>(p)])] = j;
            any = true;
        }
        if (!any) {
            constant += coeff;
            continue;
        }
        auto [slot, inserted] = terms.emplace(std::move(key), coeff);
        if (!inserted) slot->second += coeff;
    }
    // Merged terms may cancel; the constructor drops zeros.
    return GeneralInequality(std::move(out_scenario), std::move(terms), std::move(constant), ineq.bound());
}

std::map<int, int> homogenization_fix_map(const GeneralInequality& ineq) {
    const Scenario& s = ineq.scenario();
    std::map<int, int> fix;
    for (int p = 0; p < s.parties(); ++p) {
        bool needed = ineq.constant() != 0;
        for (const auto& [tuple, coeff] : ineq.terms()) {
            (void)coeff;
            if (tuple[static_cast<std::size_t>(p)] == kAbsent) {
                needed = true;
                break;
            }
        }
        if (needed) fix[p] = s.settings(p); // the appended auxiliary setting
    }
    return fix;
}

FullCorrelationInequality homogenize(const GeneralInequality& ineq) {
    const Scenario& s = ineq.scenario();
    const int n = s.parties();
    const std::map<int, int> aux = homogenization_fix_map(ineq);

    std::vector<int> new_settings(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) new_settings[static_cast<std::size_t>(p)] = s.settings(p) + (aux.count(p) ? 1 : 0);
    Scenario out_scenario(new_settings);

    TermMap terms;
    for (const auto& [tuple, coeff] : ineq.terms()) {
        SettingTuple key(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) {
            const int i = tuple[static_cast<std::size_t>(p)];
            key[static_cast<std::size_t>(p)] = i == kAbsent ? s.settings(p) : i;
        }
        terms.emplace(std::move(key), coeff);
    }
    if (ineq.constant() != 0) {
        // The all-auxiliary tuple is fresh: no partial term can map onto it.
        SettingTuple key(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p) key[static_cast<std::size_t>(p)] = s.settings(p);
        terms.emplace(std::move(key), ineq.constant());
    }
    return FullCorrelationInequality(std::move(out_scenario), std::move(terms), ineq.bound());
}

} // namespace bellforge
