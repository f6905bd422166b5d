#include "bellforge/lift.hpp"

#include "bellforge/errors.hpp"

namespace bellforge {

namespace {

SettingTuple without_index(const SettingTuple& tuple, int party) {
    SettingTuple t = tuple;
    t.erase(t.begin() + party);
    return t;
}

SettingTuple with_index(const SettingTuple& tuple, int party, int setting) {
    SettingTuple t = tuple;
    t.insert(t.begin() + party, setting);
    return t;
}

} // namespace

PartyDecomposition decompose(const FullCorrelationInequality& ineq, int party) {
    const Scenario& s = ineq.scenario();
    if (party < 0 || party >= s.parties()) throw InputError("decompose: invalid party index");
    const Scenario reduced = s.without_party(party);
    const int m = s.settings(party);

    std::vector<TermMap> components(static_cast<std::size_t>(m));
    for (const auto& [tuple, coeff] : ineq.terms())
        components[static_cast<std::size_t>(tuple[static_cast<std::size_t>(party)])].emplace(
            without_index(tuple, party), coeff);

    PartyDecomposition d{s, party, ineq.bound(), {}};
    d.components.reserve(static_cast<std::size_t>(m));
    for (auto& terms : components)
        d.components.emplace_back(reduced, std::move(terms), Rational(1));
    return d;
}

FullCorrelationInequality recompose(const PartyDecomposition& d) {
    TermMap terms;
    for (int k = 0; k < static_cast<int>(d.components.size()); ++k)
        for (const auto& [tuple, coeff] : d.components[static_cast<std::size_t>(k)].terms())
            terms.emplace(with_index(tuple, d.party, k), coeff);
    return FullCorrelationInequality(d.scenario, std::move(terms), d.bound);
}

std::vector<FullCorrelationInequality> structure_values(const PartyDecomposition& d) {
    const int n_components = static_cast<int>(d.components.size());
    const Scenario reduced = d.scenario.without_party(d.party);
    std::vector<FullCorrelationInequality> out;
    out.reserve(static_cast<std::size_t>(n_components));
    for (int k = 0; k < n_components; ++k) {
        TermMap terms;
        for (int j = 0; j < n_components; ++j) {
            const Rational sign = (k >= 1 && j == k) ? Rational(-1) : Rational(1);
            add_scaled_into(terms, d.components[static_cast<std::size_t>(j)].terms(), sign);
        }
        out.emplace_back(reduced, std::move(terms), Rational(1));
    }
    return out;
}

FullCorrelationInequality recompose_via_structure(const PartyDecomposition& d) {
    const auto structure = structure_values(d);
    const int big_n = static_cast<int>(structure.size());
    const Rational half(1, 2);

    // Coefficient tensor of the new party's setting k, assembled from the
    // structure identity's prefactors.
    std::vector<TermMap> per_setting(static_cast<std::size_t>(big_n));
    // c_1 carries (-(N-3) S_1 + S_2 + ... + S_N)/2.
    add_scaled_into(per_setting[0], structure[0].terms(), half * Rational(-(big_n - 3)));
    for (int k = 1; k < big_n; ++k) add_scaled_into(per_setting[0], structure[static_cast<std::size_t>(k)].terms(), half);
    // c_k (k >= 2) carries (S_1 - S_k)/2.
    for (int k = 1; k < big_n; ++k) {
        add_scaled_into(per_setting[static_cast<std::size_t>(k)], structure[0].terms(), half);
        add_scaled_into(per_setting[static_cast<std::size_t>(k)], structure[static_cast<std::size_t>(k)].terms(), -half);
    }

    TermMap terms;
    for (int k = 0; k < big_n; ++k)
        for (const auto& [tuple, coeff] : per_setting[static_cast<std::size_t>(k)])
            terms.emplace(with_index(tuple, d.party, k), coeff);
    return FullCorrelationInequality(d.scenario, std::move(terms), d.bound);
}

LiftResult compose_lift(const std::vector<FullCorrelationInequality>& faces, const LiftOptions& options) {
    if (faces.empty()) throw InputError("compose_lift: need at least one face");
    const Scenario& base = faces[0].scenario();
    for (const auto& face : faces) {
        if (face.scenario() != base) throw InputError("compose_lift: faces live on different scenarios");
        if (face.bound() != 1) throw InputError("compose_lift: faces must be normalized to bound 1");
    }
    const int big_n = static_cast<int>(faces.size());
    const Rational half(1, 2);

    // I = ((-(N-3)c_1 + c_2 + ... + c_N)/2) B_1 + sum_{k>=2} ((c_1-c_k)/2) B_k,
    // collected per setting of the appended party.
    std::vector<TermMap> per_setting(static_cast<std::size_t>(big_n));
    add_scaled_into(per_setting[0], faces[0].terms(), half * Rational(-(big_n - 3)));
    for (int k = 1; k < big_n; ++k) add_scaled_into(per_setting[0], faces[static_cast<std::size_t>(k)].terms(), half);
    for (int k = 1; k < big_n; ++k) {
        add_scaled_into(per_setting[static_cast<std::size_t>(k)], faces[0].terms(), half);
        add_scaled_into(per_setting[static_cast<std::size_t>(k)], faces[static_cast<std::size_t>(k)].terms(), -half);
    }

    const Scenario extended = base.with_appended_party(big_n);
    TermMap terms;
    for (int k = 0; k < big_n; ++k)
        for (const auto& [tuple, coeff] : per_setting[static_cast<std::size_t>(k)]) {
            SettingTuple t = tuple;
            t.push_back(k);
            terms.emplace(std::move(t), coeff);
        }

    LiftResult result{FullCorrelationInequality(extended, std::move(terms), Rational(1)), false, {}};
    if (options.verify && extended.total_settings() <= options.caps.max_total_settings) {
        result.report = tightness(result.inequality, options.caps);
        result.verified = true;
    }
    return result;
}

LiftResult chsh_extend(const FullCorrelationInequality& b1, const FullCorrelationInequality& b2,
                       const LiftOptions& options) {
    return compose_lift({b1, b2}, options);
}

ConverseReport converse_check(const FullCorrelationInequality& ineq, EnumerationCaps caps) {
    const Scenario& s = ineq.scenario();
    const int last = s.parties() - 1;
    if (s.parties() < 2 || s.settings(last) != 2)
        throw InputError("converse_check: last party must have exactly two settings");
    const PartyDecomposition d = decompose(ineq, last);

    TermMap sum, diff;
    add_scaled_into(sum, d.components[0].terms(), Rational(1));
    add_scaled_into(sum, d.components[1].terms(), Rational(1));
    add_scaled_into(diff, d.components[0].terms(), Rational(1));
    add_scaled_into(diff, d.components[1].terms(), Rational(-1));

    const Scenario reduced = s.without_party(last);
    ConverseReport report{FullCorrelationInequality(reduced, std::move(sum), Rational(1)),
                          FullCorrelationInequality(reduced, std::move(diff), Rational(1)),
                          {},
                          {}};
    report.b1_report = tightness(report.b1, caps);
    report.b2_report = tightness(report.b2, caps);
    return report;
}

LiftResult four_term_extend(const FullCorrelationInequality& ineq,
                            const std::pair<SettingTuple, SettingTuple>& flip_pair,
                            const LiftOptions& options) {
    if (ineq.term_count() != 4) throw InputError("four_term_extend: inequality must have exactly 4 terms");
    if (flip_pair.first == flip_pair.second)
        throw InputError("four_term_extend: flip pair must name two distinct terms");
    for (const auto& key : {flip_pair.first, flip_pair.second})
        if (!ineq.terms().count(key))
            throw InputError("four_term_extend: flip pair names a term the inequality does not have");

    TermMap flipped = ineq.terms();
    flipped[flip_pair.first] = -flipped[flip_pair.first];
    flipped[flip_pair.second] = -flipped[flip_pair.second];
    FullCorrelationInequality b2(ineq.scenario(), std::move(flipped), Rational(1));
    if (lr_bound(b2, options.caps) != 1)
        throw InputError("four_term_extend: the sign-flipped companion is not a face (LR max != 1)");

    LiftResult result = chsh_extend(ineq, b2, options);
    if (result.inequality.term_count() != 4)
        throw Error("four_term_extend: internal error, result does not have 4 terms");
    return result;
}

std::optional<std::vector<std::int8_t>> face_sign_search(const FullCorrelationInequality& ineq, int party,
                                                         EnumerationCaps caps) {
    const Scenario& s = ineq.scenario();
    if (party < 0 || party >= s.parties()) throw InputError("face_sign_search: invalid party index");
    const int m = s.settings(party);
    const PartyDecomposition base = decompose(ineq, party);

    for (unsigned bits = 0; bits < (1u << m); ++bits) {
        PartyDecomposition d = base;
        for (int k = 0; k < m; ++k)
            if (bits >> static_cast<unsigned>(k) & 1u)
                d.components[static_cast<std::size_t>(k)] =
                    d.components[static_cast<std::size_t>(k)].negated();
        for (const auto& sv : structure_values(d)) {
            if (lr_bound(sv, caps) == 1) {
                std::vector<std::int8_t> signs(static_cast<std::size_t>(m));
                for (int k = 0; k < m; ++k)
                    signs[static_cast<std::size_t>(k)] = bits >> static_cast<unsigned>(k) & 1u ? -1 : 1;
                return signs;
            }
        }
    }
    return std::nullopt;
}

std::vector<FullCorrelationInequality> trivial_facets(int m) {
    if (m < 1) throw InputError("trivial_facets: need at least one setting");
    const Scenario s({m});
    std::vector<FullCorrelationInequality> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        TermMap terms;
        terms.emplace(SettingTuple{i}, Rational(1));
        out.emplace_back(s, std::move(terms), Rational(1));
    }
    return out;
}

FullCorrelationInequality trivial_face(const std::vector<Rational>& weights) {
    if (weights.empty()) throw InputError("trivial_face: need at least one weight");
    Rational total(0);
    for (const auto& w : weights) total += rational_abs(w);
    if (total != 1) throw InputError("trivial_face: weight moduli must sum to 1");
    const Scenario s({static_cast<int>(weights.size())});
    TermMap terms;
    for (int i = 0; i < static_cast<int>(weights.size()); ++i)
        if (weights[static_cast<std::size_t>(i)] != 0)
            terms.emplace(SettingTuple{i}, weights[static_cast<std::size_t>(i)]);
    return FullCorrelationInequality(s, std::move(terms), Rational(1));
}

} // namespace bellforge
