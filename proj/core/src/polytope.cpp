#include "bellforge/polytope.hpp"

#include "bellforge/equivalence.hpp"
#include "bellforge/errors.hpp"
#include "bellforge/intrank.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace bellforge {

namespace {

void check_enumeration_cap(const Scenario& s, const EnumerationCaps& caps, const char* op) {
    const int total = s.total_settings();
    if (total > caps.max_total_settings)
        throw CapExceeded(std::string(op) + " refused: scenario has " + std::to_string(total) +
                              " settings, cap is " + std::to_string(caps.max_total_settings) +
                              " (set BELLFORGE_CAP to raise)",
                          caps.max_total_settings, total);
}

struct CompiledTerm {
    SettingTuple tuple;
    Rational coeff;
};

} // namespace

Rational lr_bound(const FullCorrelationInequality& ineq, EnumerationCaps caps) {
    const Scenario& s = ineq.scenario();
    check_enumeration_cap(s, caps, "lr_bound");
    if (ineq.term_count() == 0) return Rational(0);

    const int n = s.parties();
    if (n == 1) return ineq.algebraic_bound(); // sum_k |f_k| with no other parties

    const int last = n - 1;
    std::vector<CompiledTerm> terms;
    terms.reserve(ineq.term_count());
    for (const auto& [tuple, coeff] : ineq.terms()) terms.push_back({tuple, coeff});

    // Outcome slots of parties 0..last-1, party-major; slot 0 is pinned to
    // +1 (a full flip of any party leaves sum_k |f_k| unchanged).
    int bits = 0;
    for (int p = 0; p < last; ++p) bits += s.settings(p);
    --bits;

    std::vector<std::vector<std::int8_t>> out(static_cast<std::size_t>(last));
    for (int p = 0; p < last; ++p) out[static_cast<std::size_t>(p)].resize(static_cast<std::size_t>(s.settings(p)));

    const int m_last = s.settings(last);
    std::vector<Rational> f(static_cast<std::size_t>(m_last));
    Rational best(0);
    bool first = true;

    const unsigned long long total = 1ull << bits;
    for (unsigned long long counter = 0; counter < total; ++counter) {
        int slot = 0;
        for (int p = 0; p < last; ++p) {
            for (int i = 0; i < s.settings(p); ++i) {
                if (slot == 0) {
                    out[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] = 1;
                } else {
                    const int shift = bits - slot;
                    out[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)] =
                        (counter >> shift) & 1ull ? -1 : 1;
                }
                ++slot;
            }
        }
        for (auto& fk : f) fk = 0;
        for (const auto& term : terms) {
            int prod = 1;
            for (int p = 0; p < last; ++p)
                prod *= out[static_cast<std::size_t>(p)][static_cast<std::size_t>(term.tuple[static_cast<std::size_t>(p)])];
            auto& fk = f[static_cast<std::size_t>(term.tuple[static_cast<std::size_t>(last)])];
            if (prod > 0)
                fk += term.coeff;
            else
                fk -= term.coeff;
        }
        Rational value(0);
        for (const auto& fk : f) value += rational_abs(fk);
        if (first || value > best) {
            best = value;
            first = false;
        }
    }
    return best;
}

Rational lr_bound_bruteforce(const FullCorrelationInequality& ineq, EnumerationCaps caps) {
    const VertexRange range(ineq.scenario(), /*reduced=*/false, caps);
    Rational best(0);
    bool first = true;
    for (const Vertex& v : range) {
        Rational value = ineq.evaluate(v);
        if (first || value > best) {
            best = value;
            first = false;
        }
    }
    return best;
}

Rational lr_bound_general(const GeneralInequality& ineq, EnumerationCaps caps) {
    const VertexRange range(ineq.scenario(), /*reduced=*/false, caps);
    Rational best(0);
    bool first = true;
    for (const Vertex& v : range) {
        Rational value = ineq.evaluate(v);
        if (first || value > best) {
            best = value;
            first = false;
        }
    }
    return best;
}

TightnessReport tightness(const FullCorrelationInequality& ineq, EnumerationCaps caps) {
    const Scenario& s = ineq.scenario();
    check_enumeration_cap(s, caps, "tightness");

    TightnessReport report;
    report.dimension = s.dimension();

    const Rational& bound = ineq.bound();
    IntegerEchelon echelon(static_cast<std::size_t>(report.dimension));
    std::set<std::vector<std::int8_t>> seen_rows;

    const VertexRange range(s, /*reduced=*/true, caps);
    Rational lr_max(0);
    bool first = true;
    for (const Vertex& v : range) {
        Rational value = ineq.evaluate(v);
        Rational mag = rational_abs(value);
        if (first || mag > lr_max) {
            lr_max = mag;
            first = false;
        }
        // The stream emits one strategy per inversion pair; the partner's
        // value is the negation, so |value| == |bound| means exactly one of
        // the pair saturates (both, when the bound is zero).
        bool saturates;
        if (bound == 0)
            saturates = value == 0;
        else
            saturates = mag == rational_abs(bound);
        if (!saturates) continue;
        report.saturating_count += bound == 0 ? 2 : 1;
        if (echelon.full_rank()) continue;
        std::vector<std::int8_t> row = v.correlation_vector(s);
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (row[c] == 0) continue;
            if (row[c] < 0)
                for (auto& x : row) x = static_cast<std::int8_t>(-x);
            break;
        }
        if (seen_rows.insert(row).second) echelon.add_row(row);
    }

    // lr_max over all strategies equals the max |value| over the reduced
    // stream (the two members of a pair take values +/-value). The stored
    // bound is 0 or 1 after normalization.
    report.lr_max = lr_max;
    report.is_face = report.saturating_count > 0 && report.lr_max == bound;
    report.rank = static_cast<long long>(echelon.rank());
    report.is_facet = report.is_face && report.rank == report.dimension;
    return report;
}

namespace {

// Solves M x = 1 exactly; nullopt when M is singular.
std::optional<std::vector<Rational>> solve_ones(std::vector<std::vector<Rational>> m) {
    const std::size_t d = m.size();
    std::vector<Rational> rhs(d, Rational(1));
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        while (pivot < d && m[pivot][col] == 0) ++pivot;
        if (pivot == d) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c < d; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<Rational> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = rhs[i] / m[i][i];
    return x;
}

} // namespace

FacetList enumerate_facets(const Scenario& scenario, FacetEnumerationGuards guards, EnumerationCaps caps) {
    const long long dim = scenario.dimension();
    if (dim > guards.max_dimension)
        throw CapExceeded("facet enumeration refused: dimension " + std::to_string(dim) +
                              " exceeds guard " + std::to_string(guards.max_dimension),
                          guards.max_dimension, dim);
    const unsigned long long vertices = scenario.vertex_count(/*reduced=*/true);
    if (vertices > guards.max_vertices)
        throw CapExceeded("facet enumeration refused: " + std::to_string(vertices) +
                              " reduced vertices exceed guard " + std::to_string(guards.max_vertices),
                          static_cast<long long>(guards.max_vertices), static_cast<long long>(vertices));

    // Distinct correlation vectors, antipodes included. Different strategies
    // can share a correlation vector once three or more parties are present.
    std::set<std::vector<std::int8_t>> point_set;
    for (const Vertex& v : VertexRange(scenario, /*reduced=*/true, caps)) {
        std::vector<std::int8_t> row = v.correlation_vector(scenario);
        std::vector<std::int8_t> neg(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) neg[c] = static_cast<std::int8_t>(-row[c]);
        point_set.insert(std::move(row));
        point_set.insert(std::move(neg));
    }
    const std::vector<std::vector<std::int8_t>> points(point_set.begin(), point_set.end());
    const std::size_t npts = points.size();
    const std::size_t d = static_cast<std::size_t>(dim);

    std::set<TermMap> candidates;
    if (npts >= d) {
        std::vector<std::size_t> combo(d);
        for (std::size_t i = 0; i < d; ++i) combo[i] = i;
        while (true) {
            std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) m[r][c] = static_cast<long>(points[combo[r]][c]);
            if (auto alpha = solve_ones(std::move(m))) {
                bool supporting = true;
                for (const auto& pt : points) {
                    Rational value(0);
                    for (std::size_t c = 0; c < d; ++c) {
                        if (pt[c] > 0)
                            value += (*alpha)[c];
                        else
                            value -= (*alpha)[c];
                    }
                    if (value > 1) {
                        supporting = false;
                        break;
                    }
                }
                if (supporting) {
                    TermMap terms;
                    for (std::size_t c = 0; c < d; ++c)
                        if ((*alpha)[c] != 0) terms.emplace(scenario.index_tuple(static_cast<long long>(c)), (*alpha)[c]);
                    candidates.insert(std::move(terms));
                }
            }
            // next combination
            bool advanced = false;
            for (std::size_t i = d; i-- > 0;) {
                if (combo[i] != i + npts - d) {
                    ++combo[i];
                    for (std::size_t j = i + 1; j < d; ++j) combo[j] = combo[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) break;
        }
    }

    FacetList list{scenario, {}, {}};
    for (const TermMap& terms : candidates) {
        FullCorrelationInequality candidate(scenario, terms, Rational(1));
        TightnessReport report = tightness(candidate, caps);
        if (report.is_facet) list.facets.push_back(std::move(candidate));
    }

    // Orbit classification under the equivalence group, keyed and ordered by
    // canonical form.
    std::map<TermMap, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < list.facets.size(); ++i)
        classes[canonical_form(list.facets[i]).terms()].push_back(i);
    for (auto& [canon, members] : classes) {
        (void)canon;
        list.orbit_classes.push_back(std::move(members));
    }
    return list;
}

} // namespace bellforge
