#include "bellforge/equivalence.hpp"

#include "bellforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace bellforge {

namespace {

void validate(const GroupElement& g, const Scenario& s) {
    const int n = s.parties();
    if (static_cast<int>(g.source_party.size()) != n || static_cast<int>(g.actions.size()) != n)
        throw InputError("group element shape does not match scenario " + s.str());
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int q = 0; q < n; ++q) {
        const int p = g.source_party[static_cast<std::size_t>(q)];
        if (p < 0 || p >= n || used[static_cast<std::size_t>(p)])
            throw InputError("group element party permutation is invalid");
        used[static_cast<std::size_t>(p)] = true;
        if (s.settings(p) != s.settings(q))
            throw InputError("party permutation may only exchange parties with equal setting counts");
    }
    for (int p = 0; p < n; ++p) {
        const auto& a = g.actions[static_cast<std::size_t>(p)];
        const int m = s.settings(p);
        if (static_cast<int>(a.new_setting.size()) != m || static_cast<int>(a.sign.size()) != m)
            throw InputError("party action shape does not match scenario");
        std::vector<bool> hit(static_cast<std::size_t>(m), false);
        for (int i = 0; i < m; ++i) {
            const int j = a.new_setting[static_cast<std::size_t>(i)];
            if (j < 0 || j >= m || hit[static_cast<std::size_t>(j)])
                throw InputError("setting permutation is invalid");
            hit[static_cast<std::size_t>(j)] = true;
            if (a.sign[static_cast<std::size_t>(i)] != 1 && a.sign[static_cast<std::size_t>(i)] != -1)
                throw InputError("setting signs must be +1 or -1");
        }
    }
}

} // namespace

GroupElement identity_element(const Scenario& s) {
    GroupElement g;
    g.source_party.resize(static_cast<std::size_t>(s.parties()));
    std::iota(g.source_party.begin(), g.source_party.end(), 0);
    g.actions.resize(static_cast<std::size_t>(s.parties()));
    for (int p = 0; p < s.parties(); ++p) {
        auto& a = g.actions[static_cast<std::size_t>(p)];
        a.new_setting.resize(static_cast<std::size_t>(s.settings(p)));
        std::iota(a.new_setting.begin(), a.new_setting.end(), 0);
        a.sign.assign(static_cast<std::size_t>(s.settings(p)), 1);
    }
    return g;
}

GroupElement compose(const GroupElement& after, const GroupElement& first) {
    const std::size_t n = first.source_party.size();
    if (after.source_party.size() != n) throw InputError("group elements act on different scenarios");
    // Position of old party p under `first`.
    std::vector<int> pos_of(n);
    for (std::size_t q = 0; q < n; ++q) pos_of[static_cast<std::size_t>(first.source_party[q])] = static_cast<int>(q);

    GroupElement out;
    out.source_party.resize(n);
    out.actions.resize(n);
    for (std::size_t q = 0; q < n; ++q)
        out.source_party[q] = first.source_party[static_cast<std::size_t>(after.source_party[q])];
    for (std::size_t p = 0; p < n; ++p) {
        const auto& a1 = first.actions[p];
        const auto& a2 = after.actions[static_cast<std::size_t>(pos_of[p])];
        const std::size_t m = a1.new_setting.size();
        auto& a = out.actions[p];
        a.new_setting.resize(m);
        a.sign.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const int mid = a1.new_setting[i];
            a.new_setting[i] = a2.new_setting[static_cast<std::size_t>(mid)];
            a.sign[i] = static_cast<std::int8_t>(a1.sign[i] * a2.sign[static_cast<std::size_t>(mid)]);
        }
    }
    return out;
}

GroupElement inverse(const GroupElement& g) {
    const std::size_t n = g.source_party.size();
    GroupElement out;
    out.source_party.resize(n);
    out.actions.resize(n);
    for (std::size_t q = 0; q < n; ++q)
        out.source_party[static_cast<std::size_t>(g.source_party[q])] = static_cast<int>(q);
    for (std::size_t q = 0; q < n; ++q) {
        const auto& a = g.actions[static_cast<std::size_t>(g.source_party[q])];
        const std::size_t m = a.new_setting.size();
        auto& inv = out.actions[q];
        inv.new_setting.resize(m);
        inv.sign.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = static_cast<std::size_t>(a.new_setting[i]);
            inv.new_setting[j] = static_cast<int>(i);
            inv.sign[j] = a.sign[i];
        }
    }
    return out;
}

GroupElement random_element(const Scenario& s, std::mt19937_64& rng) {
    const int n = s.parties();
    GroupElement g = identity_element(s);
    // Shuffle positions within each equal-setting-count class.
    std::map<int, std::vector<int>> classes;
    for (int q = 0; q < n; ++q) classes[s.settings(q)].push_back(q);
    for (auto& [m, members] : classes) {
        (void)m;
        std::vector<int> shuffled = members;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng() % i]);
        for (std::size_t k = 0; k < members.size(); ++k)
            g.source_party[static_cast<std::size_t>(members[k])] = shuffled[k];
    }
    for (int p = 0; p < n; ++p) {
        auto& a = g.actions[static_cast<std::size_t>(p)];
        for (std::size_t i = a.new_setting.size(); i > 1; --i)
            std::swap(a.new_setting[i - 1], a.new_setting[rng() % i]);
        for (auto& sign : a.sign) sign = rng() & 1 ? 1 : -1;
    }
    return g;
}

FullCorrelationInequality act(const GroupElement& g, const FullCorrelationInequality& ineq) {
    const Scenario& s = ineq.scenario();
    validate(g, s);
    const int n = s.parties();
    TermMap out;
    SettingTuple u(static_cast<std::size_t>(n));
    for (const auto& [tuple, coeff] : ineq.terms()) {
        int sign = 1;
        for (int p = 0; p < n; ++p)
            sign *= g.actions[static_cast<std::size_t>(p)].sign[static_cast<std::size_t>(tuple[static_cast<std::size_t>(p)])];
        for (int q = 0; q < n; ++q) {
            const int p = g.source_party[static_cast<std::size_t>(q)];
            u[static_cast<std::size_t>(q)] =
                g.actions[static_cast<std::size_t>(p)].new_setting[static_cast<std::size_t>(tuple[static_cast<std::size_t>(p)])];
        }
        out.emplace(u, sign > 0 ? coeff : Rational(-coeff));
    }
    return FullCorrelationInequality(s, std::move(out), ineq.bound());
}

OrbitFingerprint orbit_fingerprint(const FullCorrelationInequality& ineq) {
    OrbitFingerprint fp;
    fp.term_count = ineq.term_count();
    fp.algebraic_bound = ineq.algebraic_bound();
    fp.abs_coefficients.reserve(fp.term_count);
    for (const auto& [tuple, coeff] : ineq.terms()) {
        (void)tuple;
        fp.abs_coefficients.push_back(rational_abs(coeff));
    }
    std::sort(fp.abs_coefficients.begin(), fp.abs_coefficients.end());
    return fp;
}

namespace detail {

double group_order(const Scenario& s) {
    double order = 1;
    std::map<int, int> class_sizes;
    for (int p = 0; p < s.parties(); ++p) {
        const int m = s.settings(p);
        ++class_sizes[m];
        for (int k = 2; k <= m; ++k) order *= k;
        order *= std::pow(2.0, m);
    }
    for (const auto& [m, count] : class_sizes) {
        (void)m;
        for (int k = 2; k <= count; ++k) order *= k;
    }
    return order;
}

namespace {

// Sparse dense-lex form: entries sorted by party-major tuple index.
using SparseEntry = std::pair<long long, Rational>;
using SparseForm = std::vector<SparseEntry>;

// Dense lexicographic comparison of two sparse forms. Missing entries are
// zeros: a nonzero negative value beats an implicit zero, a positive loses.
int compare_sparse(const SparseForm& a, const SparseForm& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        const long long ai = i < a.size() ? a[i].first : -1;
        const long long bj = j < b.size() ? b[j].first : -1;
        if (i < a.size() && (j == b.size() || ai < bj)) {
            const int sign = sgn(a[i].second);
            return sign < 0 ? -1 : 1;
        }
        if (j < b.size() && (i == a.size() || bj < ai)) {
            const int sign = sgn(b[j].second);
            return sign < 0 ? 1 : -1;
        }
        const int c = cmp(a[i].second, b[j].second);
        if (c != 0) return c < 0 ? -1 : 1;
        ++i;
        ++j;
    }
    return 0;
}

FullCorrelationInequality from_sparse(const Scenario& s, const SparseForm& form, const Rational& bound) {
    TermMap terms;
    for (const auto& [idx, coeff] : form) terms.emplace(s.index_tuple(idx), coeff);
    return FullCorrelationInequality(s, std::move(terms), bound);
}

struct CompiledTerm {
    SettingTuple tuple;
    Rational coeff;
};

std::vector<CompiledTerm> compile(const FullCorrelationInequality& ineq) {
    std::vector<CompiledTerm> terms;
    terms.reserve(ineq.term_count());
    for (const auto& [tuple, coeff] : ineq.terms()) terms.push_back({tuple, coeff});
    return terms;
}

// Applies (source_party, perms, signs) to the compiled terms and returns the
// sorted sparse form.
SparseForm transform_terms(const Scenario& s, const std::vector<CompiledTerm>& terms,
                           const std::vector<int>& source_party,
                           const std::vector<const std::vector<int>*>& perm_of_party,
                           const std::vector<unsigned>& sign_bits_of_party) {
    const int n = s.parties();
    SparseForm form;
    form.reserve(terms.size());
    for (const auto& term : terms) {
        int sign = 1;
        for (int p = 0; p < n; ++p)
            if (sign_bits_of_party[static_cast<std::size_t>(p)] >>
                    static_cast<unsigned>(term.tuple[static_cast<std::size_t>(p)]) &
                1u)
                sign = -sign;
        long long idx = 0;
        for (int q = 0; q < n; ++q) {
            const int p = source_party[static_cast<std::size_t>(q)];
            const int j = (*perm_of_party[static_cast<std::size_t>(p)])[static_cast<std::size_t>(
                term.tuple[static_cast<std::size_t>(p)])];
            idx = idx * s.settings(q) + j;
        }
        form.emplace_back(idx, sign > 0 ? term.coeff : Rational(-term.coeff));
    }
    std::sort(form.begin(), form.end(),
              [](const SparseEntry& x, const SparseEntry& y) { return x.first < y.first; });
    return form;
}

std::vector<std::vector<int>> all_permutations(int m) {
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace

FullCorrelationInequality canonical_full_scan(const FullCorrelationInequality& ineq) {
    const Scenario& s = ineq.scenario();
    const int n = s.parties();
    const auto terms = compile(ineq);
    if (terms.empty()) return ineq;

    std::map<int, std::vector<std::vector<int>>> perms_by_m;
    for (int p = 0; p < n; ++p)
        if (!perms_by_m.count(s.settings(p))) perms_by_m[s.settings(p)] = all_permutations(s.settings(p));

    // Party assignments: permutations within each equal-m class.
    std::map<int, std::vector<int>> classes;
    for (int q = 0; q < n; ++q) classes[s.settings(q)].push_back(q);

    SparseForm best;
    bool have_best = false;

    std::vector<int> source_party(static_cast<std::size_t>(n));
    std::vector<std::vector<int>> class_perm;
    std::vector<std::vector<int>> class_positions;
    for (const auto& [m, members] : classes) {
        (void)m;
        class_positions.push_back(members);
        class_perm.push_back(members);
    }

    std::vector<const std::vector<int>*> perm_of_party(static_cast<std::size_t>(n));
    std::vector<unsigned> sign_bits(static_cast<std::size_t>(n), 0);

    // Odometer over per-party (perm index, sign bits).
    auto scan_actions = [&]() {
        std::vector<std::size_t> perm_idx(static_cast<std::size_t>(n), 0);
        std::vector<unsigned> sign_val(static_cast<std::size_t>(n), 0);
        while (true) {
            for (int p = 0; p < n; ++p) {
                perm_of_party[static_cast<std::size_t>(p)] =
                    &perms_by_m[s.settings(p)][perm_idx[static_cast<std::size_t>(p)]];
                sign_bits[static_cast<std::size_t>(p)] = sign_val[static_cast<std::size_t>(p)];
            }
            SparseForm form = transform_terms(s, terms, source_party, perm_of_party, sign_bits);
            if (!have_best || compare_sparse(form, best) < 0) {
                best = std::move(form);
                have_best = true;
            }
            // advance odometer: signs fastest, then perms, party by party
            int p = 0;
            for (; p < n; ++p) {
                auto& sv = sign_val[static_cast<std::size_t>(p)];
                if (sv + 1 < (1u << s.settings(p))) {
                    ++sv;
                    break;
                }
                sv = 0;
                auto& pi = perm_idx[static_cast<std::size_t>(p)];
                if (pi + 1 < perms_by_m[s.settings(p)].size()) {
                    ++pi;
                    break;
                }
                pi = 0;
            }
            if (p == n) break;
        }
    };

    // Odometer over party assignments (per class, next_permutation).
    std::function<void(std::size_t)> scan_classes = [&](std::size_t c) {
        if (c == class_positions.size()) {
            scan_actions();
            return;
        }
        std::vector<int>& perm = class_perm[c];
        std::sort(perm.begin(), perm.end());
        do {
            for (std::size_t k = 0; k < perm.size(); ++k)
                source_party[static_cast<std::size_t>(class_positions[c][k])] = perm[k];
            scan_classes(c + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    scan_classes(0);

    return from_sparse(s, best, ineq.bound());
}

FullCorrelationInequality canonical_binary(const FullCorrelationInequality& ineq) {
    const Scenario& s = ineq.scenario();
    const int n = s.parties();
    const auto& term_map = ineq.terms();
    const std::size_t r = term_map.size();
    if (r == 0) return ineq;

    // Terms become bit masks (party p's bit set when its setting is 2).
    std::vector<unsigned> masks;
    std::vector<Rational> coeffs;
    masks.reserve(r);
    coeffs.reserve(r);
    for (const auto& [tuple, coeff] : term_map) {
        unsigned mask = 0;
        for (int p = 0; p < n; ++p)
            if (tuple[static_cast<std::size_t>(p)] == 1) mask |= 1u << p;
        masks.push_back(mask);
        coeffs.push_back(coeff);
    }

    // Reachable term-sign patterns form the F2 span of the per-setting flip
    // indicators (flipping setting b of party p negates exactly the terms
    // whose p-th setting is b).
    std::vector<std::uint64_t> basis;
    auto insert_into_basis = [&](std::uint64_t v) {
        for (std::uint64_t b : basis) v = std::min(v, v ^ b);
        if (v) basis.push_back(v);
        std::sort(basis.rbegin(), basis.rend());
    };
    for (int p = 0; p < n; ++p)
        for (int b = 0; b < 2; ++b) {
            std::uint64_t v = 0;
            for (std::size_t i = 0; i < r; ++i)
                if (((masks[i] >> p) & 1u) == static_cast<unsigned>(b)) v |= 1ull << i;
            insert_into_basis(v);
        }
    std::vector<std::uint64_t> patterns{0};
    for (std::uint64_t b : basis) {
        const std::size_t sz = patterns.size();
        for (std::size_t i = 0; i < sz; ++i) patterns.push_back(patterns[i] ^ b);
    }

    Rational maxabs(0);
    for (const auto& c : coeffs) maxabs = std::max(maxabs, rational_abs(c));

    std::vector<int> order(static_cast<std::size_t>(n));
    SparseForm best;
    bool have_best = false;

    std::vector<std::pair<long long, std::size_t>> pos; // (position, term id)
    for (std::size_t star = 0; star < r; ++star) {
        if (rational_abs(coeffs[star]) != maxabs) continue;
        // Pin term `star` to the all-ones tuple: every party's setting
        // permutation is then forced, and positions depend only on the
        // party order.
        std::iota(order.begin(), order.end(), 0);
        do {
            pos.clear();
            pos.reserve(r);
            for (std::size_t i = 0; i < r; ++i) {
                const unsigned u = masks[i] ^ masks[star];
                long long position = 0;
                for (int q = 0; q < n; ++q)
                    if ((u >> order[static_cast<std::size_t>(q)]) & 1u) position |= 1ll << (n - 1 - q);
                pos.emplace_back(position, i);
            }
            std::sort(pos.begin(), pos.end());
            // Among reachable sign patterns keeping term `star` negative,
            // pick the value sequence minimal in position order.
            const std::uint64_t* best_pattern = nullptr;
            for (const std::uint64_t& pattern : patterns) {
                const bool star_neg = (coeffs[star] < 0) != ((pattern >> star) & 1ull);
                if (!star_neg) continue;
                if (!best_pattern) {
                    best_pattern = &pattern;
                    continue;
                }
                for (const auto& [position, i] : pos) {
                    (void)position;
                    const Rational a = (pattern >> i) & 1ull ? Rational(-coeffs[i]) : coeffs[i];
                    const Rational b = (*best_pattern >> i) & 1ull ? Rational(-coeffs[i]) : coeffs[i];
                    const int c = cmp(a, b);
                    if (c < 0) {
                        best_pattern = &pattern;
                        break;
                    }
                    if (c > 0) break;
                }
            }
            if (!best_pattern) continue; // unreachable: the all-ones flip is in the span
            SparseForm form;
            form.reserve(r);
            for (const auto& [position, i] : pos)
                form.emplace_back(position,
                                  (*best_pattern >> i) & 1ull ? Rational(-coeffs[i]) : coeffs[i]);
            if (!have_best || compare_sparse(form, best) < 0) {
                best = std::move(form);
                have_best = true;
            }
        } while (std::next_permutation(order.begin(), order.end()));
    }

    return from_sparse(s, best, ineq.bound());
}

namespace {

// Generic branch-and-bound over (party, setting permutation, signs) choices
// per new position. The bound packs each prefix block's values, negated and
// sorted by magnitude, at the block start; that is a valid lexicographic
// lower bound for every completion.
struct BacktrackState {
    const Scenario* scenario;
    std::vector<CompiledTerm> terms;
    std::map<int, std::vector<std::vector<int>>> perms_by_m;
    SparseForm best;
    bool have_best = false;

    std::vector<int> chosen_party;                  // per position
    std::vector<const std::vector<int>*> chosen_perm;
    std::vector<unsigned> chosen_signs;

    // Per-term prefix index and sign under the current partial assignment.
    struct PartialTerm {
        long long prefix = 0;
        int sign = 1;
    };

    SparseForm bound(int depth, const std::vector<PartialTerm>& partial) const {
        // Block size: product of radices of unassigned positions.
        long long rest = 1;
        for (int q = depth; q < scenario->parties(); ++q) rest *= scenario->settings(q);
        std::map<long long, std::vector<Rational>> blocks;
        for (std::size_t i = 0; i < terms.size(); ++i)
            blocks[partial[i].prefix].push_back(rational_abs(terms[i].coeff));
        SparseForm out;
        for (auto& [prefix, values] : blocks) {
            std::sort(values.begin(), values.end(), std::greater<>());
            long long base = prefix * rest;
            for (std::size_t k = 0; k < values.size(); ++k)
                out.emplace_back(base + static_cast<long long>(k), Rational(-values[k]));
        }
        return out;
    }

    void leaf(const std::vector<PartialTerm>& partial) {
        SparseForm form;
        form.reserve(terms.size());
        for (std::size_t i = 0; i < terms.size(); ++i)
            form.emplace_back(partial[i].prefix,
                              partial[i].sign > 0 ? terms[i].coeff : Rational(-terms[i].coeff));
        std::sort(form.begin(), form.end(),
                  [](const SparseEntry& x, const SparseEntry& y) { return x.first < y.first; });
        if (!have_best || compare_sparse(form, best) < 0) {
            best = std::move(form);
            have_best = true;
        }
    }

    void search(int depth, std::vector<bool>& used, const std::vector<PartialTerm>& partial) {
        const int n = scenario->parties();
        if (depth == n) {
            leaf(partial);
            return;
        }
        const int m = scenario->settings(depth);

        struct Child {
            int party;
            const std::vector<int>* perm;
            unsigned signs;
            std::vector<PartialTerm> partial;
            SparseForm bound_form;
        };
        std::vector<Child> children;
        for (int p = 0; p < n; ++p) {
            if (used[static_cast<std::size_t>(p)] || scenario->settings(p) != m) continue;
            for (const auto& perm : perms_by_m.at(m)) {
                for (unsigned signs = 0; signs < (1u << m); ++signs) {
                    Child child;
                    child.party = p;
                    child.perm = &perm;
                    child.signs = signs;
                    child.partial = partial;
                    for (std::size_t i = 0; i < terms.size(); ++i) {
                        const int old_setting = terms[i].tuple[static_cast<std::size_t>(p)];
                        child.partial[i].prefix =
                            child.partial[i].prefix * m + perm[static_cast<std::size_t>(old_setting)];
                        if (signs >> static_cast<unsigned>(old_setting) & 1u) child.partial[i].sign *= -1;
                    }
                    child.bound_form = bound(depth + 1, child.partial);
                    children.push_back(std::move(child));
                }
            }
        }
        std::sort(children.begin(), children.end(), [](const Child& a, const Child& b) {
            return compare_sparse(a.bound_form, b.bound_form) < 0;
        });
        for (const Child& child : children) {
            if (have_best && compare_sparse(child.bound_form, best) >= 0) continue;
            used[static_cast<std::size_t>(child.party)] = true;
            search(depth + 1, used, child.partial);
            used[static_cast<std::size_t>(child.party)] = false;
        }
    }
};

} // namespace

FullCorrelationInequality canonical_backtracking(const FullCorrelationInequality& ineq) {
    if (ineq.term_count() == 0) return ineq;
    BacktrackState state;
    state.scenario = &ineq.scenario();
    state.terms = compile(ineq);
    const Scenario& s = ineq.scenario();
    for (int p = 0; p < s.parties(); ++p)
        if (!state.perms_by_m.count(s.settings(p)))
            state.perms_by_m[s.settings(p)] = all_permutations(s.settings(p));
    std::vector<bool> used(static_cast<std::size_t>(s.parties()), false);
    std::vector<BacktrackState::PartialTerm> partial(state.terms.size());
    state.search(0, used, partial);
    return from_sparse(s, state.best, ineq.bound());
}

} // namespace detail

FullCorrelationInequality canonical_form(const FullCorrelationInequality& ineq, CanonicalGuards guards) {
    const Scenario& s = ineq.scenario();
    if (s.total_settings() > guards.max_total_settings)
        throw CapExceeded("canonical_form refused: scenario has " +
                              std::to_string(s.total_settings()) + " settings, guard is " +
                              std::to_string(guards.max_total_settings),
                          guards.max_total_settings, s.total_settings());
    if (ineq.term_count() == 0) return ineq;

    const double order = detail::group_order(s);
    if (order <= static_cast<double>(1 << 20)) return detail::canonical_full_scan(ineq);

    bool all_two = true;
    for (int p = 0; p < s.parties(); ++p) all_two = all_two && s.settings(p) == 2;
    if (all_two && ineq.term_count() <= 6 && s.parties() <= 10)
        return detail::canonical_binary(ineq);

    return detail::canonical_backtracking(ineq);
}

bool equivalent(const FullCorrelationInequality& a, const FullCorrelationInequality& b,
                CanonicalGuards guards) {
    if (a.scenario() != b.scenario()) return false;
    if (!(orbit_fingerprint(a) == orbit_fingerprint(b))) return false;
    return canonical_form(a, guards) == canonical_form(b, guards);
}

} // namespace bellforge
