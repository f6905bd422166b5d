#include "bellforge/vertex.hpp"

#include "bellforge/errors.hpp"

#include <cstdlib>

namespace bellforge {

EnumerationCaps EnumerationCaps::from_env() {
    EnumerationCaps caps;
    if (const char* raw = std::getenv("BELLFORGE_CAP")) {
        char* end = nullptr;
        long v = std::strtol(raw, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 62) caps.max_total_settings = static_cast<int>(v);
    }
    return caps;
}

Vertex::Vertex(std::vector<std::vector<std::int8_t>> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw InputError("vertex needs at least one party");
    for (const auto& party : outcomes_) {
        if (party.empty()) throw InputError("vertex party needs at least one outcome");
        for (std::int8_t o : party)
            if (o != 1 && o != -1) throw InputError("vertex outcomes must be +1 or -1");
    }
}

bool Vertex::belongs_to(const Scenario& s) const {
    if (parties() != s.parties()) return false;
    for (int p = 0; p < parties(); ++p)
        if (static_cast<int>(outcomes_[static_cast<std::size_t>(p)].size()) != s.settings(p)) return false;
    return true;
}

int Vertex::correlation(std::span<const int> tuple) const {
    int prod = 1;
    for (std::size_t p = 0; p < outcomes_.size(); ++p) prod *= outcomes_[p][static_cast<std::size_t>(tuple[p])];
    return prod;
}

std::vector<std::int8_t> Vertex::correlation_vector(const Scenario& s) const {
    const long long dim = s.dimension();
    std::vector<std::int8_t> vec(static_cast<std::size_t>(dim));
    SettingTuple tuple(static_cast<std::size_t>(s.parties()), 0);
    for (long long idx = 0; idx < dim; ++idx) {
        vec[static_cast<std::size_t>(idx)] = static_cast<std::int8_t>(correlation(tuple));
        // Mixed-radix increment, last party fastest.
        for (int p = s.parties() - 1; p >= 0; --p) {
            if (++tuple[static_cast<std::size_t>(p)] < s.settings(p)) break;
            tuple[static_cast<std::size_t>(p)] = 0;
        }
    }
    return vec;
}

Vertex Vertex::inversion_partner() const {
    auto flipped = outcomes_;
    for (auto& o : flipped[0]) o = static_cast<std::int8_t>(-o);
    return Vertex(std::move(flipped));
}

VertexRange::VertexRange(Scenario scenario, bool reduced, EnumerationCaps caps)
    : scenario_(std::move(scenario)), reduced_(reduced) {
    const int total = scenario_.total_settings();
    if (total > caps.max_total_settings)
        throw CapExceeded("vertex enumeration refused: scenario has " + std::to_string(total) +
                              " settings, cap is " + std::to_string(caps.max_total_settings) +
                              " (set BELLFORGE_CAP to raise)",
                          caps.max_total_settings, total);
    count_ = scenario_.vertex_count(reduced_);
}

Vertex VertexRange::at(unsigned long long index) const {
    const int total = scenario_.total_settings();
    const int bits = total - (reduced_ ? 1 : 0);
    std::vector<std::vector<std::int8_t>> outcomes(static_cast<std::size_t>(scenario_.parties()));
    // Slots run party-major; when reduced, slot 0 (party 0, setting 0) is
    // pinned to +1 and the remaining slots read counter bits MSB first.
    int unpinned = 0;
    for (int p = 0; p < scenario_.parties(); ++p) {
        auto& party = outcomes[static_cast<std::size_t>(p)];
        party.resize(static_cast<std::size_t>(scenario_.settings(p)));
        for (int i = 0; i < scenario_.settings(p); ++i) {
            if (reduced_ && p == 0 && i == 0) {
                party[0] = 1;
                continue;
            }
            const int shift = bits - 1 - unpinned;
            party[static_cast<std::size_t>(i)] = (index >> shift) & 1ull ? -1 : 1;
            ++unpinned;
        }
    }
    return Vertex(std::move(outcomes));
}

} // namespace bellforge
