#include "bellforge/scenario.hpp"

#include "bellforge/errors.hpp"

#include <limits>

namespace bellforge {

Scenario::Scenario(std::vector<int> settings_per_party) : settings_(std::move(settings_per_party)) {
    if (settings_.empty()) throw InputError("scenario needs at least one party");
    for (int m : settings_)
        if (m < 1) throw InputError("scenario needs at least one setting per party");
}

long long Scenario::dimension() const {
    long long d = 1;
    for (int m : settings_) {
        if (d > std::numeric_limits<long long>::max() / m)
            throw InputError("scenario dimension overflows");
        d *= m;
    }
    return d;
}

int Scenario::total_settings() const {
    int s = 0;
    for (int m : settings_) s += m;
    return s;
}

unsigned long long Scenario::vertex_count(bool reduced) const {
    int bits = total_settings() - (reduced ? 1 : 0);
    if (bits >= 64) throw InputError("vertex count overflows");
    return 1ull << bits;
}

bool Scenario::valid_tuple(std::span<const int> tuple) const {
    if (tuple.size() != settings_.size()) return false;
    for (std::size_t p = 0; p < settings_.size(); ++p)
        if (tuple[p] < 0 || tuple[p] >= settings_[p]) return false;
    return true;
}

bool Scenario::valid_partial_tuple(std::span<const int> tuple) const {
    if (tuple.size() != settings_.size()) return false;
    for (std::size_t p = 0; p < settings_.size(); ++p)
        if (tuple[p] != kAbsent && (tuple[p] < 0 || tuple[p] >= settings_[p])) return false;
    return true;
}

long long Scenario::tuple_index(std::span<const int> tuple) const {
    long long idx = 0;
    for (std::size_t p = 0; p < settings_.size(); ++p)
        idx = idx * settings_[p] + tuple[p];
    return idx;
}

SettingTuple Scenario::index_tuple(long long index) const {
    SettingTuple t(settings_.size());
    for (std::size_t p = settings_.size(); p-- > 0;) {
        t[p] = static_cast<int>(index % settings_[p]);
        index /= settings_[p];
    }
    return t;
}

Scenario Scenario::without_party(int party) const {
    if (party < 0 || party >= parties()) throw InputError("invalid party index");
    if (parties() == 1) throw InputError("cannot remove the only party");
    std::vector<int> s = settings_;
    s.erase(s.begin() + party);
    return Scenario(std::move(s));
}

Scenario Scenario::with_appended_party(int settings) const {
    std::vector<int> s = settings_;
    s.push_back(settings);
    return Scenario(std::move(s));
}

std::string Scenario::str() const {
    std::string out = "(";
    for (std::size_t p = 0; p < settings_.size(); ++p) {
        if (p) out += ",";
        out += std::to_string(settings_[p]);
    }
    out += ")";
    return out;
}

} // namespace bellforge
