#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bellforge {

// Setting tuple (one setting per party) and the partial-assignment key used
// by general inequalities. Setting indices are 0-based internally; the JSON
// interchange format is 1-based. In partial keys, kAbsent marks a party that
// does not occur in the term.
using SettingTuple = std::vector<int>;
inline constexpr int kAbsent = -1;

// Number of parties and settings per party. Identifies the full-correlation
// polytope the other modules work in.
class Scenario {
public:
    explicit Scenario(std::vector<int> settings_per_party);

    int parties() const { return static_cast<int>(settings_.size()); }
    int settings(int party) const { return settings_.at(static_cast<std::size_t>(party)); }
    const std::vector<int>& settings_per_party() const { return settings_; }

    // Product of settings counts: the dimension of the correlation space.
    long long dimension() const;
    // Sum of settings counts: the number of outcome bits of one strategy.
    int total_settings() const;
    // 2^(total-1) with the inversion-symmetry reduction, 2^total without.
    unsigned long long vertex_count(bool reduced) const;

    bool valid_tuple(std::span<const int> tuple) const;
    bool valid_partial_tuple(std::span<const int> tuple) const;

    // Party-major mixed-radix index of a tuple into [0, dimension()).
    long long tuple_index(std::span<const int> tuple) const;
    SettingTuple index_tuple(long long index) const;

    // Scenario with one party removed (used by the decomposition engine).
    Scenario without_party(int party) const;
    // Scenario with one extra party of `settings` settings appended.
    Scenario with_appended_party(int settings) const;

    std::string str() const; // "(2,2,2)"

    bool operator==(const Scenario& other) const = default;

private:
    std::vector<int> settings_;
};

} // namespace bellforge
