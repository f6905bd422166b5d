#pragma once

#include "bellforge/caps.hpp"
#include "bellforge/scenario.hpp"

#include <cstdint>
#include <iterator>
#include <span>
#include <vector>

namespace bellforge {

// One deterministic local strategy: a +/-1 outcome for every setting of
// every party. Correlation-polytope vertices are products of these outcomes.
class Vertex {
public:
    explicit Vertex(std::vector<std::vector<std::int8_t>> outcomes);

    int parties() const { return static_cast<int>(outcomes_.size()); }
    std::int8_t outcome(int party, int setting) const {
        return outcomes_[static_cast<std::size_t>(party)][static_cast<std::size_t>(setting)];
    }
    const std::vector<std::vector<std::int8_t>>& outcomes() const { return outcomes_; }

    bool belongs_to(const Scenario& s) const;

    // Product of the outcomes selected by the tuple, in {-1,+1}.
    int correlation(std::span<const int> tuple) const;

    // Dense correlation vector, one +/-1 entry per setting tuple of `s`,
    // ordered by Scenario::tuple_index.
    std::vector<std::int8_t> correlation_vector(const Scenario& s) const;

    // Same strategy with every outcome of party 0 flipped. Negates every
    // full-correlation product.
    Vertex inversion_partner() const;

    bool operator==(const Vertex& other) const = default;

private:
    std::vector<std::vector<std::int8_t>> outcomes_;
};

// Deterministic stream of all strategies of a scenario, in binary-counter
// order over outcome bits (party-major; party 0 setting 0 is the most
// significant bit; counter value 0 is the all +1 strategy). With
// reduced=true, party 0 setting 0 is pinned to +1, which emits exactly one
// strategy per inversion pair.
class VertexRange {
public:
    VertexRange(Scenario scenario, bool reduced, EnumerationCaps caps = EnumerationCaps::from_env());

    unsigned long long size() const { return count_; }
    Vertex at(unsigned long long index) const;
    const Scenario& scenario() const { return scenario_; }

    class iterator {
    public:
        using value_type = Vertex;
        using difference_type = std::ptrdiff_t;
        using iterator_category = std::input_iterator_tag;

        iterator(const VertexRange* range, unsigned long long index) : range_(range), index_(index) {}
        Vertex operator*() const { return range_->at(index_); }
        iterator& operator++() { ++index_; return *this; }
        iterator operator++(int) { iterator old = *this; ++index_; return old; }
        bool operator==(const iterator& other) const { return index_ == other.index_; }

    private:
        const VertexRange* range_;
        unsigned long long index_;
    };

    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, count_); }

private:
    Scenario scenario_;
    bool reduced_;
    unsigned long long count_;
};

inline VertexRange enumerate_vertices(const Scenario& s, bool reduced,
                                      EnumerationCaps caps = EnumerationCaps::from_env()) {
    return VertexRange(s, reduced, caps);
}

} // namespace bellforge
