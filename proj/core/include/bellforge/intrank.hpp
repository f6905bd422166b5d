#pragma once

#include "bellforge/rational.hpp"

#include <cstdint>
#include <vector>

namespace bellforge {

// Incremental fraction-free row echelon over exact integers. Rows are
// combined as r <- r*pivot - p*r[col] and renormalized by their content
// gcd, so entries stay polynomial in size; verdicts are exact.
class IntegerEchelon {
public:
    explicit IntegerEchelon(std::size_t columns);

    // Reduces the row against the current pivots and absorbs it if it is
    // independent. Returns true when the rank increased.
    bool add_row(std::vector<Integer> row);
    bool add_row(const std::vector<std::int8_t>& row);

    std::size_t rank() const { return rows_.size(); }
    std::size_t columns() const { return columns_; }
    bool full_rank() const { return rows_.size() == columns_; }

private:
    std::size_t columns_;
    std::vector<std::vector<Integer>> rows_; // sorted by pivot column
    std::vector<std::size_t> pivot_cols_;
};

// One-shot Bareiss (fraction-free) elimination rank. Slower than the
// incremental echelon on streamed rows; kept as the independent oracle.
std::size_t bareiss_rank(std::vector<std::vector<Integer>> matrix);

} // namespace bellforge
