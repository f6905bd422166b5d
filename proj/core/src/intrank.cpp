#include "bellforge/intrank.hpp"

#include <algorithm>

namespace bellforge {

namespace {

// Divides the row by the gcd of its entries (sign-normalized so the leading
// nonzero entry is positive).
void normalize_content(std::vector<Integer>& row) {
    Integer g(0);
    for (const Integer& x : row) {
        if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (g == 0) return;
    const Integer* lead = nullptr;
    for (const Integer& x : row)
        if (x != 0) {
            lead = &x;
            break;
        }
    if (lead && *lead < 0) g = -g;
    if (g != 1)
        for (Integer& x : row) x /= g;
}

std::size_t first_nonzero(const std::vector<Integer>& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) return c;
    return row.size();
}

} // namespace

IntegerEchelon::IntegerEchelon(std::size_t columns) : columns_(columns) {}

bool IntegerEchelon::add_row(std::vector<Integer> row) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        const std::size_t col = pivot_cols_[k];
        if (row[col] == 0) continue;
        const Integer pivot = rows_[k][col];
        const Integer factor = row[col];
        for (std::size_t c = 0; c < columns_; ++c) row[c] = row[c] * pivot - rows_[k][c] * factor;
        normalize_content(row);
    }
    const std::size_t col = first_nonzero(row);
    if (col == columns_) return false;
    normalize_content(row);
    auto pos = std::upper_bound(pivot_cols_.begin(), pivot_cols_.end(), col);
    const std::size_t idx = static_cast<std::size_t>(pos - pivot_cols_.begin());
    pivot_cols_.insert(pos, col);
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(idx), std::move(row));
    return true;
}

bool IntegerEchelon::add_row(const std::vector<std::int8_t>& row) {
    std::vector<Integer> r(row.size());
    for (std::size_t c = 0; c < row.size(); ++c) r[c] = static_cast<long>(row[c]);
    return add_row(std::move(r));
}

std::size_t bareiss_rank(std::vector<std::vector<Integer>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    Integer prev(1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Integer t = m[i][j] * m[rank][col] - m[i][col] * m[rank][j];
                mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

} // namespace bellforge
