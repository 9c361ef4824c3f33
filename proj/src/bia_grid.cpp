#include "pir/bia_grid.hpp"

#include <stdexcept>
#include <string>

namespace pir {

CoherenceGrid CoherenceGrid::build(int n) {
    if (n < 2) throw std::invalid_argument("grid needs n >= 2, got " + std::to_string(n));
    CoherenceGrid grid(n);
    grid.groups_.resize(n);
    // Row-major sweep visits cells in ascending linear index, so each group
    // comes out already canonically ordered.
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
            if (r == n && c == n) continue;
            int j = ((c - r) % n + n) % n;  // 0-based group
            grid.groups_[j].push_back(Cell{r, c});
        }
    }
    return grid;
}

const std::vector<Cell>& CoherenceGrid::group(int j) const {
    if (j < 1 || j > n_) throw std::invalid_argument("group index out of range");
    return groups_[j - 1];
}

std::size_t CoherenceGrid::total_cells() const {
    return static_cast<std::size_t>(n_) * n_ - 1;
}

int shift_perm(int shift, int x, int n) {
    if (x < 1 || x > n) throw std::invalid_argument("shift_perm: index out of range");
    if (shift < 0 || shift >= n) throw std::invalid_argument("shift_perm: bad shift");
    return (x - 1 + shift) % n + 1;
}

FieldElement answer_at_cell(std::span<const FieldElement> w1_block,
                            std::span<const FieldElement> w2_block, int n, Cell cell,
                            int lane) {
    if (lane < 1 || lane > n) throw std::invalid_argument("lane out of range");
    if (cell.row < 1 || cell.row > n || cell.col < 1 || cell.col > n ||
        (cell.row == n && cell.col == n)) {
        throw std::invalid_argument("cell out of range");
    }
    std::size_t block_len = static_cast<std::size_t>(n) * (n - 1);
    if (w1_block.size() != block_len || w2_block.size() != block_len) {
        throw std::invalid_argument("block length must be n*(n-1)");
    }
    FieldElement acc = zero(w1_block[0].field);
    if (cell.row <= n - 1) {
        acc = add(acc, w1_block[(cell.row - 1) * n + (lane - 1)]);
    }
    if (cell.col <= n - 1) {
        acc = add(acc, w2_block[(cell.col - 1) * n + (lane - 1)]);
    }
    return acc;
}

FieldElement answer_at_cell(const MessageStore& store, Cell cell, int lane) {
    if (store.message_count() != 2) {
        throw std::invalid_argument("cell answers are defined for 2-message stores");
    }
    // Infer n from the block length n*(n-1).
    std::size_t len = store.length();
    int n = 2;
    while (static_cast<std::size_t>(n) * (n - 1) < len) ++n;
    if (static_cast<std::size_t>(n) * (n - 1) != len) {
        throw std::invalid_argument("store length is not n*(n-1) for any n");
    }
    return answer_at_cell(store.message(1), store.message(2), n, cell, lane);
}

}  // namespace pir
