#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pir/field.hpp"
#include "pir/message_store.hpp"

namespace pir {

// One channel use of the N x N coherence grid. Rows index one retrieval
// target's coherence state, columns the other's; the grid drops cell (N,N),
// so linear indices run 1..N^2-1.
struct Cell {
    int row = 0;  // 1..N
    int col = 0;  // 1..N

    int linear_index(int n) const { return (row - 1) * n + col; }

    friend bool operator==(const Cell& a, const Cell& b) {
        return a.row == b.row && a.col == b.col;
    }
};

// The N^2-1 cells partitioned into N database groups along the grid
// diagonals: cell (r,c) belongs to group j when (c-r) mod N == j-1.
// Group 1 (the main diagonal, minus the dropped corner) has N-1 cells,
// every other group has N. Within a group, cells are kept in ascending
// linear-index order; that order is the canonical one used for query and
// answer serialization.
class CoherenceGrid {
public:
    static CoherenceGrid build(int n);  // throws for n < 2

    int n() const { return n_; }
    // 1-based group accessor; group j feeds database j.
    const std::vector<Cell>& group(int j) const;
    std::size_t total_cells() const;

private:
    explicit CoherenceGrid(int n) : n_(n) {}
    int n_ = 0;
    std::vector<std::vector<Cell>> groups_;
};

// The user's private draw selecting which cyclic assignment of unit vectors
// plays the role of the coherence states. Never leaves the client.
struct ShiftToken {
    int shift = 0;  // 0..N-1
};

// Cyclic shift permutation on 1..n: x -> ((x-1+shift) mod n) + 1.
int shift_perm(int shift, int x, int n);

// The repeated-symbol rule evaluated at one cell for one selected lane m
// (the unit-vector index picked by the query). For a 2-message store whose
// block layout places message-1 symbol (slot p, lane i) at flat index
// (p-1)*N + i and likewise for message 2:
//
//   value = [row <= N-1] * w1[(row-1)*N + m]  +  [col <= N-1] * w2[(col-1)*N + m]
//
// Row N cells carry no message-1 term and column N cells no message-2 term.
FieldElement answer_at_cell(std::span<const FieldElement> w1_block,
                            std::span<const FieldElement> w2_block, int n, Cell cell,
                            int lane);

// Convenience overload for a single-block 2-message store.
FieldElement answer_at_cell(const MessageStore& store, Cell cell, int lane);

}  // namespace pir
