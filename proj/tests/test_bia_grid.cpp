#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "pir/bia_grid.hpp"

using namespace pir;

TEST_CASE("grid for n=2") {
    CoherenceGrid grid = CoherenceGrid::build(2);
    CHECK(grid.group(1) == std::vector<Cell>{{1, 1}});
    CHECK(grid.group(2) == std::vector<Cell>{{1, 2}, {2, 1}});
}

TEST_CASE("grid for n=3") {
    CoherenceGrid grid = CoherenceGrid::build(3);
    CHECK(grid.group(1) == std::vector<Cell>{{1, 1}, {2, 2}});
    CHECK(grid.group(2) == std::vector<Cell>{{1, 2}, {2, 3}, {3, 1}});
    CHECK(grid.group(3) == std::vector<Cell>{{1, 3}, {2, 1}, {3, 2}});
    std::size_t total = 0;
    for (int j = 1; j <= 3; ++j) total += grid.group(j).size();
    CHECK(total == 8);  // N^2 - 1 channel uses
}

TEST_CASE("grid rejects n < 2") {
    CHECK_THROWS_AS(CoherenceGrid::build(1), std::invalid_argument);
    CHECK_THROWS_AS(CoherenceGrid::build(0), std::invalid_argument);
}

TEST_CASE("groups partition the cells with sizes (N-1, N, ..., N)") {
    for (int n = 2; n <= 8; ++n) {
        CoherenceGrid grid = CoherenceGrid::build(n);
        std::set<std::pair<int, int>> seen;
        for (int j = 1; j <= n; ++j) {
            const auto& cells = grid.group(j);
            CHECK(cells.size() == (j == 1 ? std::size_t(n - 1) : std::size_t(n)));
            int previous_t = 0;
            for (const Cell& cell : cells) {
                CHECK(cell.row >= 1);
                CHECK(cell.row <= n);
                CHECK(cell.col >= 1);
                CHECK(cell.col <= n);
                CHECK_FALSE((cell.row == n && cell.col == n));
                CHECK(((cell.col - cell.row) % n + n) % n == j - 1);
                int t = cell.linear_index(n);
                CHECK(t > previous_t);  // canonical ascending order
                previous_t = t;
                CHECK(seen.insert({cell.row, cell.col}).second);
            }
        }
        CHECK(seen.size() == grid.total_cells());
    }
}

TEST_CASE("rows and columns of each group are cyclic consecutive runs") {
    for (int n = 2; n <= 8; ++n) {
        CoherenceGrid grid = CoherenceGrid::build(n);
        for (int j = 1; j <= n; ++j) {
            const auto& cells = grid.group(j);
            for (std::size_t idx = 0; idx + 1 < cells.size(); ++idx) {
                CHECK(cells[idx + 1].row == cells[idx].row % n + 1);
                CHECK(cells[idx + 1].col == cells[idx].col % n + 1);
            }
            if (j == 1) {
                // Main diagonal: rows and columns agree and start at 1.
                CHECK(cells.front().row == 1);
                CHECK(cells.front().col == 1);
            }
        }
    }
}

TEST_CASE("shift_perm examples") {
    CHECK(shift_perm(0, 2, 3) == 2);
    CHECK(shift_perm(1, 3, 3) == 1);
    CHECK(shift_perm(2, 1, 3) == 3);
    CHECK_THROWS_AS(shift_perm(0, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(shift_perm(0, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(shift_perm(3, 1, 3), std::invalid_argument);
}

TEST_CASE("shift_perm is a permutation and uniform over shifts") {
    for (int n = 2; n <= 8; ++n) {
        for (int shift = 0; shift < n; ++shift) {
            std::set<int> image;
            for (int x = 1; x <= n; ++x) {
                int y = shift_perm(shift, x, n);
                CHECK(y >= 1);
                CHECK(y <= n);
                image.insert(y);
            }
            CHECK(image.size() == std::size_t(n));
        }
        // For fixed x, sweeping the shift hits every target exactly once.
        for (int x = 1; x <= n; ++x) {
            std::set<int> image;
            for (int shift = 0; shift < n; ++shift) image.insert(shift_perm(shift, x, n));
            CHECK(image.size() == std::size_t(n));
        }
    }
}

TEST_CASE("answer_at_cell hand traces at n=2") {
    FieldId f = FieldId::gf256();
    // Message 1 symbols (slot 1, lanes 1..2) = 0x05, 0x07;
    // message 2 symbols = 0x02, 0x09.
    MessageStore store(f, {make_elements(f, {0x05, 0x07}), make_elements(f, {0x02, 0x09})});

    CHECK(answer_at_cell(store, Cell{1, 1}, 1).value == 0x07);  // 0x05 ^ 0x02
    CHECK(answer_at_cell(store, Cell{1, 2}, 2).value == 0x07);  // no message-2 term
    CHECK(answer_at_cell(store, Cell{2, 1}, 1).value == 0x02);  // no message-1 term

    CHECK_THROWS_AS(answer_at_cell(store, Cell{2, 2}, 1), std::invalid_argument);
    CHECK_THROWS_AS(answer_at_cell(store, Cell{1, 1}, 3), std::invalid_argument);
    CHECK_THROWS_AS(answer_at_cell(store, Cell{0, 1}, 1), std::invalid_argument);
}
