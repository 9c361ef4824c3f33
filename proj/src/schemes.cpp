#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include "pir/bia_grid.hpp"
#include "pir/scheme.hpp"
#include "pir/wire.hpp"

namespace pir {

namespace {

constexpr std::size_t kMaxEnumerableTokens = 1u << 20;

SchemeParams inner_params(const SchemeParams& params) {
    SchemeParams p = params;
    p.id.symmetrized = false;
    return p;
}

// Inner database role held by actual database j under rotation s: the
// rotation maps inner role j' onto database ((j'-1+s) mod n)+1.
std::uint16_t rotated_role(std::uint16_t db_index, std::size_t rotation, std::uint16_t n) {
    return static_cast<std::uint16_t>(((db_index - 1 + n - rotation % n) % n) + 1);
}

std::size_t checked_pow(std::size_t base, std::size_t exponent, std::size_t cap) {
    std::size_t result = 1;
    for (std::size_t e = 0; e < exponent; ++e) {
        if (result > cap / base) return cap + 1;
        result *= base;
    }
    return result;
}

void check_desired(const SchemeParams& params, std::uint16_t desired) {
    if (desired < 1 || desired > params.k) {
        throw std::invalid_argument("desired message index out of range: " +
                                    std::to_string(desired));
    }
}

void check_db_index(const SchemeParams& params, std::uint16_t db_index) {
    if (db_index < 1 || db_index > params.n) {
        throw std::invalid_argument("database index out of range: " +
                                    std::to_string(db_index));
    }
}

// ---------------------------------------------------------------------------
// Download-optimal 2-message scheme.
//
// Queries name one lane (unit-vector index) per grid cell of the database's
// group; answers evaluate the repeated-symbol rule at those cells. Decoding
// uses the pivot cells of the last grid column (or row) to cancel the single
// repeated interference term per column (row).
class TwoMessageOptimal final : public Scheme {
public:
    explicit TwoMessageOptimal(std::optional<std::uint32_t> pinned_shift = std::nullopt)
        : pinned_shift_(pinned_shift) {}

    SchemeId id() const override { return {SchemeKind::two_message_optimal, false}; }

    std::size_t block_length(const SchemeParams& params) const override {
        return static_cast<std::size_t>(params.n) * (params.n - 1);
    }

    std::size_t equations_per_block(const SchemeParams& params,
                                    std::uint16_t db_index) const override {
        check_db_index(params, db_index);
        return db_index == 1 ? params.n - 1 : params.n;
    }

    RandomnessToken draw_randomness(const SchemeParams& params, Entropy& entropy) const override {
        RandomnessToken token;
        token.kind = RandomnessToken::Kind::shift;
        token.shift = pinned_shift_ ? *pinned_shift_
                                    : static_cast<std::uint32_t>(entropy.uniform(params.n));
        return token;
    }

    std::vector<RandomnessToken> randomness_space(const SchemeParams& params) const override {
        std::vector<RandomnessToken> space;
        if (pinned_shift_) {
            RandomnessToken t;
            t.kind = RandomnessToken::Kind::shift;
            t.shift = *pinned_shift_ % params.n;
            space.push_back(t);
            return space;
        }
        for (std::uint16_t l = 0; l < params.n; ++l) {
            RandomnessToken t;
            t.kind = RandomnessToken::Kind::shift;
            t.shift = l;
            space.push_back(t);
        }
        return space;
    }

    std::vector<Query> query_gen(const SchemeParams& params, std::uint16_t desired,
                                 const RandomnessToken& token) const override {
        check_desired(params, desired);
        if (token.kind != RandomnessToken::Kind::shift) {
            throw std::invalid_argument("token kind mismatch");
        }
        CoherenceGrid grid = CoherenceGrid::build(params.n);
        std::vector<Query> queries;
        queries.reserve(params.n);
        for (std::uint16_t j = 1; j <= params.n; ++j) {
            Query q;
            q.params = params;
            q.db_index = j;
            for (const Cell& cell : grid.group(j)) {
                int coherence_state = desired == 1 ? cell.col : cell.row;
                q.unit_indices.push_back(static_cast<std::uint16_t>(
                    shift_perm(static_cast<int>(token.shift), coherence_state, params.n)));
            }
            queries.push_back(std::move(q));
        }
        return queries;
    }

    std::vector<FieldElement> answer_block(const SchemeParams& params, const Query& query,
                                           const BlockView& block) const override {
        CoherenceGrid grid = CoherenceGrid::build(params.n);
        const auto& cells = grid.group(query.db_index);
        if (query.unit_indices.size() != cells.size()) {
            throw std::invalid_argument("query payload does not match grid group size");
        }
        std::vector<FieldElement> equations;
        equations.reserve(cells.size());
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            equations.push_back(answer_at_cell(block.message(1), block.message(2), params.n,
                                               cells[idx], query.unit_indices[idx]));
        }
        return equations;
    }

    std::vector<FieldElement> decode_block(
        const SchemeParams& params, std::uint16_t desired, const RandomnessToken& token,
        const std::vector<std::vector<FieldElement>>& per_db_equations) const override {
        check_desired(params, desired);
        int n = params.n;
        CoherenceGrid grid = CoherenceGrid::build(n);

        // Scatter the grouped equations back onto the full grid.
        std::vector<FieldElement> received(grid.total_cells(), zero(params.field));
        for (int j = 1; j <= n; ++j) {
            const auto& cells = grid.group(j);
            const auto& equations = per_db_equations.at(j - 1);
            if (equations.size() != cells.size()) {
                throw std::invalid_argument("answer shape mismatch at database " +
                                            std::to_string(j));
            }
            for (std::size_t idx = 0; idx < cells.size(); ++idx) {
                received[cells[idx].linear_index(n) - 1] = equations[idx];
            }
        }
        auto at = [&](int r, int c) { return received[(r - 1) * n + c - 1]; };
        auto lane_of = [&](int state) {
            return shift_perm(static_cast<int>(token.shift), state, n);
        };

        std::vector<FieldElement> out(block_length(params), zero(params.field));
        auto slot_lane = [&](int slot, int lane) -> FieldElement& {
            return out[(slot - 1) * n + lane - 1];
        };
        if (desired == 1) {
            for (int c = 1; c <= n; ++c) {
                int lane = lane_of(c);
                if (c == n) {
                    // Last column is interference-free.
                    for (int r = 1; r <= n - 1; ++r) slot_lane(r, lane) = at(r, n);
                } else {
                    // Cell (n,c) holds the column's lone interference term.
                    FieldElement pivot = at(n, c);
                    for (int r = 1; r <= n - 1; ++r) {
                        slot_lane(r, lane) = sub(at(r, c), pivot);
                    }
                }
            }
        } else {
            for (int r = 1; r <= n; ++r) {
                int lane = lane_of(r);
                if (r == n) {
                    for (int c = 1; c <= n - 1; ++c) slot_lane(c, lane) = at(n, c);
                } else {
                    FieldElement pivot = at(r, n);
                    for (int c = 1; c <= n - 1; ++c) {
                        slot_lane(c, lane) = sub(at(r, c), pivot);
                    }
                }
            }
        }
        return out;
    }

private:
    std::optional<std::uint32_t> pinned_shift_;
};

// ---------------------------------------------------------------------------
// K-message repetition scheme: one masked inner-product equation per
// database, desired-message coefficients offset by a distinct unit vector at
// databases 2..N.
class KMessageRepetition final : public Scheme {
public:
    SchemeId id() const override { return {SchemeKind::k_repetition, false}; }

    std::size_t block_length(const SchemeParams& params) const override {
        return params.n - 1;
    }

    std::size_t equations_per_block(const SchemeParams& params,
                                    std::uint16_t db_index) const override {
        check_db_index(params, db_index);
        return 1;
    }

    RandomnessToken draw_randomness(const SchemeParams& params, Entropy& entropy) const override {
        RandomnessToken token;
        token.kind = RandomnessToken::Kind::masks;
        token.masks.resize(params.k);
        for (auto& row : token.masks) {
            for (std::uint16_t pos = 0; pos + 1 < params.n; ++pos) {
                row.emplace_back(static_cast<std::uint16_t>(entropy.uniform(params.field.order())),
                                 params.field);
            }
        }
        return token;
    }

    std::vector<RandomnessToken> randomness_space(const SchemeParams& params) const override {
        std::size_t digits = static_cast<std::size_t>(params.k) * (params.n - 1);
        std::size_t order = params.field.order();
        std::size_t total = checked_pow(order, digits, kMaxEnumerableTokens);
        if (total > kMaxEnumerableTokens) {
            throw std::invalid_argument(
                "mask space too large to enumerate; audit over a smaller field");
        }
        std::vector<RandomnessToken> space;
        space.reserve(total);
        std::vector<std::uint16_t> digit_values(digits, 0);
        for (std::size_t count = 0; count < total; ++count) {
            RandomnessToken token;
            token.kind = RandomnessToken::Kind::masks;
            token.masks.resize(params.k);
            std::size_t d = 0;
            for (std::uint16_t m = 0; m < params.k; ++m) {
                for (std::uint16_t pos = 0; pos + 1 < params.n; ++pos) {
                    token.masks[m].emplace_back(digit_values[d++], params.field);
                }
            }
            space.push_back(std::move(token));
            // Increment the mixed-radix counter.
            for (std::size_t d2 = digits; d2-- > 0;) {
                if (++digit_values[d2] < order) break;
                digit_values[d2] = 0;
            }
        }
        return space;
    }

    std::vector<Query> query_gen(const SchemeParams& params, std::uint16_t desired,
                                 const RandomnessToken& token) const override {
        check_desired(params, desired);
        if (token.kind != RandomnessToken::Kind::masks || token.masks.size() != params.k) {
            throw std::invalid_argument("token kind mismatch");
        }
        std::vector<Query> queries;
        queries.reserve(params.n);
        for (std::uint16_t j = 1; j <= params.n; ++j) {
            Query q;
            q.params = params;
            q.db_index = j;
            q.coefficients = token.masks;
            if (j >= 2) {
                // Database j's desired-message coefficients carry unit offset
                // e_{j-1}; database 1 serves the bare masks.
                FieldElement& c = q.coefficients[desired - 1][j - 2];
                c = add(c, one(params.field));
            }
            queries.push_back(std::move(q));
        }
        return queries;
    }

    std::vector<FieldElement> answer_block(const SchemeParams& params, const Query& query,
                                           const BlockView& block) const override {
        if (query.coefficients.size() != params.k) {
            throw std::invalid_argument("query payload does not match message count");
        }
        FieldElement acc = zero(params.field);
        for (std::uint16_t m = 1; m <= params.k; ++m) {
            acc = add(acc, dot(query.coefficients[m - 1], block.message(m)));
        }
        return {acc};
    }

    std::vector<FieldElement> decode_block(
        const SchemeParams& params, std::uint16_t desired, const RandomnessToken& token,
        const std::vector<std::vector<FieldElement>>& per_db_equations) const override {
        check_desired(params, desired);
        (void)token;  // the first answer already carries the full mask term
        std::vector<FieldElement> out;
        out.reserve(params.n - 1);
        FieldElement base = per_db_equations.at(0).at(0);
        for (std::uint16_t j = 2; j <= params.n; ++j) {
            out.push_back(sub(per_db_equations.at(j - 1).at(0), base));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// Trivially private baseline: empty queries everywhere; database 1 ships the
// whole store, the rest answer nothing, so the total download is K messages.
class DownloadAll final : public Scheme {
public:
    SchemeId id() const override { return {SchemeKind::download_all, false}; }

    std::size_t block_length(const SchemeParams&) const override { return 1; }

    std::size_t equations_per_block(const SchemeParams& params,
                                    std::uint16_t db_index) const override {
        check_db_index(params, db_index);
        return db_index == 1 ? params.k : 0;
    }

    RandomnessToken draw_randomness(const SchemeParams&, Entropy&) const override {
        return RandomnessToken{};
    }

    std::vector<RandomnessToken> randomness_space(const SchemeParams&) const override {
        return {RandomnessToken{}};
    }

    std::vector<Query> query_gen(const SchemeParams& params, std::uint16_t desired,
                                 const RandomnessToken&) const override {
        check_desired(params, desired);
        std::vector<Query> queries(params.n);
        for (std::uint16_t j = 1; j <= params.n; ++j) {
            queries[j - 1].params = params;
            queries[j - 1].db_index = j;
        }
        return queries;
    }

    std::vector<FieldElement> answer_block(const SchemeParams& params, const Query& query,
                                           const BlockView& block) const override {
        if (query.db_index != 1) return {};
        std::vector<FieldElement> equations;
        equations.reserve(params.k);
        for (std::uint16_t m = 1; m <= params.k; ++m) {
            equations.push_back(block.message(m)[0]);
        }
        return equations;
    }

    std::vector<FieldElement> decode_block(
        const SchemeParams& params, std::uint16_t desired, const RandomnessToken&,
        const std::vector<std::vector<FieldElement>>& per_db_equations) const override {
        check_desired(params, desired);
        return {per_db_equations.at(0).at(desired - 1)};
    }
};

// ---------------------------------------------------------------------------
// Symmetrizing combinator: runs the inner scheme once per cyclic rotation of
// the database roles, one rotation per consecutive inner block, with an
// independent inner token each. Every database then serves the same number
// of equations per combined block and the total download is unchanged.
class Symmetrized final : public Scheme {
public:
    explicit Symmetrized(std::unique_ptr<Scheme> inner) : inner_(std::move(inner)) {}

    SchemeId id() const override {
        SchemeId inner_id = inner_->id();
        return {inner_id.kind, true};
    }

    std::size_t block_length(const SchemeParams& params) const override {
        return params.n * inner_->block_length(inner_params(params));
    }

    std::size_t equations_per_block(const SchemeParams& params,
                                    std::uint16_t db_index) const override {
        check_db_index(params, db_index);
        // Each database plays every inner role exactly once per combined block.
        return inner_->download_per_block(inner_params(params));
    }

    RandomnessToken draw_randomness(const SchemeParams& params, Entropy& entropy) const override {
        RandomnessToken token;
        token.kind = RandomnessToken::Kind::composite;
        for (std::uint16_t s = 0; s < params.n; ++s) {
            token.inner.push_back(inner_->draw_randomness(inner_params(params), entropy));
        }
        return token;
    }

    std::vector<RandomnessToken> randomness_space(const SchemeParams& params) const override {
        std::vector<RandomnessToken> inner_space = inner_->randomness_space(inner_params(params));
        std::size_t total = checked_pow(inner_space.size(), params.n, kMaxEnumerableTokens);
        if (total > kMaxEnumerableTokens) {
            throw std::invalid_argument(
                "rotation token space too large to enumerate; audit over a smaller field");
        }
        std::vector<RandomnessToken> space;
        space.reserve(total);
        std::vector<std::size_t> pick(params.n, 0);
        for (std::size_t count = 0; count < total; ++count) {
            RandomnessToken token;
            token.kind = RandomnessToken::Kind::composite;
            for (std::uint16_t s = 0; s < params.n; ++s) token.inner.push_back(inner_space[pick[s]]);
            space.push_back(std::move(token));
            for (std::size_t d = params.n; d-- > 0;) {
                if (++pick[d] < inner_space.size()) break;
                pick[d] = 0;
            }
        }
        return space;
    }

    std::vector<Query> query_gen(const SchemeParams& params, std::uint16_t desired,
                                 const RandomnessToken& token) const override {
        check_desired(params, desired);
        if (token.kind != RandomnessToken::Kind::composite || token.inner.size() != params.n) {
            throw std::invalid_argument("token kind mismatch");
        }
        std::vector<Query> queries(params.n);
        for (std::uint16_t j = 1; j <= params.n; ++j) {
            queries[j - 1].params = params;
            queries[j - 1].db_index = j;
            queries[j - 1].inner.resize(params.n);
        }
        for (std::uint16_t s = 0; s < params.n; ++s) {
            std::vector<Query> rotation =
                inner_->query_gen(inner_params(params), desired, token.inner[s]);
            for (std::uint16_t j = 1; j <= params.n; ++j) {
                queries[j - 1].inner[s] = rotation[rotated_role(j, s, params.n) - 1];
            }
        }
        return queries;
    }

    std::vector<FieldElement> answer_block(const SchemeParams& params, const Query& query,
                                           const BlockView& block) const override {
        if (query.inner.size() != params.n) {
            throw std::invalid_argument("query payload does not match rotation count");
        }
        std::size_t inner_len = inner_->block_length(inner_params(params));
        std::vector<FieldElement> equations;
        for (std::uint16_t s = 0; s < params.n; ++s) {
            BlockView sub = block.slice(s * inner_len, inner_len);
            auto part = inner_->answer_block(inner_params(params), query.inner[s], sub);
            equations.insert(equations.end(), part.begin(), part.end());
        }
        return equations;
    }

    std::vector<FieldElement> decode_block(
        const SchemeParams& params, std::uint16_t desired, const RandomnessToken& token,
        const std::vector<std::vector<FieldElement>>& per_db_equations) const override {
        check_desired(params, desired);
        SchemeParams inner_p = inner_params(params);
        // Database j's equations are the concatenation over rotations of the
        // inner answers it produced; track a read offset per database.
        std::vector<std::size_t> offset(params.n, 0);
        std::vector<FieldElement> out;
        for (std::uint16_t s = 0; s < params.n; ++s) {
            std::vector<std::vector<FieldElement>> inner_eqs(params.n);
            for (std::uint16_t j = 1; j <= params.n; ++j) {
                std::uint16_t role = rotated_role(j, s, params.n);
                std::size_t count = inner_->equations_per_block(inner_p, role);
                const auto& all = per_db_equations.at(j - 1);
                if (offset[j - 1] + count > all.size()) {
                    throw std::invalid_argument("answer shape mismatch at database " +
                                                std::to_string(j));
                }
                inner_eqs[role - 1].assign(all.begin() + offset[j - 1],
                                           all.begin() + offset[j - 1] + count);
                offset[j - 1] += count;
            }
            auto part = inner_->decode_block(inner_p, desired, token.inner[s], inner_eqs);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }

private:
    std::unique_ptr<Scheme> inner_;
};

std::unique_ptr<Scheme> make_base_scheme(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::download_all:
            return std::make_unique<DownloadAll>();
        case SchemeKind::two_message_optimal:
            return std::make_unique<TwoMessageOptimal>();
        case SchemeKind::k_repetition:
            return std::make_unique<KMessageRepetition>();
    }
    throw std::invalid_argument("unknown scheme kind");
}

}  // namespace

// ---------------------------------------------------------------------------

SchemeId SchemeId::from_wire_byte(std::uint8_t b) {
    SchemeId id;
    id.symmetrized = (b & 0x80) != 0;
    std::uint8_t kind = b & 0x7F;
    if (kind > 0x02) throw ProtocolError("unknown scheme id byte");
    id.kind = static_cast<SchemeKind>(kind);
    return id;
}

std::string SchemeId::name() const {
    std::string base;
    switch (kind) {
        case SchemeKind::download_all:
            base = "all";
            break;
        case SchemeKind::two_message_optimal:
            base = "two-opt";
            break;
        case SchemeKind::k_repetition:
            base = "k-rep";
            break;
    }
    return symmetrized ? "sym:" + base : base;
}

void SchemeParams::validate() const {
    if (n < 2) throw std::invalid_argument("need at least 2 databases");
    if (k < 2) throw std::invalid_argument("need at least 2 messages");
    if (id.kind == SchemeKind::two_message_optimal && k != 2) {
        throw std::invalid_argument("the 2-message scheme requires k = 2");
    }
}

BlockView BlockView::slice(std::size_t offset, std::size_t length) const {
    BlockView view;
    view.messages.reserve(messages.size());
    for (const auto& m : messages) view.messages.push_back(m.subspan(offset, length));
    return view;
}

Answer Scheme::answer(const SchemeParams& params, const MessageStore& store,
                      const Query& query) const {
    if (store.message_count() != params.k) {
        throw std::invalid_argument("store message count does not match params");
    }
    if (store.field() != params.field) {
        throw std::invalid_argument("store field does not match params");
    }
    std::size_t block_len = block_length(params);
    if (store.length() == 0 || store.length() % block_len != 0) {
        throw std::invalid_argument("store length must be a positive multiple of " +
                                    std::to_string(block_len));
    }
    check_db_index(params, query.db_index);

    Answer out;
    out.db_index = query.db_index;
    out.blocks = static_cast<std::uint32_t>(store.length() / block_len);
    out.equations_per_block =
        static_cast<std::uint32_t>(equations_per_block(params, query.db_index));
    for (std::uint32_t b = 0; b < out.blocks; ++b) {
        BlockView view;
        for (std::uint16_t m = 1; m <= params.k; ++m) {
            view.messages.push_back(store.block(m, b, block_len));
        }
        auto equations = answer_block(params, query, view);
        if (equations.size() != out.equations_per_block) {
            throw std::invalid_argument("answer rule produced unexpected equation count");
        }
        out.equations.insert(out.equations.end(), equations.begin(), equations.end());
    }
    return out;
}

std::vector<FieldElement> Scheme::decode(const SchemeParams& params, std::uint16_t desired,
                                         const RandomnessToken& token,
                                         const std::vector<Answer>& answers) const {
    if (answers.size() != params.n) {
        throw std::invalid_argument("need one answer per database");
    }
    std::uint32_t blocks = answers[0].blocks;
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        const Answer& a = answers[j - 1];
        if (a.db_index != j) throw std::invalid_argument("answers must be ordered by database");
        if (a.blocks != blocks) throw std::invalid_argument("inconsistent block counts");
        std::size_t expected = equations_per_block(params, j);
        if (a.equations_per_block != expected ||
            a.equations.size() != std::size_t(blocks) * expected) {
            throw std::invalid_argument("answer shape mismatch at database " + std::to_string(j));
        }
    }
    std::vector<FieldElement> message;
    message.reserve(std::size_t(blocks) * block_length(params));
    for (std::uint32_t b = 0; b < blocks; ++b) {
        std::vector<std::vector<FieldElement>> per_db(params.n);
        for (std::uint16_t j = 1; j <= params.n; ++j) {
            const Answer& a = answers[j - 1];
            std::size_t count = a.equations_per_block;
            per_db[j - 1].assign(a.equations.begin() + std::size_t(b) * count,
                                 a.equations.begin() + std::size_t(b + 1) * count);
        }
        auto block_symbols = decode_block(params, desired, token, per_db);
        message.insert(message.end(), block_symbols.begin(), block_symbols.end());
    }
    return message;
}

std::size_t Scheme::download_per_block(const SchemeParams& params) const {
    std::size_t total = 0;
    for (std::uint16_t j = 1; j <= params.n; ++j) total += equations_per_block(params, j);
    return total;
}

std::unique_ptr<Scheme> make_scheme(const SchemeParams& params) {
    params.validate();
    auto base = make_base_scheme(params.id.kind);
    if (params.id.symmetrized) return std::make_unique<Symmetrized>(std::move(base));
    return base;
}

std::unique_ptr<Scheme> make_pinned_two_message_scheme(std::uint32_t pinned_shift) {
    return std::make_unique<TwoMessageOptimal>(pinned_shift);
}

}  // namespace pir
