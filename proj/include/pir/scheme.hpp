#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pir/entropy.hpp"
#include "pir/field.hpp"
#include "pir/message_store.hpp"

namespace pir {

enum class SchemeKind : std::uint8_t {
    download_all = 0x00,
    two_message_optimal = 0x01,
    k_repetition = 0x02,
};

// Scheme identity as carried on the wire. Symmetrized variants set the high
// bit of the wire byte over the inner scheme's code.
struct SchemeId {
    SchemeKind kind = SchemeKind::download_all;
    bool symmetrized = false;

    std::uint8_t wire_byte() const {
        return static_cast<std::uint8_t>(kind) | (symmetrized ? 0x80 : 0x00);
    }
    static SchemeId from_wire_byte(std::uint8_t b);
    std::string name() const;

    friend bool operator==(const SchemeId& a, const SchemeId& b) {
        return a.kind == b.kind && a.symmetrized == b.symmetrized;
    }
};

struct SchemeParams {
    SchemeId id;
    std::uint16_t k = 2;  // message count
    std::uint16_t n = 2;  // database count
    FieldId field = FieldId::gf256();

    void validate() const;  // throws std::invalid_argument
};

// The client's private randomness for one retrieval session. Drawn uniformly
// from the scheme's randomness space and never serialized onto the wire.
struct RandomnessToken {
    enum class Kind { empty, shift, masks, composite };

    Kind kind = Kind::empty;
    std::uint32_t shift = 0;                           // two_message_optimal
    std::vector<std::vector<FieldElement>> masks;      // k_repetition: k rows of n-1
    std::vector<RandomnessToken> inner;                // symmetrized: one per rotation
};

// Per-database request. A query is a deterministic function of
// (params, desired index, token) and carries a params echo so databases can
// validate and serve it without any session state. It has no field for the
// desired index, and no constructor path takes store contents.
struct Query {
    SchemeParams params;
    std::uint16_t db_index = 1;                        // 1-based

    std::vector<std::uint16_t> unit_indices;           // two_message_optimal
    std::vector<std::vector<FieldElement>> coefficients;  // k_repetition: k rows of n-1
    std::vector<Query> inner;                          // symmetrized: rotation order
};

// Ordered answer equations from one database, flattened block-major:
// equations_per_block entries for block 0, then block 1, ...
struct Answer {
    std::uint16_t db_index = 1;
    std::uint32_t blocks = 0;
    std::uint32_t equations_per_block = 0;
    std::vector<FieldElement> equations;
};

// Per-message block symbols handed to the per-block answer rule.
struct BlockView {
    std::vector<std::span<const FieldElement>> messages;  // index 0 = message 1

    std::span<const FieldElement> message(std::uint16_t index) const {
        return messages.at(index - 1);
    }
    BlockView slice(std::size_t offset, std::size_t length) const;
};

// A retrieval scheme. All methods are pure; randomness enters only through
// the explicit token, so instances are safe to share across threads.
class Scheme {
public:
    virtual ~Scheme() = default;

    virtual SchemeId id() const = 0;

    // Symbols of one message consumed per retrieval block.
    virtual std::size_t block_length(const SchemeParams& params) const = 0;

    // Equations database j contributes per block.
    virtual std::size_t equations_per_block(const SchemeParams& params,
                                            std::uint16_t db_index) const = 0;

    virtual RandomnessToken draw_randomness(const SchemeParams& params,
                                            Entropy& entropy) const = 0;

    // Exhaustive token list for auditing. Throws std::invalid_argument when
    // the space is too large to enumerate (use a smaller field).
    virtual std::vector<RandomnessToken> randomness_space(const SchemeParams& params) const = 0;

    // One query per database; independent of any store contents.
    virtual std::vector<Query> query_gen(const SchemeParams& params, std::uint16_t desired,
                                         const RandomnessToken& token) const = 0;

    // Single-block answer rule, one equation vector per call.
    virtual std::vector<FieldElement> answer_block(const SchemeParams& params,
                                                   const Query& query,
                                                   const BlockView& block) const = 0;

    // Single-block decode: per_db_equations[j-1] holds database j's equations
    // for this block, in answer order.
    virtual std::vector<FieldElement> decode_block(
        const SchemeParams& params, std::uint16_t desired, const RandomnessToken& token,
        const std::vector<std::vector<FieldElement>>& per_db_equations) const = 0;

    // Block-iterating drivers; the same database-side query is reused for
    // every block of the store.
    Answer answer(const SchemeParams& params, const MessageStore& store,
                  const Query& query) const;
    std::vector<FieldElement> decode(const SchemeParams& params, std::uint16_t desired,
                                     const RandomnessToken& token,
                                     const std::vector<Answer>& answers) const;

    // Total equations all databases contribute per block.
    std::size_t download_per_block(const SchemeParams& params) const;
};

std::unique_ptr<Scheme> make_scheme(const SchemeParams& params);

// Audit hook: the optimal 2-message scheme with its private shift pinned to
// a constant. Deliberately not private; the distribution auditor must flag it.
std::unique_ptr<Scheme> make_pinned_two_message_scheme(std::uint32_t pinned_shift);

}  // namespace pir
