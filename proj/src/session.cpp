#include "pir/session.hpp"

#include <chrono>

#include "pir/serialize.hpp"

namespace pir {

namespace {

using Clock = std::chrono::steady_clock;

Transcript make_transcript(const SchemeParams& params, std::uint16_t desired,
                           std::vector<std::vector<std::uint8_t>> query_bytes,
                           std::vector<std::vector<std::uint8_t>> answer_bytes,
                           const std::vector<Answer>& answers,
                           std::vector<FieldElement> decoded, std::size_t block_len) {
    Transcript t;
    t.params = params;
    t.desired_index = desired;
    t.blocks = answers.empty() ? 0 : answers[0].blocks;
    t.message_symbols = t.blocks * block_len;
    t.decoded = std::move(decoded);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        DatabaseRecord rec;
        rec.db_index = j;
        rec.query_bytes = std::move(query_bytes[j - 1]);
        rec.answer_bytes = std::move(answer_bytes[j - 1]);
        rec.uploaded_bytes = rec.query_bytes.size();
        rec.downloaded_bytes = rec.answer_bytes.size();
        rec.downloaded_symbols = answers[j - 1].equations.size();
        t.databases.push_back(std::move(rec));
    }
    return t;
}

}  // namespace

std::vector<std::uint8_t> answer_query_bytes(const MessageStore& store,
                                             std::uint16_t db_index,
                                             std::span<const std::uint8_t> query_bytes) {
    Query query;
    try {
        query = parse_query(query_bytes);
    } catch (const ProtocolError& e) {
        throw ServeError(ServeErrorCode::malformed, e.what());
    }
    if (query.db_index != db_index) {
        throw ServeError(ServeErrorCode::wrong_recipient,
                         "query addressed to database " + std::to_string(query.db_index));
    }
    if (query.params.k != store.message_count() || query.params.field != store.field()) {
        throw ServeError(ServeErrorCode::store_mismatch,
                         "query parameters do not match the local store");
    }
    try {
        auto scheme = make_scheme(query.params);
        Answer answer = scheme->answer(query.params, store, query);
        return serialize_answer(answer, query.params.field);
    } catch (const std::invalid_argument& e) {
        throw ServeError(ServeErrorCode::store_mismatch, e.what());
    }
}

RetrievalResult assemble_and_decode(const SchemeParams& params, std::uint16_t desired,
                                    const RandomnessToken& token,
                                    std::vector<std::vector<std::uint8_t>> query_bytes,
                                    std::vector<std::vector<std::uint8_t>> answer_bytes) {
    auto scheme = make_scheme(params);
    std::vector<Answer> answers;
    answers.reserve(params.n);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        Answer a = parse_answer(answer_bytes[j - 1], params.field);
        if (a.db_index != j) {
            throw ProtocolError("answer from database " + std::to_string(a.db_index) +
                                " arrived in slot " + std::to_string(j));
        }
        answers.push_back(std::move(a));
    }
    std::vector<FieldElement> message = scheme->decode(params, desired, token, answers);
    RetrievalResult result;
    result.transcript = make_transcript(params, desired, std::move(query_bytes),
                                        std::move(answer_bytes), answers, message,
                                        scheme->block_length(params));
    result.message = std::move(message);
    return result;
}

RetrievalResult retrieve_blocks(const SchemeParams& params, std::uint16_t desired,
                                const MessageStore& store, const RandomnessToken& token) {
    auto start = Clock::now();
    auto scheme = make_scheme(params);
    std::vector<Query> queries = scheme->query_gen(params, desired, token);

    std::vector<std::vector<std::uint8_t>> query_bytes(params.n);
    std::vector<std::vector<std::uint8_t>> answer_bytes(params.n);
    std::vector<Answer> answers;
    answers.reserve(params.n);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        query_bytes[j - 1] = serialize_query(queries[j - 1]);
        Answer a = scheme->answer(params, store, queries[j - 1]);
        answer_bytes[j - 1] = serialize_answer(a, params.field);
        answers.push_back(std::move(a));
    }
    std::vector<FieldElement> message = scheme->decode(params, desired, token, answers);

    RetrievalResult result;
    result.transcript = make_transcript(params, desired, std::move(query_bytes),
                                        std::move(answer_bytes), answers, message,
                                        scheme->block_length(params));
    result.message = std::move(message);
    result.transcript.wall_time =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return result;
}

RetrievalResult run_inprocess(const SchemeParams& params, std::uint16_t desired,
                              const MessageStore& store, const RandomnessToken& token) {
    auto start = Clock::now();
    auto scheme = make_scheme(params);
    std::vector<Query> queries = scheme->query_gen(params, desired, token);

    std::vector<std::vector<std::uint8_t>> query_bytes(params.n);
    std::vector<std::vector<std::uint8_t>> answer_bytes(params.n);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        query_bytes[j - 1] = serialize_query(queries[j - 1]);
        answer_bytes[j - 1] = answer_query_bytes(store, j, query_bytes[j - 1]);
    }
    RetrievalResult result = assemble_and_decode(params, desired, token,
                                                 std::move(query_bytes),
                                                 std::move(answer_bytes));
    result.transcript.wall_time =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start);
    return result;
}

RetrievalResult run_inprocess(const SchemeParams& params, std::uint16_t desired,
                              const MessageStore& store, Entropy& entropy) {
    auto scheme = make_scheme(params);
    RandomnessToken token = scheme->draw_randomness(params, entropy);
    return run_inprocess(params, desired, store, token);
}

std::vector<FieldElement> truncate_to_original(const MessageStore& store,
                                               std::uint16_t desired,
                                               std::vector<FieldElement> message) {
    std::size_t original = store.original_lengths().at(desired - 1);
    if (original < message.size()) message.resize(original, zero(store.field()));
    return message;
}

}  // namespace pir
