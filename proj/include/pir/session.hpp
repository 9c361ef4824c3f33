#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "pir/entropy.hpp"
#include "pir/message_store.hpp"
#include "pir/scheme.hpp"
#include "pir/transcript.hpp"

namespace pir {

struct RetrievalResult {
    std::vector<FieldElement> message;  // padded length
    Transcript transcript;
};

// Reason codes carried in ERROR frames.
enum class ServeErrorCode : std::uint8_t {
    malformed = 0x01,
    wrong_recipient = 0x02,
    store_mismatch = 0x03,
    internal = 0x04,
};

struct ServeError : std::runtime_error {
    ServeError(ServeErrorCode c, const std::string& what)
        : std::runtime_error(what), code(c) {}
    ServeErrorCode code;
};

// The whole database side of the protocol as one pure function: parse the
// query bytes, validate them against this database's index and store, apply
// the answer rule to every block, serialize. Both the socket server and the
// in-process harness call this, so the two transports cannot diverge.
std::vector<std::uint8_t> answer_query_bytes(const MessageStore& store,
                                             std::uint16_t db_index,
                                             std::span<const std::uint8_t> query_bytes);

// Client-side tail of a session: parse one answer per database, decode, and
// assemble the transcript.
RetrievalResult assemble_and_decode(const SchemeParams& params, std::uint16_t desired,
                                    const RandomnessToken& token,
                                    std::vector<std::vector<std::uint8_t>> query_bytes,
                                    std::vector<std::vector<std::uint8_t>> answer_bytes);

// Full retrieval against a local store, composed directly from the scheme
// operations (no serialization on the data path). One query per database is
// reused across every block of the store.
RetrievalResult retrieve_blocks(const SchemeParams& params, std::uint16_t desired,
                                const MessageStore& store, const RandomnessToken& token);

// Full retrieval against a local store through the canonical byte path:
// serialize queries, run answer_query_bytes per database, parse, decode.
// Produces byte-identical transcripts to a socket run with the same token.
RetrievalResult run_inprocess(const SchemeParams& params, std::uint16_t desired,
                              const MessageStore& store, const RandomnessToken& token);
RetrievalResult run_inprocess(const SchemeParams& params, std::uint16_t desired,
                              const MessageStore& store, Entropy& entropy);

// Strip the zero padding from a decoded message using store metadata.
std::vector<FieldElement> truncate_to_original(const MessageStore& store,
                                               std::uint16_t desired,
                                               std::vector<FieldElement> message);

}  // namespace pir
