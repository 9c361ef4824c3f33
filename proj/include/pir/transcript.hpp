#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "pir/rational.hpp"
#include "pir/scheme.hpp"

namespace pir {

// What one database saw and sent. Deliberately excludes the desired index
// and the randomness token: a database's view is its query bytes alone.
struct DatabaseRecord {
    std::uint16_t db_index = 0;
    std::vector<std::uint8_t> query_bytes;
    std::vector<std::uint8_t> answer_bytes;
    std::size_t uploaded_bytes = 0;
    std::size_t downloaded_bytes = 0;
    std::size_t downloaded_symbols = 0;
};

// Client-side record of one retrieval session.
struct Transcript {
    SchemeParams params;
    std::uint16_t desired_index = 0;
    std::vector<DatabaseRecord> databases;
    std::vector<FieldElement> decoded;
    std::size_t message_symbols = 0;  // per message, after padding
    std::size_t blocks = 0;
    std::chrono::microseconds wall_time{0};

    std::size_t total_downloaded_symbols() const;
    Rational measured_eta() const;  // downloaded symbols / message symbols

    std::string summary() const;
    void to_kv(std::ostream& os) const;
};

}  // namespace pir
