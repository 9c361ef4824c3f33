#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pir/scheme.hpp"
#include "pir/wire.hpp"

namespace pir {

// Canonical query bytes. This is both the wire format and the unit of
// privacy auditing, so it must be a deterministic function of the query:
//
//   0x01 | scheme id (1B) | k (2B BE) | n (2B BE) | field (1B) | db (2B BE)
//        | payload
//
// payload by scheme:
//   two-opt  count (2B) then one lane index (2B) per grid cell, group order
//   k-rep    k*(n-1) field elements (2B each), message-major
//   all      empty
//   sym:*    rotation count (2B) then the inner payloads in rotation order
constexpr std::uint8_t kQueryFormatVersion = 0x01;

std::vector<std::uint8_t> serialize_query(const Query& query);
Query parse_query(std::span<const std::uint8_t> bytes);  // throws ProtocolError

// Answer bytes:
//   0x01 | db (2B BE) | field (1B) | blocks (4B BE) | equations/block (2B BE)
//        | equations (2B BE each, block-major)
std::vector<std::uint8_t> serialize_answer(const Answer& answer, FieldId field);
Answer parse_answer(std::span<const std::uint8_t> bytes, FieldId expected_field);

}  // namespace pir
