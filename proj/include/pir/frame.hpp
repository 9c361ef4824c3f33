#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pir/session.hpp"
#include "pir/wire.hpp"

namespace pir {

// Wire framing: 4-byte big-endian payload length, 1 type byte, payload.
enum class FrameType : std::uint8_t {
    query = 0x01,
    answer = 0x02,
    error = 0x03,
};

struct Frame {
    FrameType type = FrameType::query;
    std::vector<std::uint8_t> payload;
};

// Anything larger is treated as a protocol violation rather than an
// allocation request.
constexpr std::uint32_t kMaxFramePayload = 1u << 26;

std::vector<std::uint8_t> encode_frame(const Frame& frame);

// Incremental decoder fed from a byte stream. Returns a frame once complete,
// throws ProtocolError on malformed input.
class FrameDecoder {
public:
    void feed(std::span<const std::uint8_t> bytes);
    std::optional<Frame> next();

private:
    std::vector<std::uint8_t> buffer_;
};

// ERROR frame payload: 1 reason byte + UTF-8 text.
Frame make_error_frame(ServeErrorCode code, const std::string& message);
std::pair<ServeErrorCode, std::string> parse_error_frame(const Frame& frame);

}  // namespace pir
