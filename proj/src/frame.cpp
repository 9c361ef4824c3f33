#include "pir/frame.hpp"

namespace pir {

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
    std::vector<std::uint8_t> out;
    out.reserve(5 + frame.payload.size());
    wire::put_u32(out, static_cast<std::uint32_t>(frame.payload.size()));
    wire::put_u8(out, static_cast<std::uint8_t>(frame.type));
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    return out;
}

void FrameDecoder::feed(std::span<const std::uint8_t> bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<Frame> FrameDecoder::next() {
    if (buffer_.size() < 5) return std::nullopt;
    std::uint32_t length = (std::uint32_t(buffer_[0]) << 24) | (std::uint32_t(buffer_[1]) << 16) |
                           (std::uint32_t(buffer_[2]) << 8) | buffer_[3];
    if (length > kMaxFramePayload) throw ProtocolError("frame payload length too large");
    std::uint8_t type = buffer_[4];
    if (type < 0x01 || type > 0x03) throw ProtocolError("unknown frame type");
    if (buffer_.size() < 5u + length) return std::nullopt;
    Frame frame;
    frame.type = static_cast<FrameType>(type);
    frame.payload.assign(buffer_.begin() + 5, buffer_.begin() + 5 + length);
    buffer_.erase(buffer_.begin(), buffer_.begin() + 5 + length);
    return frame;
}

Frame make_error_frame(ServeErrorCode code, const std::string& message) {
    Frame frame;
    frame.type = FrameType::error;
    frame.payload.push_back(static_cast<std::uint8_t>(code));
    frame.payload.insert(frame.payload.end(), message.begin(), message.end());
    return frame;
}

std::pair<ServeErrorCode, std::string> parse_error_frame(const Frame& frame) {
    if (frame.type != FrameType::error || frame.payload.empty()) {
        throw ProtocolError("not an error frame");
    }
    ServeErrorCode code = static_cast<ServeErrorCode>(frame.payload[0]);
    std::string message(frame.payload.begin() + 1, frame.payload.end());
    return {code, message};
}

}  // namespace pir
