#include "pir/message_store.hpp"

#include <stdexcept>
#include <string>

namespace pir {

MessageStore::MessageStore(FieldId field, std::vector<std::vector<FieldElement>> messages)
    : field_(field), messages_(std::move(messages)) {
    if (messages_.size() < 2) {
        throw std::invalid_argument("store needs at least 2 messages");
    }
    std::size_t len = messages_[0].size();
    for (const auto& m : messages_) {
        if (m.size() != len) throw std::invalid_argument("messages must have equal length");
        for (const auto& sym : m) {
            if (sym.field != field_) throw std::invalid_argument("store symbol field mismatch");
        }
    }
    original_lengths_.assign(messages_.size(), len);
}

MessageStore MessageStore::random(std::uint16_t k, FieldId field, std::size_t length,
                                  Entropy& entropy) {
    if (length == 0) throw std::invalid_argument("zero-length messages");
    std::vector<std::vector<FieldElement>> msgs(k);
    for (auto& m : msgs) {
        m.reserve(length);
        for (std::size_t s = 0; s < length; ++s) {
            m.emplace_back(static_cast<std::uint16_t>(entropy.uniform(field.order())), field);
        }
    }
    return MessageStore(field, std::move(msgs));
}

const std::vector<FieldElement>& MessageStore::message(std::uint16_t index) const {
    if (index < 1 || index > messages_.size()) {
        throw std::invalid_argument("message index out of range: " + std::to_string(index));
    }
    return messages_[index - 1];
}

std::span<const FieldElement> MessageStore::block(std::uint16_t index, std::size_t block,
                                                  std::size_t block_length) const {
    const auto& msg = message(index);
    if ((block + 1) * block_length > msg.size()) {
        throw std::invalid_argument("block out of range");
    }
    return std::span<const FieldElement>(msg).subspan(block * block_length, block_length);
}

void MessageStore::set_original_lengths(std::vector<std::size_t> lengths) {
    if (lengths.size() != messages_.size()) {
        throw std::invalid_argument("original_lengths size mismatch");
    }
    original_lengths_ = std::move(lengths);
}

void MessageStore::pad_to_multiple(std::size_t block_length) {
    if (block_length == 0) throw std::invalid_argument("zero block length");
    std::size_t len = length();
    std::size_t padded = (len + block_length - 1) / block_length * block_length;
    for (auto& m : messages_) m.resize(padded, zero(field_));
}

}  // namespace pir
