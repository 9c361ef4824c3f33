#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pir/entropy.hpp"
#include "pir/field.hpp"

namespace pir {

// The replicated database contents: k messages of equal symbol length over
// one field. Every database holds an identical copy. original_lengths
// remembers each message's pre-padding symbol count so retrieval can strip
// the zero fill again.
class MessageStore {
public:
    MessageStore(FieldId field, std::vector<std::vector<FieldElement>> messages);

    static MessageStore random(std::uint16_t k, FieldId field, std::size_t length,
                               Entropy& entropy);

    std::uint16_t message_count() const { return static_cast<std::uint16_t>(messages_.size()); }
    std::size_t length() const { return messages_.empty() ? 0 : messages_[0].size(); }
    FieldId field() const { return field_; }

    // 1-based message access, matching desired-index conventions.
    const std::vector<FieldElement>& message(std::uint16_t index) const;
    std::span<const FieldElement> block(std::uint16_t index, std::size_t block,
                                        std::size_t block_length) const;

    const std::vector<std::size_t>& original_lengths() const { return original_lengths_; }
    void set_original_lengths(std::vector<std::size_t> lengths);

    // Zero-fill every message up to the next multiple of block_length.
    void pad_to_multiple(std::size_t block_length);

private:
    FieldId field_;
    std::vector<std::vector<FieldElement>> messages_;
    std::vector<std::size_t> original_lengths_;
};

}  // namespace pir
