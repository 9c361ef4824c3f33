#pragma once

#include <string>

#include "pir/message_store.hpp"

namespace pir {

// Store file: the single JSON document replicated to every database.
//
//   {
//     "version": 1,
//     "k": <message count>,
//     "field": <field wire byte: 0 = gf256, else the prime>,
//     "original_lengths": [<symbols per message before padding>, ...],
//     "messages": ["<base64 of 2-byte big-endian symbols>", ...]
//   }
std::string store_to_json(const MessageStore& store);
MessageStore store_from_json(const std::string& text);

void save_store(const MessageStore& store, const std::string& path);
MessageStore load_store(const std::string& path);

// FNV-1a 64 over the serialized document; printed so operators can confirm
// every database got the same replica.
std::string store_digest(const MessageStore& store);

}  // namespace pir
