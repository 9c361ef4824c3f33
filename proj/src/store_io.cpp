#include "pir/store_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "pir/wire.hpp"

namespace pir {

namespace {

const char kBase64Alphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const std::vector<std::uint8_t>& data) {
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < data.size(); i += 3) {
        std::uint32_t chunk = std::uint32_t(data[i]) << 16;
        if (i + 1 < data.size()) chunk |= std::uint32_t(data[i + 1]) << 8;
        if (i + 2 < data.size()) chunk |= data[i + 2];
        out.push_back(kBase64Alphabet[(chunk >> 18) & 0x3F]);
        out.push_back(kBase64Alphabet[(chunk >> 12) & 0x3F]);
        out.push_back(i + 1 < data.size() ? kBase64Alphabet[(chunk >> 6) & 0x3F] : '=');
        out.push_back(i + 2 < data.size() ? kBase64Alphabet[chunk & 0x3F] : '=');
    }
    return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
    auto value_of = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        return -1;
    };
    if (text.size() % 4 != 0) throw ProtocolError("base64 length not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int v0 = value_of(text[i]);
        int v1 = value_of(text[i + 1]);
        if (v0 < 0 || v1 < 0) throw ProtocolError("bad base64 character");
        std::uint32_t chunk = (std::uint32_t(v0) << 18) | (std::uint32_t(v1) << 12);
        int pad = 0;
        if (text[i + 2] == '=') {
            pad = 2;
            if (text[i + 3] != '=') throw ProtocolError("bad base64 padding");
        } else {
            int v2 = value_of(text[i + 2]);
            if (v2 < 0) throw ProtocolError("bad base64 character");
            chunk |= std::uint32_t(v2) << 6;
            if (text[i + 3] == '=') {
                pad = 1;
            } else {
                int v3 = value_of(text[i + 3]);
                if (v3 < 0) throw ProtocolError("bad base64 character");
                chunk |= std::uint32_t(v3);
            }
        }
        out.push_back((chunk >> 16) & 0xFF);
        if (pad < 2) out.push_back((chunk >> 8) & 0xFF);
        if (pad < 1) out.push_back(chunk & 0xFF);
    }
    return out;
}

std::vector<std::uint8_t> symbols_to_bytes(const std::vector<FieldElement>& symbols) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(symbols.size() * 2);
    for (const FieldElement& s : symbols) wire::put_u16(bytes, s.value);
    return bytes;
}

}  // namespace

std::string store_to_json(const MessageStore& store) {
    nlohmann::json doc;
    doc["version"] = 1;
    doc["k"] = store.message_count();
    doc["field"] = store.field().wire_byte();
    doc["original_lengths"] = store.original_lengths();
    nlohmann::json messages = nlohmann::json::array();
    for (std::uint16_t m = 1; m <= store.message_count(); ++m) {
        messages.push_back(base64_encode(symbols_to_bytes(store.message(m))));
    }
    doc["messages"] = std::move(messages);
    return doc.dump(2) + "\n";
}

MessageStore store_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ProtocolError(std::string("store file is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("version").get<int>() != 1) throw ProtocolError("unsupported store version");
        FieldId field = FieldId::from_wire_byte(doc.at("field").get<std::uint8_t>());
        std::size_t k = doc.at("k").get<std::size_t>();
        std::vector<std::vector<FieldElement>> messages;
        for (const auto& encoded : doc.at("messages")) {
            std::vector<std::uint8_t> bytes = base64_decode(encoded.get<std::string>());
            if (bytes.size() % 2 != 0) throw ProtocolError("odd symbol byte count");
            std::vector<FieldElement> symbols;
            symbols.reserve(bytes.size() / 2);
            for (std::size_t i = 0; i < bytes.size(); i += 2) {
                std::uint16_t v = (std::uint16_t(bytes[i]) << 8) | bytes[i + 1];
                if (v >= field.order()) throw ProtocolError("symbol out of field range");
                symbols.emplace_back(v, field);
            }
            messages.push_back(std::move(symbols));
        }
        if (messages.size() != k) throw ProtocolError("message count mismatch");
        MessageStore store(field, std::move(messages));
        store.set_original_lengths(doc.at("original_lengths").get<std::vector<std::size_t>>());
        return store;
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("store file schema error: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ProtocolError(std::string("store file contents invalid: ") + e.what());
    }
}

void save_store(const MessageStore& store, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << store_to_json(store);
    if (!out) throw std::runtime_error("write failed: " + path);
}

MessageStore load_store(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return store_from_json(buffer.str());
}

std::string store_digest(const MessageStore& store) {
    std::string doc = store_to_json(store);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : doc) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a:") + buf;
}

}  // namespace pir
