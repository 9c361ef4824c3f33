#include "pir/serialize.hpp"

#include <stdexcept>

#include "pir/bia_grid.hpp"

namespace pir {

namespace wire {

std::string hex(std::span<const std::uint8_t> bytes) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

}  // namespace wire

namespace {

std::size_t grid_group_size(std::uint16_t n, std::uint16_t db_index) {
    return db_index == 1 ? std::size_t(n) - 1 : std::size_t(n);
}

void serialize_payload(const Query& q, std::vector<std::uint8_t>& out) {
    const SchemeParams& p = q.params;
    if (p.id.symmetrized) {
        if (q.inner.size() != p.n) throw std::invalid_argument("bad rotation count");
        wire::put_u16(out, p.n);
        for (const Query& iq : q.inner) serialize_payload(iq, out);
        return;
    }
    switch (p.id.kind) {
        case SchemeKind::two_message_optimal:
            wire::put_u16(out, static_cast<std::uint16_t>(q.unit_indices.size()));
            for (std::uint16_t m : q.unit_indices) wire::put_u16(out, m);
            break;
        case SchemeKind::k_repetition:
            for (const auto& row : q.coefficients) {
                for (const FieldElement& c : row) wire::put_u16(out, c.value);
            }
            break;
        case SchemeKind::download_all:
            break;
    }
}

// db_index and params are reconstructed from the header (and, for inner
// queries of a symmetrized scheme, from the rotation position), so payloads
// never repeat them.
Query parse_payload(wire::Reader& r, const SchemeParams& params, std::uint16_t db_index) {
    Query q;
    q.params = params;
    q.db_index = db_index;
    if (params.id.symmetrized) {
        std::uint16_t rotations = r.u16();
        if (rotations != params.n) throw ProtocolError("rotation count mismatch");
        SchemeParams inner = params;
        inner.id.symmetrized = false;
        for (std::uint16_t s = 0; s < rotations; ++s) {
            std::uint16_t role = static_cast<std::uint16_t>(
                ((db_index - 1 + params.n - s % params.n) % params.n) + 1);
            q.inner.push_back(parse_payload(r, inner, role));
        }
        return q;
    }
    switch (params.id.kind) {
        case SchemeKind::two_message_optimal: {
            std::uint16_t count = r.u16();
            if (count != grid_group_size(params.n, db_index)) {
                throw ProtocolError("lane count does not match grid group");
            }
            for (std::uint16_t idx = 0; idx < count; ++idx) {
                std::uint16_t lane = r.u16();
                if (lane < 1 || lane > params.n) throw ProtocolError("lane index out of range");
                q.unit_indices.push_back(lane);
            }
            break;
        }
        case SchemeKind::k_repetition: {
            q.coefficients.resize(params.k);
            for (std::uint16_t m = 0; m < params.k; ++m) {
                for (std::uint16_t pos = 0; pos + 1 < params.n; ++pos) {
                    std::uint16_t v = r.u16();
                    if (v >= params.field.order()) {
                        throw ProtocolError("coefficient out of field range");
                    }
                    q.coefficients[m].emplace_back(v, params.field);
                }
            }
            break;
        }
        case SchemeKind::download_all:
            break;
    }
    return q;
}

}  // namespace

std::vector<std::uint8_t> serialize_query(const Query& query) {
    std::vector<std::uint8_t> out;
    wire::put_u8(out, kQueryFormatVersion);
    wire::put_u8(out, query.params.id.wire_byte());
    wire::put_u16(out, query.params.k);
    wire::put_u16(out, query.params.n);
    wire::put_u8(out, query.params.field.wire_byte());
    wire::put_u16(out, query.db_index);
    serialize_payload(query, out);
    return out;
}

Query parse_query(std::span<const std::uint8_t> bytes) {
    wire::Reader r(bytes);
    if (r.u8() != kQueryFormatVersion) throw ProtocolError("unsupported query version");
    SchemeParams params;
    params.id = SchemeId::from_wire_byte(r.u8());
    params.k = r.u16();
    params.n = r.u16();
    std::uint8_t field_byte = r.u8();
    try {
        params.field = FieldId::from_wire_byte(field_byte);
        params.validate();
    } catch (const std::invalid_argument& e) {
        throw ProtocolError(std::string("bad query parameters: ") + e.what());
    }
    std::uint16_t db_index = r.u16();
    if (db_index < 1 || db_index > params.n) throw ProtocolError("database index out of range");
    Query q = parse_payload(r, params, db_index);
    r.expect_done();
    return q;
}

std::vector<std::uint8_t> serialize_answer(const Answer& answer, FieldId field) {
    std::vector<std::uint8_t> out;
    wire::put_u8(out, kQueryFormatVersion);
    wire::put_u16(out, answer.db_index);
    wire::put_u8(out, field.wire_byte());
    wire::put_u32(out, answer.blocks);
    wire::put_u16(out, static_cast<std::uint16_t>(answer.equations_per_block));
    for (const FieldElement& e : answer.equations) wire::put_u16(out, e.value);
    return out;
}

Answer parse_answer(std::span<const std::uint8_t> bytes, FieldId expected_field) {
    wire::Reader r(bytes);
    if (r.u8() != kQueryFormatVersion) throw ProtocolError("unsupported answer version");
    Answer a;
    a.db_index = r.u16();
    FieldId field = FieldId::gf256();
    try {
        field = FieldId::from_wire_byte(r.u8());
    } catch (const std::invalid_argument& e) {
        throw ProtocolError(std::string("bad answer field: ") + e.what());
    }
    if (field != expected_field) throw ProtocolError("answer field mismatch");
    a.blocks = r.u32();
    a.equations_per_block = r.u16();
    std::size_t total = std::size_t(a.blocks) * a.equations_per_block;
    if (r.remaining() != total * 2) throw ProtocolError("answer length mismatch");
    a.equations.reserve(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::uint16_t v = r.u16();
        if (v >= field.order()) throw ProtocolError("equation value out of field range");
        a.equations.emplace_back(v, field);
    }
    return a;
}

}  // namespace pir
