#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pir {

// Identifies the finite field all symbols of a deployment live in.
// Supported fields: GF(2^8) with reduction polynomial x^8+x^4+x^3+x+1
// (0x11B), and prime fields GF(p) for primes 2 <= p <= 251.
//
// Wire encoding is a single byte: 0x00 means GF(2^8), any other value is
// the prime p itself.
class FieldId {
public:
    static constexpr std::uint16_t kGf256Poly = 0x11B;

    static FieldId gf256() { return FieldId(0); }
    static FieldId prime(std::uint8_t p);       // throws if p is not prime
    static FieldId from_wire_byte(std::uint8_t b);

    bool is_gf256() const { return code_ == 0; }
    std::uint16_t order() const { return code_ == 0 ? 256 : code_; }
    std::uint8_t wire_byte() const { return code_; }
    std::string name() const;

    friend bool operator==(FieldId a, FieldId b) { return a.code_ == b.code_; }
    friend bool operator!=(FieldId a, FieldId b) { return a.code_ != b.code_; }

private:
    explicit FieldId(std::uint8_t code) : code_(code) {}
    std::uint8_t code_;
};

// One scalar. Value is always reduced: value < field order.
struct FieldElement {
    std::uint16_t value = 0;
    FieldId field = FieldId::gf256();

    FieldElement() = default;
    FieldElement(std::uint16_t v, FieldId f);  // throws if v >= order

    bool is_zero() const { return value == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.value == b.value && a.field == b.field;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }
};

FieldElement zero(FieldId f);
FieldElement one(FieldId f);

// All operations require both operands to be from the same field and throw
// std::invalid_argument otherwise. inv throws on zero input.
FieldElement add(FieldElement x, FieldElement y);
FieldElement sub(FieldElement x, FieldElement y);
FieldElement mul(FieldElement x, FieldElement y);
FieldElement inv(FieldElement x);

// Inner product; requires equal non-empty lengths over one field.
FieldElement dot(std::span<const FieldElement> u, std::span<const FieldElement> v);

std::vector<FieldElement> make_elements(FieldId f, std::initializer_list<int> values);

}  // namespace pir
