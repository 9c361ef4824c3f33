#include "pir/field.hpp"

#include <stdexcept>

namespace pir {

namespace {

bool is_small_prime(unsigned v) {
    if (v < 2) return false;
    for (unsigned d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

void require_same_field(FieldElement x, FieldElement y) {
    if (x.field != y.field) {
        throw std::invalid_argument("field mismatch: " + x.field.name() + " vs " +
                                    y.field.name());
    }
}

// Carry-less multiply of two bytes followed by reduction mod 0x11B.
std::uint16_t gf256_mul(std::uint16_t a, std::uint16_t b) {
    std::uint16_t acc = 0;
    std::uint16_t shifted = a;
    for (int bit = 0; bit < 8; ++bit) {
        if (b & (1u << bit)) acc ^= shifted;
        shifted <<= 1;
        if (shifted & 0x100) shifted ^= FieldId::kGf256Poly;
    }
    return acc;
}

std::uint16_t gf256_inv(std::uint16_t a) {
    // a^254 by square-and-multiply; 254 = 0b11111110.
    std::uint16_t result = 1;
    std::uint16_t base = a;
    for (int exp = 254; exp > 0; exp >>= 1) {
        if (exp & 1) result = gf256_mul(result, base);
        base = gf256_mul(base, base);
    }
    return result;
}

std::uint16_t prime_inv(std::uint16_t a, std::uint16_t p) {
    // Extended Euclid on (a, p); p prime so the inverse exists for a != 0.
    int t = 0, new_t = 1;
    int r = p, new_r = a;
    while (new_r != 0) {
        int q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (t < 0) t += p;
    return static_cast<std::uint16_t>(t);
}

}  // namespace

FieldId FieldId::prime(std::uint8_t p) {
    if (!is_small_prime(p)) {
        throw std::invalid_argument("not a supported prime field order: " +
                                    std::to_string(int(p)));
    }
    return FieldId(p);
}

FieldId FieldId::from_wire_byte(std::uint8_t b) {
    return b == 0 ? gf256() : prime(b);
}

std::string FieldId::name() const {
    return code_ == 0 ? "gf256" : "gf(" + std::to_string(int(code_)) + ")";
}

FieldElement::FieldElement(std::uint16_t v, FieldId f) : value(v), field(f) {
    if (v >= f.order()) {
        throw std::invalid_argument("value " + std::to_string(v) +
                                    " out of range for " + f.name());
    }
}

FieldElement zero(FieldId f) { return FieldElement(0, f); }
FieldElement one(FieldId f) { return FieldElement(1, f); }

FieldElement add(FieldElement x, FieldElement y) {
    require_same_field(x, y);
    if (x.field.is_gf256()) return FieldElement(x.value ^ y.value, x.field);
    return FieldElement((x.value + y.value) % x.field.order(), x.field);
}

FieldElement sub(FieldElement x, FieldElement y) {
    require_same_field(x, y);
    if (x.field.is_gf256()) return FieldElement(x.value ^ y.value, x.field);
    std::uint16_t p = x.field.order();
    return FieldElement((x.value + p - y.value) % p, x.field);
}

FieldElement mul(FieldElement x, FieldElement y) {
    require_same_field(x, y);
    if (x.field.is_gf256()) return FieldElement(gf256_mul(x.value, y.value), x.field);
    return FieldElement(
        static_cast<std::uint16_t>((std::uint32_t(x.value) * y.value) % x.field.order()),
        x.field);
}

FieldElement inv(FieldElement x) {
    if (x.is_zero()) throw std::invalid_argument("inversion of zero");
    if (x.field.is_gf256()) return FieldElement(gf256_inv(x.value), x.field);
    return FieldElement(prime_inv(x.value, x.field.order()), x.field);
}

FieldElement dot(std::span<const FieldElement> u, std::span<const FieldElement> v) {
    if (u.size() != v.size()) throw std::invalid_argument("dot: length mismatch");
    if (u.empty()) throw std::invalid_argument("dot: empty vectors");
    FieldElement acc = zero(u[0].field);
    for (std::size_t i = 0; i < u.size(); ++i) acc = add(acc, mul(u[i], v[i]));
    return acc;
}

std::vector<FieldElement> make_elements(FieldId f, std::initializer_list<int> values) {
    std::vector<FieldElement> out;
    out.reserve(values.size());
    for (int v : values) out.emplace_back(static_cast<std::uint16_t>(v), f);
    return out;
}

}  // namespace pir
