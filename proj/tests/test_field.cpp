#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "pir/field.hpp"

using namespace pir;

namespace {

// Reference multiplier used as an oracle: full carry-less product first,
// then reduction by long division. Structured differently from the library's
// interleaved shift-reduce on purpose.
std::uint16_t gf256_mul_reference(std::uint8_t a, std::uint8_t b) {
    std::uint32_t product = 0;
    for (int i = 0; i < 8; ++i) {
        if (a & (1u << i)) {
            for (int j = 0; j < 8; ++j) {
                if (b & (1u << j)) product ^= 1u << (i + j);
            }
        }
    }
    for (int bit = 15; bit >= 8; --bit) {
        if (product & (1u << bit)) product ^= std::uint32_t(FieldId::kGf256Poly) << (bit - 8);
    }
    return static_cast<std::uint16_t>(product);
}

FieldElement fe(int v, FieldId f) { return FieldElement(static_cast<std::uint16_t>(v), f); }

}  // namespace

TEST_CASE("field ids and wire bytes") {
    CHECK(FieldId::gf256().order() == 256);
    CHECK(FieldId::gf256().wire_byte() == 0x00);
    CHECK(FieldId::prime(5).order() == 5);
    CHECK(FieldId::prime(251).wire_byte() == 251);
    CHECK(FieldId::from_wire_byte(0) == FieldId::gf256());
    CHECK(FieldId::from_wire_byte(7) == FieldId::prime(7));
    CHECK_THROWS_AS(FieldId::prime(6), std::invalid_argument);
    CHECK_THROWS_AS(FieldId::prime(1), std::invalid_argument);
    CHECK_THROWS_AS(FieldId::from_wire_byte(9), std::invalid_argument);
}

TEST_CASE("element construction enforces reduction") {
    CHECK_THROWS_AS(FieldElement(5, FieldId::prime(5)), std::invalid_argument);
    CHECK_NOTHROW(FieldElement(4, FieldId::prime(5)));
    CHECK_THROWS_AS(FieldElement(256, FieldId::gf256()), std::invalid_argument);
}

TEST_CASE("addition examples") {
    FieldId gf256 = FieldId::gf256();
    CHECK(add(fe(0x05, gf256), fe(0x02, gf256)) == fe(0x07, gf256));
    FieldId gf2 = FieldId::prime(2);
    CHECK(add(fe(1, gf2), fe(1, gf2)) == fe(0, gf2));
    FieldId gf5 = FieldId::prime(5);
    CHECK(add(fe(3, gf5), fe(4, gf5)) == fe(2, gf5));
}

TEST_CASE("multiplication and inversion examples") {
    FieldId gf256 = FieldId::gf256();
    // Oracle check for the reduction step, then the frozen value.
    CHECK(gf256_mul_reference(0x02, 0x80) == 0x1B);
    CHECK(mul(fe(0x02, gf256), fe(0x80, gf256)) == fe(0x1B, gf256));
    CHECK(mul(fe(0x53, gf256), inv(fe(0x53, gf256))) == one(gf256));

    FieldId gf5 = FieldId::prime(5);
    CHECK(sub(fe(1, gf5), fe(4, gf5)) == fe(2, gf5));
}

TEST_CASE("gf256 multiplication matches the reference on random pairs") {
    std::mt19937 rng(1234);
    FieldId gf256 = FieldId::gf256();
    for (int trial = 0; trial < 4000; ++trial) {
        std::uint8_t a = static_cast<std::uint8_t>(rng());
        std::uint8_t b = static_cast<std::uint8_t>(rng());
        CHECK(mul(fe(a, gf256), fe(b, gf256)).value == gf256_mul_reference(a, b));
    }
}

TEST_CASE("dot product examples and errors") {
    FieldId gf5 = FieldId::prime(5);
    auto u = make_elements(gf5, {2, 0});
    auto v = make_elements(gf5, {3, 1});
    CHECK(dot(u, v) == fe(1, gf5));

    FieldId gf2 = FieldId::prime(2);
    auto w = make_elements(gf2, {1, 0, 1});
    CHECK(dot(w, w) == fe(0, gf2));

    FieldId gf256 = FieldId::gf256();
    auto unit = make_elements(gf256, {1, 0});
    auto data = make_elements(gf256, {0xAB, 0xCD});
    CHECK(dot(unit, data) == fe(0xAB, gf256));

    auto shorter = make_elements(gf5, {1});
    CHECK_THROWS_AS(dot(u, shorter), std::invalid_argument);
    CHECK_THROWS_AS(dot(std::vector<FieldElement>{}, std::vector<FieldElement>{}),
                    std::invalid_argument);
}

TEST_CASE("operations reject mixed fields and zero inversion") {
    CHECK_THROWS_AS(add(fe(1, FieldId::prime(3)), fe(1, FieldId::prime(5))),
                    std::invalid_argument);
    CHECK_THROWS_AS(mul(fe(1, FieldId::gf256()), fe(1, FieldId::prime(2))),
                    std::invalid_argument);
    CHECK_THROWS_AS(inv(zero(FieldId::gf256())), std::invalid_argument);
    CHECK_THROWS_AS(inv(zero(FieldId::prime(7))), std::invalid_argument);
}

TEST_CASE("field axioms hold exhaustively on small prime fields") {
    for (std::uint8_t p : {2, 3, 5}) {
        FieldId f = FieldId::prime(p);
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                CHECK(add(fe(a, f), fe(b, f)) == add(fe(b, f), fe(a, f)));
                CHECK(mul(fe(a, f), fe(b, f)) == mul(fe(b, f), fe(a, f)));
                for (int c = 0; c < p; ++c) {
                    CHECK(add(add(fe(a, f), fe(b, f)), fe(c, f)) ==
                          add(fe(a, f), add(fe(b, f), fe(c, f))));
                    CHECK(mul(mul(fe(a, f), fe(b, f)), fe(c, f)) ==
                          mul(fe(a, f), mul(fe(b, f), fe(c, f))));
                    CHECK(mul(fe(a, f), add(fe(b, f), fe(c, f))) ==
                          add(mul(fe(a, f), fe(b, f)), mul(fe(a, f), fe(c, f))));
                }
            }
            CHECK(add(fe(a, f), zero(f)) == fe(a, f));
            CHECK(mul(fe(a, f), one(f)) == fe(a, f));
            CHECK(sub(fe(a, f), fe(a, f)) == zero(f));
            if (a != 0) CHECK(mul(fe(a, f), inv(fe(a, f))) == one(f));
        }
    }
}

TEST_CASE("field axioms hold on gf256 (random triples, exhaustive inverses)") {
    FieldId f = FieldId::gf256();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        FieldElement a = fe(rng() & 0xFF, f);
        FieldElement b = fe(rng() & 0xFF, f);
        FieldElement c = fe(rng() & 0xFF, f);
        CHECK(add(a, b) == add(b, a));
        CHECK(mul(a, b) == mul(b, a));
        CHECK(add(add(a, b), c) == add(a, add(b, c)));
        CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
        CHECK(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)));
        CHECK(add(a, zero(f)) == a);
        CHECK(mul(a, one(f)) == a);
    }
    for (int a = 1; a < 256; ++a) {
        CHECK(mul(fe(a, f), inv(fe(a, f))) == one(f));
    }
}

TEST_CASE("subtraction equals addition in characteristic 2") {
    FieldId gf256 = FieldId::gf256();
    FieldId gf2 = FieldId::prime(2);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        FieldElement a = fe(rng() & 0xFF, gf256);
        FieldElement b = fe(rng() & 0xFF, gf256);
        CHECK(sub(a, b) == add(a, b));
    }
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            CHECK(sub(fe(a, gf2), fe(b, gf2)) == add(fe(a, gf2), fe(b, gf2)));
        }
    }
}
