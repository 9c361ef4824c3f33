#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pir/scheme.hpp"
#include "pir/serialize.hpp"
#include "pir/wire.hpp"

using namespace pir;

namespace {

SchemeParams make_params(SchemeKind kind, std::uint16_t k, std::uint16_t n, FieldId field,
                         bool symmetrized = false) {
    SchemeParams p;
    p.id = {kind, symmetrized};
    p.k = k;
    p.n = n;
    p.field = field;
    return p;
}

RandomnessToken shift_token(std::uint32_t shift) {
    RandomnessToken t;
    t.kind = RandomnessToken::Kind::shift;
    t.shift = shift;
    return t;
}

bool queries_equal(const Query& a, const Query& b) {
    if (a.db_index != b.db_index) return false;
    if (!(a.params.id == b.params.id) || a.params.k != b.params.k || a.params.n != b.params.n ||
        a.params.field != b.params.field) {
        return false;
    }
    if (a.unit_indices != b.unit_indices) return false;
    if (a.coefficients != b.coefficients) return false;
    if (a.inner.size() != b.inner.size()) return false;
    for (std::size_t s = 0; s < a.inner.size(); ++s) {
        if (!queries_equal(a.inner[s], b.inner[s])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("golden query bytes for the grid scheme") {
    SchemeParams p = make_params(SchemeKind::two_message_optimal, 2, 2, FieldId::gf256());
    auto scheme = make_scheme(p);
    auto queries = scheme->query_gen(p, 1, shift_token(0));

    // version | scheme | k | n | field | db | count | lane
    std::vector<std::uint8_t> expected_db1 = {0x01, 0x01, 0x00, 0x02, 0x00, 0x02, 0x00,
                                              0x00, 0x01, 0x00, 0x01, 0x00, 0x01};
    CHECK(serialize_query(queries[0]) == expected_db1);

    std::vector<std::uint8_t> expected_db2 = {0x01, 0x01, 0x00, 0x02, 0x00, 0x02, 0x00, 0x00,
                                              0x02, 0x00, 0x02, 0x00, 0x02, 0x00, 0x01};
    CHECK(serialize_query(queries[1]) == expected_db2);
}

TEST_CASE("query serialization carries params, db index, and payload only") {
    // The byte length depends only on (scheme, k, n, db); in particular no
    // bytes ever encode the desired index.
    FieldId f = FieldId::prime(3);
    for (bool symmetrized : {false, true}) {
        for (SchemeKind kind : {SchemeKind::two_message_optimal, SchemeKind::k_repetition,
                                SchemeKind::download_all}) {
            std::uint16_t k = kind == SchemeKind::two_message_optimal ? 2 : 3;
            SchemeParams p = make_params(kind, k, 3, f, symmetrized);
            auto scheme = make_scheme(p);
            Entropy entropy(11);
            RandomnessToken token = scheme->draw_randomness(p, entropy);
            for (std::uint16_t j = 0; j < p.n; ++j) {
                std::size_t reference =
                    serialize_query(scheme->query_gen(p, 1, token)[j]).size();
                for (std::uint16_t i = 1; i <= k; ++i) {
                    auto queries = scheme->query_gen(p, i, token);
                    CHECK(serialize_query(queries[j]).size() == reference);
                }
            }
        }
    }
}

TEST_CASE("query round trip across schemes, fields, and rotations") {
    for (bool symmetrized : {false, true}) {
        for (SchemeKind kind : {SchemeKind::two_message_optimal, SchemeKind::k_repetition,
                                SchemeKind::download_all}) {
            for (FieldId f : {FieldId::gf256(), FieldId::prime(2), FieldId::prime(13)}) {
                std::uint16_t k = kind == SchemeKind::two_message_optimal ? 2 : 4;
                SchemeParams p = make_params(kind, k, 3, f, symmetrized);
                auto scheme = make_scheme(p);
                Entropy entropy(23);
                for (int trial = 0; trial < 5; ++trial) {
                    RandomnessToken token = scheme->draw_randomness(p, entropy);
                    std::uint16_t i = static_cast<std::uint16_t>(1 + entropy.uniform(k));
                    for (const Query& q : scheme->query_gen(p, i, token)) {
                        std::vector<std::uint8_t> bytes = serialize_query(q);
                        Query parsed = parse_query(bytes);
                        CHECK(queries_equal(q, parsed));
                        CHECK(serialize_query(parsed) == bytes);
                    }
                }
            }
        }
    }
}

TEST_CASE("query parser rejects malformed bytes") {
    SchemeParams p = make_params(SchemeKind::two_message_optimal, 2, 2, FieldId::gf256());
    auto scheme = make_scheme(p);
    std::vector<std::uint8_t> good = serialize_query(scheme->query_gen(p, 1, shift_token(0))[0]);

    std::vector<std::uint8_t> truncated(good.begin(), good.end() - 1);
    CHECK_THROWS_AS(parse_query(truncated), ProtocolError);

    std::vector<std::uint8_t> trailing = good;
    trailing.push_back(0x00);
    CHECK_THROWS_AS(parse_query(trailing), ProtocolError);

    std::vector<std::uint8_t> bad_version = good;
    bad_version[0] = 0x02;
    CHECK_THROWS_AS(parse_query(bad_version), ProtocolError);

    std::vector<std::uint8_t> bad_scheme = good;
    bad_scheme[1] = 0x55;
    CHECK_THROWS_AS(parse_query(bad_scheme), ProtocolError);

    std::vector<std::uint8_t> bad_field = good;
    bad_field[6] = 0x09;  // 9 is not prime
    CHECK_THROWS_AS(parse_query(bad_field), ProtocolError);

    std::vector<std::uint8_t> bad_db = good;
    bad_db[8] = 0x05;  // db 5 of 2
    CHECK_THROWS_AS(parse_query(bad_db), ProtocolError);

    std::vector<std::uint8_t> bad_lane = good;
    bad_lane[12] = 0x07;  // lane 7 of n=2
    CHECK_THROWS_AS(parse_query(bad_lane), ProtocolError);
}

TEST_CASE("k=1 and n=1 are rejected at parse time") {
    SchemeParams p = make_params(SchemeKind::k_repetition, 2, 2, FieldId::prime(3));
    auto scheme = make_scheme(p);
    Entropy entropy(1);
    RandomnessToken token = scheme->draw_randomness(p, entropy);
    std::vector<std::uint8_t> good = serialize_query(scheme->query_gen(p, 1, token)[0]);

    std::vector<std::uint8_t> bad_k = good;
    bad_k[3] = 0x01;  // k = 1
    CHECK_THROWS_AS(parse_query(bad_k), ProtocolError);

    std::vector<std::uint8_t> bad_n = good;
    bad_n[5] = 0x01;  // n = 1
    CHECK_THROWS_AS(parse_query(bad_n), ProtocolError);
}

TEST_CASE("answer round trip and validation") {
    FieldId f = FieldId::prime(7);
    Answer a;
    a.db_index = 2;
    a.blocks = 3;
    a.equations_per_block = 2;
    a.equations = make_elements(f, {1, 6, 0, 3, 5, 2});

    std::vector<std::uint8_t> bytes = serialize_answer(a, f);
    Answer parsed = parse_answer(bytes, f);
    CHECK(parsed.db_index == 2);
    CHECK(parsed.blocks == 3);
    CHECK(parsed.equations_per_block == 2);
    CHECK(parsed.equations == a.equations);

    CHECK_THROWS_AS(parse_answer(bytes, FieldId::prime(5)), ProtocolError);

    std::vector<std::uint8_t> short_bytes(bytes.begin(), bytes.end() - 2);
    CHECK_THROWS_AS(parse_answer(short_bytes, f), ProtocolError);

    std::vector<std::uint8_t> bad_value = bytes;
    bad_value[bad_value.size() - 1] = 0x09;  // 9 >= 7
    CHECK_THROWS_AS(parse_answer(bad_value, f), ProtocolError);
}

TEST_CASE("symmetrized query bytes reconstruct inner roles") {
    FieldId f = FieldId::prime(2);
    SchemeParams p = make_params(SchemeKind::two_message_optimal, 2, 3, f, true);
    auto scheme = make_scheme(p);
    Entropy entropy(77);
    RandomnessToken token = scheme->draw_randomness(p, entropy);
    auto queries = scheme->query_gen(p, 2, token);
    for (const Query& q : queries) {
        Query parsed = parse_query(serialize_query(q));
        REQUIRE(parsed.inner.size() == 3);
        for (std::uint16_t s = 0; s < 3; ++s) {
            CHECK(parsed.inner[s].db_index == q.inner[s].db_index);
            CHECK(parsed.inner[s].unit_indices == q.inner[s].unit_indices);
        }
    }
}
