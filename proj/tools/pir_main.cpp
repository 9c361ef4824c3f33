// Command-line front end: generate store replicas, run database actors,
// retrieve privately, audit schemes, and print the cost bounds.
//
// Exit codes: 0 success/pass, 1 audit failure, 2 usage error, 3 transport
// or I/O error.

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pir/audit.hpp"
#include "pir/client.hpp"
#include "pir/serialize.hpp"
#include "pir/server.hpp"
#include "pir/session.hpp"
#include "pir/store_io.hpp"
#include "pir/wire.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAuditFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTransport = 3;

pir::FieldId parse_field(const std::string& text) {
    if (text == "gf256" || text == "GF256" || text == "256") return pir::FieldId::gf256();
    int value = 0;
    try {
        value = std::stoi(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("field must be 'gf256' or a prime <= 251");
    }
    if (value < 2 || value > 251) {
        throw std::invalid_argument("field must be 'gf256' or a prime <= 251");
    }
    return pir::FieldId::prime(static_cast<std::uint8_t>(value));
}

pir::SchemeId parse_scheme(const std::string& text) {
    std::string base = text;
    bool symmetrized = false;
    if (base.rfind("sym:", 0) == 0) {
        symmetrized = true;
        base = base.substr(4);
    }
    pir::SchemeId id;
    id.symmetrized = symmetrized;
    if (base == "two-opt") {
        id.kind = pir::SchemeKind::two_message_optimal;
    } else if (base == "k-rep") {
        id.kind = pir::SchemeKind::k_repetition;
    } else if (base == "all") {
        id.kind = pir::SchemeKind::download_all;
    } else {
        throw std::invalid_argument("scheme must be two-opt, k-rep, all, or sym:<scheme>");
    }
    return id;
}

pir::Entropy make_entropy(const std::optional<std::uint64_t>& seed) {
    if (seed) {
        std::cerr << "warning: --seed makes the retrieval randomness predictable; "
                     "privacy holds only against databases that cannot guess the seed\n";
        return pir::Entropy(*seed);
    }
    return pir::Entropy();
}

void print_message_hex(const std::vector<pir::FieldElement>& symbols) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(symbols.size() * 2);
    for (const auto& s : symbols) pir::wire::put_u16(bytes, s.value);
    std::cout << "message: " << pir::wire::hex(bytes) << "\n";
}

struct CommonParams {
    std::string scheme = "two-opt";
    std::uint16_t k = 2;
    std::uint16_t n = 2;
    std::string field = "gf256";

    pir::SchemeParams build() const {
        pir::SchemeParams params;
        params.id = parse_scheme(scheme);
        params.k = k;
        params.n = n;
        params.field = parse_field(field);
        params.validate();
        return params;
    }
};

int cmd_genstore(std::uint16_t k, std::uint16_t n, const std::string& field_text,
                 std::size_t len, const std::string& out,
                 const std::optional<std::string>& scheme_text,
                 const std::optional<std::uint64_t>& seed) {
    pir::FieldId field = parse_field(field_text);
    if (k < 2) throw std::invalid_argument("need at least 2 messages");
    if (n < 2) throw std::invalid_argument("need at least 2 databases");
    std::size_t block = k == 2 ? std::size_t(n) * (n - 1) : std::size_t(n) - 1;
    if (scheme_text) {
        pir::SchemeParams params;
        params.id = parse_scheme(*scheme_text);
        params.k = k;
        params.n = n;
        params.field = field;
        params.validate();
        block = pir::make_scheme(params)->block_length(params);
    }
    pir::Entropy entropy = seed ? pir::Entropy(*seed) : pir::Entropy();
    pir::MessageStore store = pir::MessageStore::random(k, field, len, entropy);
    store.pad_to_multiple(block);
    pir::save_store(store, out);
    std::cout << "wrote " << out << ": k=" << k << " field=" << field.name() << " length "
              << store.length() << " symbols (padded to multiple of " << block << ")\n";
    std::cout << "digest " << pir::store_digest(store) << "\n";
    return kExitOk;
}

int cmd_serve(const std::string& store_path, std::uint16_t db_index,
              const std::string& listen) {
    pir::MessageStore store = pir::load_store(store_path);
    pir::Endpoint endpoint = pir::parse_endpoint(listen[0] == ':' ? "127.0.0.1" + listen
                                                                  : listen);
    pir::DatabaseServer server(std::move(store), db_index);
    std::uint16_t port = server.listen(endpoint.host, endpoint.port);
    std::cout << "database " << db_index << " listening on " << endpoint.host << ":" << port
              << std::endl;
    server.run();
    return kExitOk;
}

int cmd_retrieve(const CommonParams& common, std::uint16_t index,
                 const std::vector<std::string>& endpoint_texts,
                 const std::optional<std::uint64_t>& seed, const std::string& format) {
    pir::SchemeParams params = common.build();
    std::vector<pir::Endpoint> endpoints;
    for (const auto& text : endpoint_texts) endpoints.push_back(pir::parse_endpoint(text));
    pir::Entropy entropy = make_entropy(seed);
    pir::RetrievalResult result = pir::retrieve(params, index, endpoints, entropy);
    if (format == "kv") {
        result.transcript.to_kv(std::cout);
    } else {
        std::cout << result.transcript.summary() << "\n";
    }
    print_message_hex(result.message);
    return kExitOk;
}

int cmd_demo(const CommonParams& common, std::uint16_t index, std::size_t len,
             const std::optional<std::uint64_t>& seed, const std::string& format) {
    pir::SchemeParams params = common.build();
    auto scheme = pir::make_scheme(params);
    std::size_t block = scheme->block_length(params);
    pir::Entropy entropy = make_entropy(seed);
    pir::MessageStore store =
        pir::MessageStore::random(params.k, params.field, len == 0 ? block : len, entropy);
    store.pad_to_multiple(block);
    pir::RetrievalResult result = pir::run_inprocess(params, index, store, entropy);
    if (format == "kv") {
        result.transcript.to_kv(std::cout);
    } else {
        std::cout << result.transcript.summary() << "\n";
    }
    std::cout << "eta = " << result.transcript.measured_eta().str() << "\n";
    print_message_hex(pir::truncate_to_original(store, index, result.message));
    bool match = pir::truncate_to_original(store, index, result.message) ==
                 std::vector<pir::FieldElement>(store.message(index).begin(),
                                                store.message(index).begin() +
                                                    store.original_lengths()[index - 1]);
    std::cout << (match ? "decode: ok" : "decode: MISMATCH") << "\n";
    return match ? kExitOk : kExitAuditFail;
}

int cmd_audit(const CommonParams& common, std::size_t stores, bool spot_check,
              const std::string& format) {
    pir::SchemeParams params = common.build();
    auto scheme = pir::make_scheme(params);

    pir::CorrectnessOptions options;
    options.random_stores = stores;
    // Keep the audit interactive: enumerate stores only when few exist.
    options.exhaustive_limit = 4096;

    bool enumerable = true;
    pir::DistributionReport privacy;
    try {
        privacy = pir::audit_privacy(*scheme, params);
    } catch (const std::invalid_argument& e) {
        if (!spot_check) {
            std::cerr << "error: " << e.what()
                      << " (or pass --spot-check for a non-binding statistical check)\n";
            return kExitUsage;
        }
        enumerable = false;
        options.sampled_tokens = 64;
    }

    pir::CorrectnessReport correctness = pir::audit_correctness(*scheme, params, options);
    pir::CostReport cost = pir::cost_report(*scheme, params);

    if (enumerable) {
        if (format == "kv") {
            privacy.to_kv(std::cout);
            correctness.to_kv(std::cout);
            cost.to_kv(std::cout);
        } else {
            std::cout << privacy.to_text() << "\n\n"
                      << correctness.to_text() << "\n\n"
                      << cost.to_text() << "\n";
        }
        return privacy.pass && correctness.pass ? kExitOk : kExitAuditFail;
    }

    pir::SpotCheckReport spot = pir::spot_check_privacy(*scheme, params);
    if (format == "kv") {
        spot.to_kv(std::cout);
        correctness.to_kv(std::cout);
        cost.to_kv(std::cout);
    } else {
        std::cout << spot.to_text() << "\n\n"
                  << correctness.to_text() << "\n\n"
                  << cost.to_text() << "\n";
    }
    // The spot check is non-binding; only correctness gates the exit code.
    return correctness.pass ? kExitOk : kExitAuditFail;
}

int cmd_bounds(std::uint16_t k, std::uint16_t n, const std::string& format) {
    pir::Rational two = pir::bound_two_message(n);
    pir::AsymptoticBound asym = pir::bound_asymptotic(k, n);
    if (format == "kv") {
        std::cout << "bounds.k=" << k << "\n";
        std::cout << "bounds.n=" << n << "\n";
        std::cout << "bounds.two_message=" << two.str() << "\n";
        std::cout << "bounds.finite_k=" << asym.finite_k.str() << "\n";
        std::cout << "bounds.finite_k_note=" << pir::AsymptoticBound::kNote << "\n";
        std::cout << "bounds.limit=" << asym.limit.str() << "\n";
    } else {
        std::cout << "optimal 2-message download cost (k=2, n=" << n << "): " << two.str()
                  << "\n";
        std::cout << "finite-k formula nk/(1+(k-1)(n-1)) at k=" << k << ", n=" << n << ": "
                  << asym.finite_k.str() << "  [" << pir::AsymptoticBound::kNote << "]\n";
        std::cout << "k->infinity limit: " << asym.limit.str() << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Replicated-database private information retrieval toolkit"};
    app.require_subcommand(1);

    // genstore
    auto* genstore = app.add_subcommand("genstore", "Generate a random replicated store file");
    std::uint16_t gs_k = 2, gs_n = 2;
    std::string gs_field = "gf256", gs_out;
    std::size_t gs_len = 0;
    std::optional<std::string> gs_scheme;
    std::optional<std::uint64_t> gs_seed;
    genstore->add_option("--k", gs_k, "message count")->required();
    genstore->add_option("--n", gs_n, "database count (sets the padding block)")->required();
    genstore->add_option("--field", gs_field, "gf256 or a prime <= 251");
    genstore->add_option("--len", gs_len, "symbols per message before padding")->required();
    genstore->add_option("--out", gs_out, "output path")->required();
    genstore->add_option("--scheme", gs_scheme, "pad for this scheme's block length");
    genstore->add_option("--seed", gs_seed, "deterministic store contents");

    // serve
    auto* serve = app.add_subcommand("serve", "Run one database actor");
    std::string sv_store, sv_listen = "127.0.0.1:0";
    std::uint16_t sv_db = 1;
    serve->add_option("--store", sv_store, "store file path")->required();
    serve->add_option("--db-index", sv_db, "this database's index (1-based)")->required();
    serve->add_option("--listen", sv_listen, "host:port (port 0 = ephemeral)");

    // retrieve
    auto* retrieve = app.add_subcommand("retrieve", "Retrieve a message from live databases");
    CommonParams rt_common;
    std::uint16_t rt_index = 1;
    std::vector<std::string> rt_endpoints;
    std::optional<std::uint64_t> rt_seed;
    std::string rt_format = "text";
    retrieve->add_option("--scheme", rt_common.scheme, "two-opt | k-rep | all | sym:<scheme>");
    retrieve->add_option("--k", rt_common.k, "message count")->required();
    retrieve->add_option("--n", rt_common.n, "database count")->required();
    retrieve->add_option("--field", rt_common.field, "gf256 or a prime <= 251");
    retrieve->add_option("--index", rt_index, "desired message index (1-based)")->required();
    retrieve->add_option("--endpoints", rt_endpoints, "host:port per database")
        ->required()
        ->delimiter(',');
    retrieve->add_option("--seed", rt_seed, "reproducible randomness (prints a warning)");
    retrieve->add_option("--format", rt_format, "text | kv");

    // demo
    auto* demo = app.add_subcommand("demo", "In-process end-to-end run with a random store");
    CommonParams dm_common;
    std::uint16_t dm_index = 1;
    std::size_t dm_len = 0;
    std::optional<std::uint64_t> dm_seed;
    std::string dm_format = "text";
    demo->add_option("--scheme", dm_common.scheme, "two-opt | k-rep | all | sym:<scheme>");
    demo->add_option("--k", dm_common.k, "message count")->required();
    demo->add_option("--n", dm_common.n, "database count")->required();
    demo->add_option("--field", dm_common.field, "gf256 or a prime <= 251");
    demo->add_option("--index", dm_index, "desired message index");
    demo->add_option("--len", dm_len, "symbols per message (0 = one block)");
    demo->add_option("--seed", dm_seed, "reproducible randomness (prints a warning)");
    demo->add_option("--format", dm_format, "text | kv");

    // audit
    auto* audit = app.add_subcommand("audit", "Exact privacy + correctness + cost audit");
    CommonParams au_common;
    std::size_t au_stores = 500;
    bool au_spot_check = false;
    std::string au_format = "text";
    audit->add_option("--scheme", au_common.scheme, "two-opt | k-rep | all | sym:<scheme>");
    audit->add_option("--k", au_common.k, "message count")->required();
    audit->add_option("--n", au_common.n, "database count")->required();
    audit->add_option("--field", au_common.field, "gf256 or a prime <= 251");
    audit->add_option("--stores", au_stores, "random stores when not exhaustive");
    audit->add_flag("--spot-check", au_spot_check,
                    "non-binding statistical check when the space is too large");
    audit->add_option("--format", au_format, "text | kv");

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Print the download-cost bounds");
    std::uint16_t bd_k = 2, bd_n = 2;
    std::string bd_format = "text";
    bounds->add_option("--k", bd_k, "message count")->required();
    bounds->add_option("--n", bd_n, "database count")->required();
    bounds->add_option("--format", bd_format, "text | kv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (genstore->parsed()) {
            return cmd_genstore(gs_k, gs_n, gs_field, gs_len, gs_out, gs_scheme, gs_seed);
        }
        if (serve->parsed()) return cmd_serve(sv_store, sv_db, sv_listen);
        if (retrieve->parsed()) {
            return cmd_retrieve(rt_common, rt_index, rt_endpoints, rt_seed, rt_format);
        }
        if (demo->parsed()) return cmd_demo(dm_common, dm_index, dm_len, dm_seed, dm_format);
        if (audit->parsed()) return cmd_audit(au_common, au_stores, au_spot_check, au_format);
        if (bounds->parsed()) return cmd_bounds(bd_k, bd_n, bd_format);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const pir::TransportError& e) {
        std::cerr << "transport error: " << e.what() << "\n";
        return kExitTransport;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
    }
    return kExitUsage;
}
