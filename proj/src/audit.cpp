#include "pir/audit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pir/entropy.hpp"
#include "pir/serialize.hpp"
#include "pir/session.hpp"
#include "pir/wire.hpp"

namespace pir {

namespace {

std::string describe_params(const SchemeParams& p) {
    return p.id.name() + " k=" + std::to_string(p.k) + " n=" + std::to_string(p.n) +
           " field=" + p.field.name();
}

// Every query a database can see under the 2-message grid scheme names its
// lanes as one cyclically consecutive run; anything else means the grouped
// coherence states leaked structure.
bool is_cyclic_run(const std::vector<std::uint16_t>& lanes, std::uint16_t n) {
    for (std::size_t idx = 0; idx + 1 < lanes.size(); ++idx) {
        if (lanes[idx + 1] != lanes[idx] % n + 1) return false;
    }
    return true;
}

void render_distribution(std::ostream& os, const QueryDistribution& dist,
                         const std::string& prefix) {
    for (const auto& [bytes, prob] : dist) {
        os << prefix << "." << wire::hex(bytes) << "=" << prob.str() << "\n";
    }
}

std::vector<FieldElement> enumerate_store_symbols(std::size_t index, std::size_t symbols,
                                                  FieldId field) {
    std::vector<FieldElement> out(symbols, zero(field));
    for (std::size_t s = 0; s < symbols && index != 0; ++s) {
        out[s] = FieldElement(static_cast<std::uint16_t>(index % field.order()), field);
        index /= field.order();
    }
    return out;
}

MessageStore store_from_flat(const SchemeParams& params, std::size_t block_len,
                             const std::vector<FieldElement>& flat) {
    std::vector<std::vector<FieldElement>> messages(params.k);
    for (std::uint16_t m = 0; m < params.k; ++m) {
        messages[m].assign(flat.begin() + m * block_len, flat.begin() + (m + 1) * block_len);
    }
    return MessageStore(params.field, std::move(messages));
}

}  // namespace

DistributionReport audit_privacy(const Scheme& scheme, const SchemeParams& params) {
    DistributionReport report;
    report.params = params;
    report.scheme_name = scheme.id().name();

    std::vector<RandomnessToken> space = scheme.randomness_space(params);
    report.space_size = space.size();

    // counts[j-1][i-1]: canonical query bytes -> occurrences over the space.
    std::vector<std::vector<std::map<std::vector<std::uint8_t>, std::int64_t>>> counts(
        params.n, std::vector<std::map<std::vector<std::uint8_t>, std::int64_t>>(params.k));
    for (const RandomnessToken& token : space) {
        for (std::uint16_t i = 1; i <= params.k; ++i) {
            std::vector<Query> queries = scheme.query_gen(params, i, token);
            for (std::uint16_t j = 1; j <= params.n; ++j) {
                counts[j - 1][i - 1][serialize_query(queries[j - 1])] += 1;
            }
        }
    }

    report.distributions.resize(params.n);
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        report.distributions[j - 1].resize(params.k);
        for (std::uint16_t i = 1; i <= params.k; ++i) {
            for (const auto& [bytes, count] : counts[j - 1][i - 1]) {
                report.distributions[j - 1][i - 1][bytes] =
                    Rational(count, static_cast<std::int64_t>(space.size()));
            }
        }
    }

    report.pass = true;
    for (std::uint16_t j = 1; j <= params.n && report.pass; ++j) {
        const QueryDistribution& base = report.distributions[j - 1][0];
        for (std::uint16_t i = 2; i <= params.k; ++i) {
            const QueryDistribution& other = report.distributions[j - 1][i - 1];
            if (base == other) continue;
            report.pass = false;
            std::ostringstream os;
            os << "database " << j << ": query distribution differs between i=1 and i=" << i;
            for (const auto& [bytes, prob] : base) {
                auto it = other.find(bytes);
                if (it == other.end() || !(it->second == prob)) {
                    os << "; first divergence at query " << wire::hex(bytes) << " (p="
                       << prob.str() << " vs "
                       << (it == other.end() ? std::string("0") : it->second.str()) << ")";
                    break;
                }
            }
            report.failure = os.str();
            break;
        }
    }

    // Structural support check for the grid scheme.
    if (report.pass && params.id.kind == SchemeKind::two_message_optimal &&
        !params.id.symmetrized) {
        for (std::uint16_t j = 1; j <= params.n && report.pass; ++j) {
            for (const auto& [bytes, prob] : report.distributions[j - 1][0]) {
                Query q = parse_query(bytes);
                if (!is_cyclic_run(q.unit_indices, params.n)) {
                    report.pass = false;
                    report.failure = "database " + std::to_string(j) + ": support query " +
                                     wire::hex(bytes) + " is not a cyclic consecutive run";
                    break;
                }
            }
        }
    }
    return report;
}

std::string DistributionReport::to_text() const {
    std::ostringstream os;
    os << "privacy audit: " << scheme_name << " k=" << params.k << " n=" << params.n
       << " field=" << params.field.name() << "\n";
    os << "randomness space: " << space_size << " tokens\n";
    for (std::size_t j = 1; j <= distributions.size(); ++j) {
        for (std::size_t i = 1; i <= distributions[j - 1].size(); ++i) {
            os << "  db " << j << ", i=" << i << ":";
            for (const auto& [bytes, prob] : distributions[j - 1][i - 1]) {
                os << " " << wire::hex(bytes) << ":" << prob.str();
            }
            os << "\n";
        }
    }
    os << (pass ? "PASS: query distributions are identical for every desired index"
                : "FAIL: " + failure);
    return os.str();
}

void DistributionReport::to_kv(std::ostream& os) const {
    os << "privacy.scheme=" << scheme_name << "\n";
    os << "privacy.k=" << params.k << "\n";
    os << "privacy.n=" << params.n << "\n";
    os << "privacy.field=" << params.field.name() << "\n";
    os << "privacy.space_size=" << space_size << "\n";
    for (std::size_t j = 1; j <= distributions.size(); ++j) {
        for (std::size_t i = 1; i <= distributions[j - 1].size(); ++i) {
            render_distribution(os, distributions[j - 1][i - 1],
                                "privacy.db." + std::to_string(j) + ".i." + std::to_string(i));
        }
    }
    os << "privacy.pass=" << (pass ? "true" : "false") << "\n";
    if (!pass) os << "privacy.failure=" << failure << "\n";
}

CorrectnessReport audit_correctness(const Scheme& scheme, const SchemeParams& params,
                                    const CorrectnessOptions& options) {
    CorrectnessReport report;
    report.params = params;
    report.scheme_name = scheme.id().name();

    std::vector<RandomnessToken> tokens;
    try {
        tokens = scheme.randomness_space(params);
    } catch (const std::invalid_argument&) {
        if (options.sampled_tokens == 0) throw;
        Entropy token_entropy(options.seed ^ 0x746f6b656e);
        for (std::size_t t = 0; t < options.sampled_tokens; ++t) {
            tokens.push_back(scheme.draw_randomness(params, token_entropy));
        }
    }
    std::size_t block_len = scheme.block_length(params);
    std::size_t symbols = static_cast<std::size_t>(params.k) * block_len;

    // Total store count q^symbols, saturating at the exhaustive limit.
    std::size_t total_stores = 1;
    for (std::size_t s = 0; s < symbols; ++s) {
        if (total_stores > options.exhaustive_limit / params.field.order()) {
            total_stores = options.exhaustive_limit + 1;
            break;
        }
        total_stores *= params.field.order();
    }
    report.exhaustive = total_stores <= options.exhaustive_limit;
    std::size_t store_count = report.exhaustive ? total_stores : options.random_stores;

    Entropy entropy(options.seed);
    for (std::size_t store_idx = 0; store_idx < store_count; ++store_idx) {
        std::vector<FieldElement> flat;
        if (report.exhaustive) {
            flat = enumerate_store_symbols(store_idx, symbols, params.field);
        } else {
            flat.reserve(symbols);
            for (std::size_t s = 0; s < symbols; ++s) {
                flat.emplace_back(
                    static_cast<std::uint16_t>(entropy.uniform(params.field.order())),
                    params.field);
            }
        }
        MessageStore store = store_from_flat(params, block_len, flat);
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            for (std::uint16_t i = 1; i <= params.k; ++i) {
                RetrievalResult r = run_inprocess(params, i, store, tokens[t]);
                ++report.cases_run;
                if (r.message != store.message(i)) {
                    report.pass = false;
                    std::ostringstream os;
                    os << "decode mismatch: store #" << store_idx << ", token #" << t
                       << ", i=" << i;
                    report.counterexample = os.str();
                    return report;
                }
            }
        }
    }
    report.pass = true;
    return report;
}

std::string CorrectnessReport::to_text() const {
    std::ostringstream os;
    os << "correctness audit: " << describe_params(params) << "\n";
    os << (exhaustive ? "store coverage: exhaustive" : "store coverage: random sample") << ", "
       << cases_run << " retrievals\n";
    os << (pass ? "PASS: every decode returned the stored message"
                : "FAIL: " + counterexample);
    return os.str();
}

void CorrectnessReport::to_kv(std::ostream& os) const {
    os << "correctness.scheme=" << scheme_name << "\n";
    os << "correctness.k=" << params.k << "\n";
    os << "correctness.n=" << params.n << "\n";
    os << "correctness.field=" << params.field.name() << "\n";
    os << "correctness.exhaustive=" << (exhaustive ? "true" : "false") << "\n";
    os << "correctness.cases=" << cases_run << "\n";
    os << "correctness.pass=" << (pass ? "true" : "false") << "\n";
    if (!pass) os << "correctness.counterexample=" << counterexample << "\n";
}

SpotCheckReport spot_check_privacy(const Scheme& scheme, const SchemeParams& params,
                                   std::size_t samples_per_index, std::uint64_t seed) {
    constexpr std::size_t kBuckets = 64;
    SpotCheckReport report;
    report.params = params;
    report.scheme_name = scheme.id().name();
    report.samples_per_index = samples_per_index;
    report.buckets = kBuckets;

    auto bucket_of = [](const std::vector<std::uint8_t>& bytes) {
        std::uint64_t hash = 0xcbf29ce484222325ull;
        for (std::uint8_t b : bytes) {
            hash ^= b;
            hash *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(hash % kBuckets);
    };

    // counts[j-1][i-1][bucket]
    std::vector<std::vector<std::vector<std::size_t>>> counts(
        params.n, std::vector<std::vector<std::size_t>>(params.k,
                                                        std::vector<std::size_t>(kBuckets, 0)));
    Entropy entropy(seed);
    for (std::uint16_t i = 1; i <= params.k; ++i) {
        for (std::size_t s = 0; s < samples_per_index; ++s) {
            RandomnessToken token = scheme.draw_randomness(params, entropy);
            std::vector<Query> queries = scheme.query_gen(params, i, token);
            for (std::uint16_t j = 1; j <= params.n; ++j) {
                ++counts[j - 1][i - 1][bucket_of(serialize_query(queries[j - 1]))];
            }
        }
    }

    double worst = 0.0;
    std::size_t worst_db = 1;
    std::size_t populated = 0;
    for (std::uint16_t j = 1; j <= params.n; ++j) {
        double statistic = 0.0;
        std::size_t cells = 0;
        double grand = double(params.k) * samples_per_index;
        for (std::size_t b = 0; b < kBuckets; ++b) {
            std::size_t column = 0;
            for (std::uint16_t i = 1; i <= params.k; ++i) column += counts[j - 1][i - 1][b];
            if (column == 0) continue;
            ++cells;
            for (std::uint16_t i = 1; i <= params.k; ++i) {
                double expected = double(column) * samples_per_index / grand;
                double diff = double(counts[j - 1][i - 1][b]) - expected;
                statistic += diff * diff / expected;
            }
        }
        if (statistic > worst) {
            worst = statistic;
            worst_db = j;
            populated = cells;
        }
        populated = std::max(populated, cells);
    }
    report.max_statistic = worst;

    // Wilson-Hilferty 99.9% quantile for df = (cells-1)(k-1), padded; this is
    // a smoke threshold, not a significance test.
    double df = std::max(1.0, double(populated - 1) * (params.k - 1));
    double z = 3.09;  // standard normal 0.999 quantile
    double t = 1.0 - 2.0 / (9.0 * df) + z * std::sqrt(2.0 / (9.0 * df));
    report.threshold = df * t * t * t + 10.0;
    report.warning = report.max_statistic > report.threshold;
    if (report.warning) {
        report.detail = "database " + std::to_string(worst_db) +
                        ": bucketed query counts diverge across desired indices";
    }
    return report;
}

std::string SpotCheckReport::to_text() const {
    std::ostringstream os;
    os << "privacy spot check (non-binding): " << describe_params(params) << "\n";
    os << "samples per index: " << samples_per_index << ", buckets: " << buckets << "\n";
    os << "max chi-square " << max_statistic << " vs threshold " << threshold << "\n";
    os << (warning ? "WARNING: " + detail : "no inhomogeneity detected (not a proof)");
    return os.str();
}

void SpotCheckReport::to_kv(std::ostream& os) const {
    os << "spotcheck.scheme=" << scheme_name << "\n";
    os << "spotcheck.samples_per_index=" << samples_per_index << "\n";
    os << "spotcheck.max_statistic=" << max_statistic << "\n";
    os << "spotcheck.threshold=" << threshold << "\n";
    os << "spotcheck.warning=" << (warning ? "true" : "false") << "\n";
    if (warning) os << "spotcheck.detail=" << detail << "\n";
}

Rational measure_cost(const Transcript& transcript) { return transcript.measured_eta(); }

Rational measure_cost(const Scheme& scheme, const SchemeParams& params) {
    return Rational(static_cast<std::int64_t>(scheme.download_per_block(params)),
                    static_cast<std::int64_t>(scheme.block_length(params)));
}

Rational bound_two_message(int n) {
    if (n < 2) throw std::invalid_argument("bound needs n >= 2");
    return Rational(n + 1, n);
}

AsymptoticBound bound_asymptotic(int k, int n) {
    if (k < 2 || n < 2) throw std::invalid_argument("bound needs k >= 2 and n >= 2");
    AsymptoticBound b;
    b.finite_k = Rational(std::int64_t(n) * k, 1 + std::int64_t(k - 1) * (n - 1));
    b.limit = Rational(n, n - 1);
    return b;
}

CostReport cost_report(const Scheme& scheme, const SchemeParams& params) {
    CostReport report;
    report.params = params;
    report.scheme_name = scheme.id().name();
    report.measured = measure_cost(scheme, params);
    switch (params.id.kind) {
        case SchemeKind::two_message_optimal:
            report.bound = bound_two_message(params.n);
            report.bound_note = "optimal 2-message download cost";
            break;
        case SchemeKind::k_repetition:
            report.bound = bound_asymptotic(params.k, params.n).limit;
            report.bound_note = AsymptoticBound::kNote;
            break;
        case SchemeKind::download_all:
            report.bound = Rational(params.k);
            report.bound_note = "trivial cost of fetching every message";
            break;
    }
    report.gap = report.measured - report.bound;
    return report;
}

std::string CostReport::to_text() const {
    std::ostringstream os;
    os << "cost report: " << describe_params(params) << "\n";
    os << "measured eta = " << measured.str() << ", bound = " << bound.str() << " ("
       << bound_note << "), gap = " << gap.str();
    return os.str();
}

void CostReport::to_kv(std::ostream& os) const {
    os << "cost.scheme=" << scheme_name << "\n";
    os << "cost.measured_eta=" << measured.str() << "\n";
    os << "cost.bound_eta=" << bound.str() << "\n";
    os << "cost.bound_note=" << bound_note << "\n";
    os << "cost.gap=" << gap.str() << "\n";
}

std::size_t field_rank(FieldMatrix m) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        FieldElement scale = inv(m.at(rank, col));
        for (std::size_t c = col; c < m.cols; ++c) {
            m.at(rank, c) = mul(m.at(rank, c), scale);
        }
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == rank || m.at(r, col).is_zero()) continue;
            FieldElement factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c) {
                m.at(r, c) = sub(m.at(r, c), mul(factor, m.at(rank, c)));
            }
        }
        ++rank;
    }
    return rank;
}

std::pair<FieldMatrix, FieldMatrix> coefficient_matrices(const Scheme& scheme,
                                                         const SchemeParams& params,
                                                         std::uint16_t desired,
                                                         const RandomnessToken& token) {
    if (params.k != 2) throw std::invalid_argument("coefficient probe requires k = 2");
    std::size_t block_len = scheme.block_length(params);
    std::size_t rows = scheme.download_per_block(params);
    std::uint16_t interfering = desired == 1 ? 2 : 1;

    std::vector<Query> queries = scheme.query_gen(params, desired, token);

    auto probe = [&](std::uint16_t message_index, std::size_t symbol) {
        std::vector<std::vector<FieldElement>> messages(
            2, std::vector<FieldElement>(block_len, zero(params.field)));
        messages[message_index - 1][symbol] = one(params.field);
        MessageStore store(params.field, std::move(messages));
        std::vector<FieldElement> column;
        column.reserve(rows);
        for (std::uint16_t j = 1; j <= params.n; ++j) {
            Answer a = scheme.answer(params, store, queries[j - 1]);
            column.insert(column.end(), a.equations.begin(), a.equations.end());
        }
        return column;
    };

    FieldMatrix desired_matrix{rows, block_len,
                               std::vector<FieldElement>(rows * block_len, zero(params.field))};
    FieldMatrix interference_matrix{
        rows, block_len, std::vector<FieldElement>(rows * block_len, zero(params.field))};
    for (std::size_t s = 0; s < block_len; ++s) {
        std::vector<FieldElement> col = probe(desired, s);
        for (std::size_t r = 0; r < rows; ++r) desired_matrix.at(r, s) = col[r];
        col = probe(interfering, s);
        for (std::size_t r = 0; r < rows; ++r) interference_matrix.at(r, s) = col[r];
    }
    return {std::move(desired_matrix), std::move(interference_matrix)};
}

}  // namespace pir
