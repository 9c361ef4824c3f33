#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pir/rational.hpp"
#include "pir/scheme.hpp"
#include "pir/transcript.hpp"

namespace pir {

// Exact per-database query distribution over the enumerated randomness
// space, one map per desired index. Keys are canonical query bytes.
using QueryDistribution = std::map<std::vector<std::uint8_t>, Rational>;

// Result of the query-distribution audit. Probabilities are exact rationals;
// the pass criterion is exact distribution equality across desired indices,
// never statistical closeness.
struct DistributionReport {
    SchemeParams params;
    std::string scheme_name;
    std::size_t space_size = 0;
    // distributions[j-1][i-1] is the query distribution at database j when
    // message i is desired.
    std::vector<std::vector<QueryDistribution>> distributions;
    bool pass = false;
    std::string failure;  // first counterexample, empty on pass

    std::string to_text() const;
    void to_kv(std::ostream& os) const;
};

DistributionReport audit_privacy(const Scheme& scheme, const SchemeParams& params);

struct CorrectnessOptions {
    // Enumerate every store when the count is at most exhaustive_limit,
    // otherwise try random_stores uniformly drawn ones.
    std::size_t exhaustive_limit = 1u << 16;
    std::size_t random_stores = 1000;
    std::uint64_t seed = 0x5eed;
    // Fallback when the token space is too large to enumerate: sample this
    // many tokens instead (0 keeps enumeration mandatory).
    std::size_t sampled_tokens = 0;
};

struct CorrectnessReport {
    SchemeParams params;
    std::string scheme_name;
    bool exhaustive = false;
    std::size_t cases_run = 0;
    bool pass = false;
    std::string counterexample;  // empty on pass

    std::string to_text() const;
    void to_kv(std::ostream& os) const;
};

// Decode-equals-store check over every (desired index, token, store) triple
// in the configured range. Failure is a result, not an exception.
CorrectnessReport audit_correctness(const Scheme& scheme, const SchemeParams& params,
                                    const CorrectnessOptions& options = {});

// Non-binding statistical spot check for randomness spaces too large to
// enumerate exactly. Samples tokens per desired index, buckets canonical
// query bytes, and compares the per-index bucket counts with a chi-square
// homogeneity statistic per database. A warning flags gross inhomogeneity;
// absence of a warning proves nothing — the binding check is the exact
// enumeration audit over a smaller field.
struct SpotCheckReport {
    SchemeParams params;
    std::string scheme_name;
    std::size_t samples_per_index = 0;
    std::size_t buckets = 0;
    double max_statistic = 0.0;
    double threshold = 0.0;  // approximate 99.9% chi-square quantile
    bool warning = false;
    std::string detail;

    std::string to_text() const;
    void to_kv(std::ostream& os) const;
};

SpotCheckReport spot_check_privacy(const Scheme& scheme, const SchemeParams& params,
                                   std::size_t samples_per_index = 20000,
                                   std::uint64_t seed = 0x5eed);

// Download cost: downloaded symbols over message symbols, exact.
Rational measure_cost(const Transcript& transcript);
Rational measure_cost(const Scheme& scheme, const SchemeParams& params);

// Optimal 2-message download cost, 1 + 1/n.
Rational bound_two_message(int n);

// The finite-K outer bound formula nk/(1+(k-1)(n-1)) together with its
// K -> infinity limit n/(n-1). Only the limit is a proven bound; the finite
// form is reported as an asymptotic heuristic (at k=2 it exceeds the known
// optimum, so it must not be read as a finite-K lower bound).
struct AsymptoticBound {
    Rational finite_k;
    Rational limit;
    static constexpr const char* kNote = "asymptotic heuristic";
};
AsymptoticBound bound_asymptotic(int k, int n);

struct CostReport {
    SchemeParams params;
    std::string scheme_name;
    Rational measured;
    Rational bound;
    Rational gap;
    std::string bound_note;

    std::string to_text() const;
    void to_kv(std::ostream& os) const;
};

CostReport cost_report(const Scheme& scheme, const SchemeParams& params);

// Dense matrix over one field, row-major.
struct FieldMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<FieldElement> data;

    FieldElement& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

// Rank by Gaussian elimination over the element field.
std::size_t field_rank(FieldMatrix m);

// Extracts the per-block equation coefficients of a 2-message scheme by
// probing the answer rule with basis stores (one unit symbol set at a time).
// Rows are the equations of all databases in canonical order; first matrix
// covers the desired message's symbols, second the interfering message's.
std::pair<FieldMatrix, FieldMatrix> coefficient_matrices(const Scheme& scheme,
                                                         const SchemeParams& params,
                                                         std::uint16_t desired,
                                                         const RandomnessToken& token);

}  // namespace pir
