#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "htpair/coloring.hpp"
#include "htpair/embed.hpp"
#include "htpair/matchings.hpp"
#include "htpair/oracle.hpp"
#include "json.hpp"

namespace htpair {

struct PipelineOptions {
    int t = 3;
    std::uint64_t seed = 0;
    bool strict = false;
    int max_tries = 64;            // partition resampling budget
    long long budget = 100000;     // embedder backtrack budget
    Rational gamma = Rational(1, 1024);
};

// One full pass: partition selection -> aux graph -> regularization ->
// greedy embedding -> certificate. Failure stage is encoded in
// embed_outcome: success | empty-aux | too-sparse | exhausted-candidates |
// backtrack-budget | gate-failed | empty-graph.
struct PipelineResult {
    long long partition_count = 0;  // cross matchings of the chosen partition
    long long aux_edges = 0;
    int m = 0, delta = 0;
    Rational bigK;
    std::string embed_outcome;
    std::optional<Equipartition> partition;
    std::optional<EmbedOutcome> embed;
    std::optional<CertificatePair> cert;
};

PipelineResult run_pipeline(const ProperColoring& c, const PipelineOptions& opt);

// "12" | "n" | "n-1" | "n+2" | "2n" | "3n/2" (floored); throws on anything else.
int parse_colors_expr(const std::string& expr, int n);

struct ExperimentRow {
    int n = 0, t = 0, num_colors = 0;
    std::uint64_t seed = 0;
    long long partition_count = 0, aux_edges = 0;
    int m = 0, delta = 0;
    std::string bigK;  // "p/q"
    std::string embed_outcome, oracle_outcome;
    long long wall_time_ms = 0;
};

std::string experiment_csv_header();
std::string to_csv(const ExperimentRow& row);

// One experiment row: builds the coloring (family "roundrobin" or "greedy"),
// runs the pipeline, runs the brute-force pair search when it is feasible
// (t = 3, n <= 16), and returns the filled row plus the certificate when the
// embedding succeeded.
ExperimentRow run_experiment_row(const std::string& family, int n, int t, int target_colors,
                                 std::uint64_t seed, const PipelineOptions& opt,
                                 std::optional<CertificatePair>* cert_out = nullptr);

// Dispatch a full command line (without the program name). Exit codes:
// 0 = requested object produced, 1 = well-formed negative, 2 = usage or I/O.
int run_command(const std::vector<std::string>& argv);

nlohmann::json to_json(const PipelineResult& r);

}  // namespace htpair
