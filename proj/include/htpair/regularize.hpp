#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "htpair/auxgraph.hpp"
#include "htpair/rational.hpp"
#include "json.hpp"

namespace htpair {

// An almost-regular balanced bipartite subgraph of an aux graph. Side A is
// where branch vertices are chosen, side B supplies subdivision vertices;
// m = |B|, delta = min degree, bigK = max/min degree ratio. Self-contained:
// adjacency is re-indexed, underlying K_n pairs are copied in.
struct RegularizedSubgraph {
    bool a_is_left = true;
    std::vector<int> a_ids, b_ids;  // vertex ids in the source aux side
    std::vector<std::pair<int, int>> a_pairs, b_pairs;
    std::vector<std::vector<int>> a_adj, b_adj;  // sorted, indices into the other side

    long long edges = 0;
    int m = 0;
    int delta = 0;
    int max_degree = 0;
    Rational bigK;   // max_degree / delta
    Rational alpha;  // (t-2)/(2t-3), carried for reporting

    // extraction trace
    int rounds = 0;
    long long original_edges = 0;
    long long bucket_retained_edges = 0;
    int bucket_pairs_considered = 0;  // nonempty buckets left * right
    std::map<int, long long> left_bucket_histogram, right_bucket_histogram;

    int size_a() const { return static_cast<int>(a_pairs.size()); }
    int size_b() const { return static_cast<int>(b_pairs.size()); }
};

struct RegularizeError : std::runtime_error {
    enum class Kind { EmptyInput, TooSparse };
    Kind kind;
    nlohmann::json diagnostics;
    RegularizeError(Kind k, const std::string& msg, nlohmann::json diag = {})
        : std::runtime_error(msg), kind(k), diagnostics(std::move(diag)) {}
};

// Extraction: (a) dyadic degree bucketing, keeping the bucket pair that
// retains the most edges; (b) peel vertices below half the average degree
// until stable; (c) trim the larger side by lowest degree until
// (1/2)|B| <= |A| <= 2|B|. Deterministic. The achieved degree ratio is
// measured and reported, not targeted.
RegularizedSubgraph almost_regular_balanced_subgraph(const AuxGraph& aux, const Rational& alpha,
                                                     int max_rounds = 64);

struct PipelineConstants {
    Rational alpha;          // (t-2)/(2t-3)
    double regularity_cap;   // 60 * 2^(1 + 1/alpha^2)
    Rational c0;             // 1/(1024*gamma)
    Rational c1;             // c0/10
};

PipelineConstants pipeline_constants(int t, const Rational& gamma);

nlohmann::json to_json(const RegularizedSubgraph& g);

}  // namespace htpair
