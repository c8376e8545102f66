#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "htpair/coloring.hpp"
#include "htpair/rational.hpp"
#include "htpair/regularize.hpp"
#include "json.hpp"

namespace htpair {

// lex rank of the pair (i,j), 0 <= i < j < t
inline int pair_rank(int t, int i, int j) { return i * t - i * (i + 1) / 2 + (j - i - 1); }

struct PipelineParams {
    int t = 3;
    Rational gamma = Rational(1, 1024);
    int light_threshold = 6;  // 2*C(t,2): codegrees below this are light
    bool relaxed = true;      // record cardinality gates without enforcing them
    std::uint64_t seed = 0;
    long long max_backtracks = 100000;

    static PipelineParams for_t(int t) {
        PipelineParams p;
        p.t = t;
        p.light_threshold = t * (t - 1);
        return p;
    }
};

// Branch/subdivision vertices of an embedded 1-subdivision of K_t, as indices
// into side A resp. side B of a RegularizedSubgraph. subdiv is in lex order
// of the branch pairs (use pair_rank).
struct HtEmbedding {
    int t = 0;
    std::vector<int> branch;
    std::vector<int> subdiv;
};

// Two vertex-disjoint copies of the subdivision in K_n that use equal colors
// edge-for-edge under the index-aligned isomorphism.
struct CertificatePair {
    int t = 0;
    std::vector<int> copy1_branch, copy2_branch;
    std::vector<int> copy1_subdiv, copy2_subdiv;  // lex order of branch pairs
    bool colors_checked = false;
};

struct InternalInconsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

int codegree(const RegularizedSubgraph& g0, int u, int v);
long long weight_sum(const RegularizedSubgraph& g0, const std::vector<int>& U);

// W(U) >= delta^2/(2m) * C(|U|,2), valid whenever delta*|U| >= 2m.
struct CodegreeSumReport {
    long long weight = 0;
    Rational bound;
    bool precondition = false;  // delta*|U| >= 2m
    bool holds = false;
};
CodegreeSumReport codegree_sum_check(const RegularizedSubgraph& g0, const std::vector<int>& U);

// Pairs of side-A vertices split by codegree: zero / light (1 <= W < thr) /
// heavy (W >= thr).
struct EdgeClasses {
    std::vector<std::pair<int, int>> light, heavy, zero;
};
EdgeClasses classify_edges(const RegularizedSubgraph& g0, const std::vector<int>& U,
                           int light_threshold);

// For each b in B with h = |N(b) cap U| >= 2(t-1): search the heavy graph on
// N(b) cap U for a K_t. If none, check the light-edge counts against
// C(h,2)/(t-1) (reported form) and h^2/(4(t-1)) (the guaranteed floor).
struct TuranAuditEntry {
    int b = 0;
    int h = 0;
    std::vector<int> heavy_clique;  // nonempty iff a heavy K_t was found
    long long light_count = 0;
    Rational reported_bound;  // C(h,2)/(t-1)
    Rational floor_bound;     // h^2/(4(t-1))
    bool reported_holds = false;
    bool floor_holds = false;
};
struct TuranAudit {
    std::vector<TuranAuditEntry> entries;  // only b with h >= 2(t-1)
    bool any_heavy_clique = false;
    // aggregate: light edges inside U vs (delta^2/(16 t^3 m)) * C(|U|,2),
    // meaningful when no heavy K_t exists and |U| >= max(2, 8tm/delta)
    long long total_light = 0;
    Rational aggregate_bound;
    bool aggregate_precondition = false;
    bool aggregate_holds = false;
};
TuranAudit turan_light_audit(const RegularizedSubgraph& g0, const std::vector<int>& U,
                             const PipelineParams& params);

enum class EmbedFailureReason { None, EmptyGraph, ExhaustedCandidates, BacktrackBudget, GateFailed };

const char* to_string(EmbedFailureReason r);

struct DeletionTally {
    long long share_with_branch = 0;    // pair meets an already-chosen branch pair in K_n
    long long triple_intersection = 0;  // u with N(u_i) cap N(u_j) cap N(u) nonempty
    long long pair_share = 0;           // u adjacent to a b whose pair meets P_ij coordinates
    long long light_filter = 0;         // dropped when shrinking to light neighbors of u_l
};

struct GateRecord {
    std::string name;  // size_floor | pigeonhole_domain | deletion_headroom
    int step = 0;      // 1-based branch step
    Rational lhs, rhs;
    bool holds = false;
};

struct EmbedTrace {
    std::vector<long long> candidate_sizes;  // |U| at pick time, per branch step
    std::vector<DeletionTally> deletions;    // per branch step
    std::vector<GateRecord> gates;
    long long backtracks_used = 0;
};

struct EmbedOutcome {
    std::optional<HtEmbedding> embedding;
    EmbedFailureReason reason = EmbedFailureReason::None;
    int fail_step = 0;  // branch step, or t when subdivision assignment failed
    std::string failed_gate;
    EmbedTrace trace;
    bool ok() const { return embedding.has_value(); }
};

// Greedy branch-vertex selection with codegree-based deletions, then
// backtracking subdivision assignment. Deterministic.
EmbedOutcome greedy_embed(const RegularizedSubgraph& g0, const PipelineParams& params);

// Subdivision assignment for a fixed branch set (also the path taken when a
// heavy K_t is found by the audit). Backtracking, smallest-id-first.
std::optional<HtEmbedding> complete_embedding(const RegularizedSubgraph& g0,
                                              const std::vector<int>& branch,
                                              const PipelineParams& params,
                                              long long* backtracks_out = nullptr);

// Structural checks on an embedding; throws InternalInconsistencyError.
void validate_embedding(const RegularizedSubgraph& g0, const HtEmbedding& e);

// Map an embedding to the two disjoint color-isomorphic copies it encodes:
// copy1 takes first coordinates of the chosen pairs, copy2 second
// coordinates. Validates every invariant; throws InternalInconsistencyError
// on any violation.
CertificatePair lift_to_certificate(const RegularizedSubgraph& g0, const HtEmbedding& e,
                                    const ProperColoring& coloring);

nlohmann::json cert_to_json(const CertificatePair& cert);
CertificatePair cert_from_json(const nlohmann::json& j);
nlohmann::json to_json(const EmbedOutcome& o);
nlohmann::json to_json(const TuranAudit& a);

}  // namespace htpair
