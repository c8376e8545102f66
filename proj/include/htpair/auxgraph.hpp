#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "htpair/coloring.hpp"
#include "htpair/matchings.hpp"
#include "htpair/rational.hpp"
#include "json.hpp"

namespace htpair {

// Bipartite graph on vertex pairs: left vertices are pairs (x1,x2) in X1xX2,
// right vertices pairs (x3,x4) in X3xX4, and (x1,x2)~(x3,x4) exactly when
// color(x1x3) = color(x2x4). Pairs with no incident edge are not
// materialized, so size scales with the number of monochromatic matchings.
struct AuxGraph {
    std::vector<std::pair<int, int>> left_pairs, right_pairs;
    std::vector<std::vector<int>> left_adj, right_adj;  // sorted neighbor ids
    ProperColoring coloring;                            // provenance
    Equipartition partition;

    long long edge_count() const {
        long long e = 0;
        for (const auto& a : left_adj) e += static_cast<long long>(a.size());
        return e;
    }
};

// Two pair-vertices share a K_n vertex iff their underlying 2-sets intersect.
inline bool pairs_share_vertex(std::pair<int, int> a, std::pair<int, int> b) {
    return a.first == b.first || a.first == b.second || a.second == b.first || a.second == b.second;
}

// Enumerates edges color class by color class; never scans the full pair
// universe. The edge count equals count_cross_matchings by construction.
AuxGraph build_aux(const ProperColoring& c, const Equipartition& p);

struct SharedNeighborViolation {
    bool on_left = false;  // side of the vertex s
    int s = 0;             // vertex id within its side
    int kn_vertex = 0;     // the K_n vertex contained in two neighbors
    int t1 = 0, t2 = 0;    // the two offending neighbors
};

// For every vertex S and every K_n vertex v, at most one neighbor of S may
// contain v; with a proper coloring two such neighbors would force two
// same-colored edges at one endpoint of S. Returns a counterexample if the
// property fails (only possible for hand-built graphs).
std::optional<SharedNeighborViolation> check_unique_shared_neighbor(const AuxGraph& g);

struct EdgeBoundReport {
    long long edges = 0;                 // |E(aux)|
    Rational matchings_over_256;         // (1/256) sum_c C(e_c,2)
    Rational jensen_rhs;                 // (1/256) * C * C(avg,2), continuous binomial
    Rational quartic_over_colors;        // n^4 / (1024 C)
    double universe_power = 0.0;         // (n^2/8)^(3/2 - 1/(4t-6)) / (1024 gamma)
    bool link_edges_ge_matchings = false;
    bool jensen_holds = false;           // matchings_over_256 >= jensen_rhs (always, by convexity)
    bool link_matchings_ge_quartic = false;  // asymptotic in the analysis; can fail at desk scale
    bool link_quartic_gt_power = false;
};

EdgeBoundReport edge_lower_bound_report(const ProperColoring& c, const AuxGraph& g,
                                        const Rational& gamma, int t);

nlohmann::json aux_to_json(const AuxGraph& g);
nlohmann::json to_json(const EdgeBoundReport& r);

}  // namespace htpair
