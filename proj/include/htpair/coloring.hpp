#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace htpair {

// Edge index of (i,j), 0 <= i < j < n. This layout is a serialization
// contract: coloring files written by one build must load bit-exactly in
// another.
inline std::size_t edge_index(int n, int i, int j) {
    return static_cast<std::size_t>(i) * n - static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> edge_endpoints(int n, std::size_t idx);

// A proper edge-coloring of K_n: no two edges sharing a vertex have the same
// color. num_colors counts the colors actually used; ids are dense in
// [0, num_colors).
struct ProperColoring {
    int n = 0;
    int num_colors = 0;
    std::vector<int> edge_color;  // length n(n-1)/2, edge_index order

    static std::size_t edge_count(int n) {
        return static_cast<std::size_t>(n) * (n - 1) / 2;
    }
    int color(int i, int j) const {
        return edge_color[i < j ? edge_index(n, i, j) : edge_index(n, j, i)];
    }
};

struct EdgePairViolation {
    std::size_t edge_a = 0, edge_b = 0;  // edge indices, edge_a < edge_b
    int vertex = 0;                      // the shared endpoint
    int color = 0;
};

struct ValidationReport {
    bool ok = false;      // structurally sound and proper
    bool proper = false;  // no incident same-colored pair (ignores structure)
    std::vector<std::string> structural_errors;
    std::vector<EdgePairViolation> violations;
};

ValidationReport validate(const ProperColoring& c);

// Circle-method 1-factorization. Even n: n-1 colors, every class a perfect
// matching of size n/2. Odd n: built on n+1 vertices with the last one
// dropped, giving n colors of size (n-1)/2.
ProperColoring generate_round_robin(int n);

// Visits edges in seeded random order and gives each the least-used color
// admissible at both endpoints, drawing from a palette of target_colors and
// opening an extra color only when forced. Deterministic per seed.
ProperColoring generate_greedy_random(int n, int target_colors, std::uint64_t seed);

// Every edge its own color; the zero case for all matching counts.
ProperColoring generate_rainbow(int n);

struct ColorHistogram {
    std::vector<long long> sizes;  // indexed by color id
};

ColorHistogram histogram(const ProperColoring& c);

// sum over colors of (e_c choose 2): the number of unordered pairs of
// distinct same-colored edges.
long long sum_pairs_per_color(const ProperColoring& c);

std::uint64_t coloring_hash(const ProperColoring& c);

nlohmann::json to_json(const ProperColoring& c);
ProperColoring coloring_from_json(const nlohmann::json& j);

}  // namespace htpair
