#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "htpair/coloring.hpp"
#include "htpair/rational.hpp"
#include "json.hpp"

namespace htpair {

// A balanced partition of [n] into four parts X1..X4 (indices 0..3). Part
// sizes follow part_sizes(n): floor(n/4) each, remainder spread over the
// first parts.
struct Equipartition {
    int n = 0;
    std::array<std::vector<int>, 4> parts;  // each sorted ascending
    std::vector<int> part_of;               // size n, values 0..3

    bool covers(int m) const { return n == m && static_cast<int>(part_of.size()) == m; }
};

std::array<int, 4> part_sizes(int n);

// Uniform among balanced 4-partitions: seeded shuffle, then split by
// part_sizes. Deterministic per seed.
Equipartition sample_equipartition(int n, std::uint64_t seed);

Equipartition partition_from_parts(int n, const std::array<std::vector<int>, 4>& parts);

// Number of unordered pairs of disjoint same-colored edges {e,f} with e
// running between X1 and X3 and f between X2 and X4.
long long count_cross_matchings(const ProperColoring& c, const Equipartition& p);

// Exact expectation of count_cross_matchings under a uniform balanced
// 4-partition. Each disjoint same-colored pair {ab, cd} lands in the cross
// form with probability 8*s1*s2*s3*s4 / (n(n-1)(n-2)(n-3)): two choices of
// which edge spans {X1,X3}, two orientations each.
Rational exact_expectation(const ProperColoring& c);

struct PartitionSelection {
    Equipartition partition;
    long long count = 0;
    Rational threshold;       // sum_pairs_per_color / 256
    int tries_used = 0;
    bool met_threshold = false;
};

// Samples partitions until one reaches the 1/256 threshold; if none does
// within max_tries, returns the best one found, flagged.
PartitionSelection select_good_partition(const ProperColoring& c, std::uint64_t seed, int max_tries);

nlohmann::json to_json(const Equipartition& p);
Equipartition partition_from_json(int n, const nlohmann::json& j);

}  // namespace htpair
