#include "htpair/matchings.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "htpair/rng.hpp"

namespace htpair {

std::array<int, 4> part_sizes(int n) {
    std::array<int, 4> s;
    for (int i = 0; i < 4; ++i) s[i] = n / 4 + (i < n % 4 ? 1 : 0);
    return s;
}

Equipartition sample_equipartition(int n, std::uint64_t seed) {
    if (n < 4) throw std::invalid_argument("equipartition needs n >= 4");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    SplitMix64 rng(seed);
    rng.shuffle(perm);

    Equipartition p;
    p.n = n;
    p.part_of.assign(n, -1);
    auto sizes = part_sizes(n);
    std::size_t pos = 0;
    for (int part = 0; part < 4; ++part) {
        for (int k = 0; k < sizes[part]; ++k) {
            int v = perm[pos++];
            p.parts[part].push_back(v);
            p.part_of[v] = part;
        }
        std::sort(p.parts[part].begin(), p.parts[part].end());
    }
    return p;
}

Equipartition partition_from_parts(int n, const std::array<std::vector<int>, 4>& parts) {
    Equipartition p;
    p.n = n;
    p.part_of.assign(n, -1);
    for (int part = 0; part < 4; ++part) {
        p.parts[part] = parts[part];
        std::sort(p.parts[part].begin(), p.parts[part].end());
        for (int v : p.parts[part]) {
            if (v < 0 || v >= n || p.part_of[v] != -1)
                throw std::invalid_argument("parts must be disjoint subsets of [n]");
            p.part_of[v] = part;
        }
    }
    for (int v = 0; v < n; ++v)
        if (p.part_of[v] == -1) throw std::invalid_argument("parts must cover [n]");
    return p;
}

namespace {

// per color: edges spanning {X1,X3} and edges spanning {X2,X4}
struct CrossBuckets {
    std::vector<std::vector<std::pair<int, int>>> span13, span24;  // (x1,x3) / (x2,x4)
};

CrossBuckets cross_buckets(const ProperColoring& c, const Equipartition& p) {
    CrossBuckets b;
    b.span13.resize(c.num_colors);
    b.span24.resize(c.num_colors);
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j) {
            int pi = p.part_of[i], pj = p.part_of[j];
            if (pi > pj) std::swap(pi, pj);
            int col = c.color(i, j);
            if (pi == 0 && pj == 2)
                b.span13[col].push_back(p.part_of[i] == 0 ? std::pair{i, j} : std::pair{j, i});
            else if (pi == 1 && pj == 3)
                b.span24[col].push_back(p.part_of[i] == 1 ? std::pair{i, j} : std::pair{j, i});
        }
    return b;
}

}  // namespace

long long count_cross_matchings(const ProperColoring& c, const Equipartition& p) {
    if (!p.covers(c.n)) throw std::invalid_argument("partition does not cover the coloring's vertex set");
    auto b = cross_buckets(c, p);
    long long total = 0;
    for (int col = 0; col < c.num_colors; ++col)
        total += static_cast<long long>(b.span13[col].size()) * b.span24[col].size();
    return total;
}

Rational exact_expectation(const ProperColoring& c) {
    if (c.n < 8) throw std::invalid_argument("exact_expectation needs n >= 8");
    auto s = part_sizes(c.n);
    BigInt num = BigInt(8) * s[0] * s[1] * s[2] * s[3];
    BigInt den = BigInt(c.n) * (c.n - 1) * (c.n - 2) * (c.n - 3);
    Rational per_pair(num, den);

    // count same-colored pairs by intersection pattern; only disjoint pairs
    // can realize the cross form (in a proper coloring that is all of them)
    std::vector<std::vector<std::pair<int, int>>> classes(c.num_colors);
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j) classes[c.color(i, j)].push_back({i, j});
    long long disjoint_pairs = 0;
    for (const auto& cls : classes)
        for (std::size_t a = 0; a < cls.size(); ++a)
            for (std::size_t b = a + 1; b < cls.size(); ++b) {
                auto [p1, q1] = cls[a];
                auto [p2, q2] = cls[b];
                if (p1 != p2 && p1 != q2 && q1 != p2 && q1 != q2) ++disjoint_pairs;
            }
    return per_pair * disjoint_pairs;
}

PartitionSelection select_good_partition(const ProperColoring& c, std::uint64_t seed, int max_tries) {
    if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
    PartitionSelection sel;
    sel.threshold = Rational(sum_pairs_per_color(c), 256);
    long long best = -1;
    for (int i = 0; i < max_tries; ++i) {
        Equipartition p = sample_equipartition(c.n, derive_seed(seed, {0x9a7, static_cast<std::uint64_t>(i)}));
        long long cnt = count_cross_matchings(c, p);
        if (cnt > best) {
            best = cnt;
            sel.partition = std::move(p);
            sel.count = cnt;
        }
        sel.tries_used = i + 1;
        if (Rational(cnt) >= sel.threshold) {
            sel.met_threshold = true;
            break;
        }
    }
    return sel;
}

nlohmann::json to_json(const Equipartition& p) {
    return nlohmann::json{{"parts", p.parts}};
}

Equipartition partition_from_json(int n, const nlohmann::json& j) {
    std::array<std::vector<int>, 4> parts;
    auto arr = j.at("parts");
    if (!arr.is_array() || arr.size() != 4) throw std::invalid_argument("parts must be a 4-element array");
    for (int i = 0; i < 4; ++i) parts[i] = arr[i].get<std::vector<int>>();
    return partition_from_parts(n, parts);
}

}  // namespace htpair
