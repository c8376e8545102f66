#include "htpair/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "htpair/rng.hpp"

namespace htpair {

std::pair<int, int> edge_endpoints(int n, std::size_t idx) {
    // walk rows; n is small everywhere this is used
    std::size_t row_len = static_cast<std::size_t>(n) - 1;
    int i = 0;
    while (idx >= row_len) {
        idx -= row_len;
        --row_len;
        ++i;
    }
    return {i, i + 1 + static_cast<int>(idx)};
}

ValidationReport validate(const ProperColoring& c) {
    ValidationReport rep;
    if (c.n < 2) {
        rep.structural_errors.push_back("n must be at least 2");
        return rep;
    }
    std::size_t want = ProperColoring::edge_count(c.n);
    if (c.edge_color.size() != want) {
        rep.structural_errors.push_back("edge_color has length " + std::to_string(c.edge_color.size()) +
                                        ", expected " + std::to_string(want));
        return rep;
    }
    std::vector<char> used(std::max(c.num_colors, 0), 0);
    for (std::size_t e = 0; e < c.edge_color.size(); ++e) {
        int col = c.edge_color[e];
        if (col < 0 || col >= c.num_colors) {
            rep.structural_errors.push_back("edge " + std::to_string(e) + " has color id " +
                                            std::to_string(col) + " outside [0," +
                                            std::to_string(c.num_colors) + ")");
        } else {
            used[col] = 1;
        }
    }
    if (rep.structural_errors.empty()) {
        for (int col = 0; col < c.num_colors; ++col)
            if (!used[col])
                rep.structural_errors.push_back("color id " + std::to_string(col) + " is unused");
    }

    // properness: check every vertex's incident edges grouped by color
    bool in_range = true;
    for (int col : c.edge_color)
        if (col < 0) in_range = false;
    if (in_range) {
        std::vector<std::vector<std::pair<int, std::size_t>>> incident(c.n);  // (color, edge idx)
        for (int i = 0; i < c.n; ++i)
            for (int j = i + 1; j < c.n; ++j) {
                std::size_t e = edge_index(c.n, i, j);
                incident[i].push_back({c.edge_color[e], e});
                incident[j].push_back({c.edge_color[e], e});
            }
        for (int v = 0; v < c.n; ++v) {
            auto& inc = incident[v];
            std::sort(inc.begin(), inc.end());
            for (std::size_t a = 0; a < inc.size(); ++a)
                for (std::size_t b = a + 1; b < inc.size() && inc[b].first == inc[a].first; ++b) {
                    EdgePairViolation viol;
                    viol.edge_a = std::min(inc[a].second, inc[b].second);
                    viol.edge_b = std::max(inc[a].second, inc[b].second);
                    viol.vertex = v;
                    viol.color = inc[a].first;
                    rep.violations.push_back(viol);
                }
        }
    }
    rep.proper = rep.violations.empty() && in_range;
    rep.ok = rep.proper && rep.structural_errors.empty();
    return rep;
}

ProperColoring generate_round_robin(int n) {
    if (n < 2) throw std::invalid_argument("round robin needs n >= 2");
    bool odd = (n % 2) != 0;
    int full = odd ? n + 1 : n;  // even vertex count the 1-factorization lives on
    ProperColoring c;
    c.n = n;
    c.num_colors = full - 1;
    c.edge_color.assign(ProperColoring::edge_count(n), -1);

    int k = full - 1;  // circle vertices 0..k-1, hub = k
    auto put = [&](int a, int b, int col) {
        if (a >= n || b >= n) return;  // dropped dummy vertex in the odd case
        c.edge_color[a < b ? edge_index(n, a, b) : edge_index(n, b, a)] = col;
    };
    for (int r = 0; r < k; ++r) {
        put(r, k, r);
        for (int s = 1; s <= (full - 2) / 2; ++s) {
            int a = (r + s) % k;
            int b = (r - s + k) % k;
            put(a, b, r);
        }
    }
    return c;
}

ProperColoring generate_greedy_random(int n, int target_colors, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("greedy coloring needs n >= 2");
    int chromatic_index = (n % 2 == 0) ? n - 1 : n;
    if (target_colors < chromatic_index)
        throw std::invalid_argument("target_colors below the chromatic index of K_n");

    std::size_t m = ProperColoring::edge_count(n);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 rng(seed);
    rng.shuffle(order);

    int palette = target_colors;
    std::vector<long long> count(palette, 0);
    std::vector<std::vector<char>> used(n, std::vector<char>(palette, 0));

    ProperColoring c;
    c.n = n;
    c.edge_color.assign(m, -1);

    for (std::size_t e : order) {
        auto [i, j] = edge_endpoints(n, e);
        int best = -1;
        for (int col = 0; col < palette; ++col) {
            if (used[i][col] || used[j][col]) continue;
            if (best < 0 || count[col] < count[best]) best = col;
        }
        if (best < 0) {  // forced: both endpoints exhaust the palette
            best = palette++;
            count.push_back(0);
            for (auto& u : used) u.push_back(0);
        }
        c.edge_color[e] = best;
        ++count[best];
        used[i][best] = used[j][best] = 1;
    }

    // compact away colors the least-used rule never reached
    std::vector<int> remap(palette, -1);
    int next = 0;
    for (int col = 0; col < palette; ++col)
        if (count[col] > 0) remap[col] = next++;
    for (auto& col : c.edge_color) col = remap[col];
    c.num_colors = next;
    return c;
}

ProperColoring generate_rainbow(int n) {
    if (n < 2) throw std::invalid_argument("rainbow needs n >= 2");
    ProperColoring c;
    c.n = n;
    c.num_colors = static_cast<int>(ProperColoring::edge_count(n));
    c.edge_color.resize(c.num_colors);
    std::iota(c.edge_color.begin(), c.edge_color.end(), 0);
    return c;
}

ColorHistogram histogram(const ProperColoring& c) {
    ColorHistogram h;
    h.sizes.assign(c.num_colors, 0);
    for (int col : c.edge_color) ++h.sizes.at(col);
    return h;
}

long long sum_pairs_per_color(const ProperColoring& c) {
    long long total = 0;
    for (long long e : histogram(c).sizes) total += e * (e - 1) / 2;
    return total;
}

std::uint64_t coloring_hash(const ProperColoring& c) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    auto mix = [&](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(static_cast<std::uint64_t>(c.n));
    mix(static_cast<std::uint64_t>(c.num_colors));
    for (int col : c.edge_color) mix(static_cast<std::uint64_t>(col));
    return h;
}

nlohmann::json to_json(const ProperColoring& c) {
    return nlohmann::json{{"n", c.n}, {"num_colors", c.num_colors}, {"edge_color", c.edge_color}};
}

ProperColoring coloring_from_json(const nlohmann::json& j) {
    ProperColoring c;
    c.n = j.at("n").get<int>();
    c.num_colors = j.at("num_colors").get<int>();
    c.edge_color = j.at("edge_color").get<std::vector<int>>();
    return c;
}

}  // namespace htpair
