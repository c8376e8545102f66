#include "htpair/auxgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace htpair {

namespace {

int intern(std::unordered_map<long long, int>& ids, std::vector<std::pair<int, int>>& pairs,
           int n, std::pair<int, int> pr) {
    long long key = static_cast<long long>(pr.first) * n + pr.second;
    auto [it, fresh] = ids.try_emplace(key, static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back(pr);
    return it->second;
}

}  // namespace

AuxGraph build_aux(const ProperColoring& c, const Equipartition& p) {
    if (!p.covers(c.n)) throw std::invalid_argument("partition does not cover the coloring's vertex set");
    AuxGraph g;
    g.coloring = c;
    g.partition = p;

    std::vector<std::vector<std::pair<int, int>>> span13(c.num_colors), span24(c.num_colors);
    for (int i = 0; i < c.n; ++i)
        for (int j = i + 1; j < c.n; ++j) {
            int pi = p.part_of[i], pj = p.part_of[j];
            int col = c.color(i, j);
            if ((pi == 0 && pj == 2) || (pi == 2 && pj == 0))
                span13[col].push_back(pi == 0 ? std::pair{i, j} : std::pair{j, i});
            else if ((pi == 1 && pj == 3) || (pi == 3 && pj == 1))
                span24[col].push_back(pi == 1 ? std::pair{i, j} : std::pair{j, i});
        }

    std::unordered_map<long long, int> left_ids, right_ids;
    std::vector<std::pair<int, int>> edges;
    for (int col = 0; col < c.num_colors; ++col)
        for (auto [x1, x3] : span13[col])
            for (auto [x2, x4] : span24[col]) {
                int l = intern(left_ids, g.left_pairs, c.n, {x1, x2});
                int r = intern(right_ids, g.right_pairs, c.n, {x3, x4});
                edges.push_back({l, r});
            }

    g.left_adj.resize(g.left_pairs.size());
    g.right_adj.resize(g.right_pairs.size());
    for (auto [l, r] : edges) {
        g.left_adj[l].push_back(r);
        g.right_adj[r].push_back(l);
    }
    for (auto& a : g.left_adj) std::sort(a.begin(), a.end());
    for (auto& a : g.right_adj) std::sort(a.begin(), a.end());
    return g;
}

namespace {

std::optional<SharedNeighborViolation> scan_side(const std::vector<std::vector<int>>& adj,
                                                 const std::vector<std::pair<int, int>>& other_pairs,
                                                 bool on_left) {
    std::unordered_map<int, int> first_owner;  // K_n vertex -> neighbor id
    for (std::size_t s = 0; s < adj.size(); ++s) {
        first_owner.clear();
        for (int t : adj[s]) {
            for (int v : {other_pairs[t].first, other_pairs[t].second}) {
                auto [it, fresh] = first_owner.try_emplace(v, t);
                if (!fresh && it->second != t) {
                    SharedNeighborViolation viol;
                    viol.on_left = on_left;
                    viol.s = static_cast<int>(s);
                    viol.kn_vertex = v;
                    viol.t1 = it->second;
                    viol.t2 = t;
                    return viol;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<SharedNeighborViolation> check_unique_shared_neighbor(const AuxGraph& g) {
    if (auto v = scan_side(g.left_adj, g.right_pairs, true)) return v;
    return scan_side(g.right_adj, g.left_pairs, false);
}

EdgeBoundReport edge_lower_bound_report(const ProperColoring& c, const AuxGraph& g,
                                        const Rational& gamma, int t) {
    if (t < 3) throw std::invalid_argument("t must be >= 3");
    if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
    EdgeBoundReport rep;
    rep.edges = g.edge_count();
    rep.matchings_over_256 = Rational(sum_pairs_per_color(c), 256);

    int C = c.num_colors;
    Rational avg(BigInt(c.n) * (c.n - 1) / 2, C);
    rep.jensen_rhs = Rational(C) * binom2(avg) / 256;

    BigInt n4 = BigInt(c.n);
    n4 = n4 * n4 * n4 * n4;
    rep.quartic_over_colors = Rational(n4, BigInt(1024) * C);

    double universe = static_cast<double>(c.n) * c.n / 8.0;  // |V(aux)| as in the analysis
    double expo = 1.5 - 1.0 / (4.0 * t - 6.0);
    rep.universe_power = std::pow(universe, expo) / (1024.0 * to_double(gamma));

    rep.link_edges_ge_matchings = Rational(rep.edges) >= rep.matchings_over_256;
    rep.jensen_holds = rep.matchings_over_256 >= rep.jensen_rhs;
    rep.link_matchings_ge_quartic = rep.matchings_over_256 >= rep.quartic_over_colors;
    rep.link_quartic_gt_power = to_double(rep.quartic_over_colors) > rep.universe_power;
    return rep;
}

nlohmann::json aux_to_json(const AuxGraph& g) {
    auto key = [](std::pair<int, int> p) {
        return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
    };
    nlohmann::json adjacency = nlohmann::json::object();
    for (std::size_t l = 0; l < g.left_pairs.size(); ++l) {
        nlohmann::json nbrs = nlohmann::json::array();
        for (int r : g.left_adj[l]) nbrs.push_back(key(g.right_pairs[r]));
        adjacency[key(g.left_pairs[l])] = std::move(nbrs);
    }
    return nlohmann::json{{"n", g.coloring.n},
                          {"left_vertices", g.left_pairs.size()},
                          {"right_vertices", g.right_pairs.size()},
                          {"edges", g.edge_count()},
                          {"adjacency", std::move(adjacency)}};
}

nlohmann::json to_json(const EdgeBoundReport& r) {
    return nlohmann::json{{"edges", r.edges},
                          {"matchings_over_256", to_string(r.matchings_over_256)},
                          {"jensen_rhs", to_string(r.jensen_rhs)},
                          {"quartic_over_colors", to_string(r.quartic_over_colors)},
                          {"universe_power", r.universe_power},
                          {"link_edges_ge_matchings", r.link_edges_ge_matchings},
                          {"jensen_holds", r.jensen_holds},
                          {"link_matchings_ge_quartic", r.link_matchings_ge_quartic},
                          {"link_quartic_gt_power", r.link_quartic_gt_power}};
}

}  // namespace htpair
