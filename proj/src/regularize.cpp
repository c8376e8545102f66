#include "htpair/regularize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace htpair {

namespace {

int dyadic_bucket(long long deg) {
    // floor(log2(deg)) for deg >= 1
    int b = 0;
    while (deg > 1) {
        deg >>= 1;
        ++b;
    }
    return b;
}

}  // namespace

RegularizedSubgraph almost_regular_balanced_subgraph(const AuxGraph& aux, const Rational& alpha,
                                                     int max_rounds) {
    const int nl = static_cast<int>(aux.left_pairs.size());
    const int nr = static_cast<int>(aux.right_pairs.size());
    if (nl == 0 || nr == 0 || aux.edge_count() == 0)
        throw RegularizeError(RegularizeError::Kind::EmptyInput, "aux graph has no edges",
                              {{"left", nl}, {"right", nr}});

    RegularizedSubgraph out;
    out.alpha = alpha;
    out.original_edges = aux.edge_count();

    // (a) dyadic bucketing on original degrees; keep the pair of buckets
    // (one per side) spanning the most edges. Ties resolve to the
    // lexicographically smallest (left_bucket, right_bucket).
    std::vector<int> lb(nl), rb(nr);
    for (int u = 0; u < nl; ++u) {
        lb[u] = dyadic_bucket(static_cast<long long>(aux.left_adj[u].size()));
        ++out.left_bucket_histogram[lb[u]];
    }
    for (int v = 0; v < nr; ++v) {
        rb[v] = dyadic_bucket(static_cast<long long>(aux.right_adj[v].size()));
        ++out.right_bucket_histogram[rb[v]];
    }
    std::map<std::pair<int, int>, long long> span;
    for (int u = 0; u < nl; ++u)
        for (int v : aux.left_adj[u]) ++span[{lb[u], rb[v]}];
    std::pair<int, int> best_pair = span.begin()->first;
    long long best_edges = 0;
    for (const auto& [pr, cnt] : span)
        if (cnt > best_edges) {  // map order makes first maximum lex-smallest
            best_edges = cnt;
            best_pair = pr;
        }
    out.bucket_retained_edges = best_edges;
    out.bucket_pairs_considered = static_cast<int>(out.left_bucket_histogram.size()) *
                                  static_cast<int>(out.right_bucket_histogram.size());

    std::vector<char> aliveL(nl, 0), aliveR(nr, 0);
    for (int u = 0; u < nl; ++u) aliveL[u] = (lb[u] == best_pair.first);
    for (int v = 0; v < nr; ++v) aliveR[v] = (rb[v] == best_pair.second);

    auto recount = [&](std::vector<long long>& dl, std::vector<long long>& dr) -> long long {
        dl.assign(nl, 0);
        dr.assign(nr, 0);
        long long e = 0;
        for (int u = 0; u < nl; ++u) {
            if (!aliveL[u]) continue;
            for (int v : aux.left_adj[u]) {
                if (!aliveR[v]) continue;
                ++dl[u];
                ++dr[v];
                ++e;
            }
        }
        return e;
    };

    std::vector<long long> dl, dr;
    long long E = recount(dl, dr);

    // (b) peel all vertices with deg < avg/2 = E/V (integer test deg*V < E),
    // recompute, repeat until stable.
    for (int round = 0; round < max_rounds; ++round) {
        long long V = 0;
        for (int u = 0; u < nl; ++u) V += aliveL[u];
        for (int v = 0; v < nr; ++v) V += aliveR[v];
        if (V == 0 || E == 0) break;
        bool dropped = false;
        for (int u = 0; u < nl; ++u)
            if (aliveL[u] && dl[u] * V < E) {
                aliveL[u] = 0;
                dropped = true;
            }
        for (int v = 0; v < nr; ++v)
            if (aliveR[v] && dr[v] * V < E) {
                aliveR[v] = 0;
                dropped = true;
            }
        if (!dropped) break;
        ++out.rounds;
        E = recount(dl, dr);
    }

    auto too_sparse = [&](const char* why) {
        long long L = std::count(aliveL.begin(), aliveL.end(), char(1));
        long long R = std::count(aliveR.begin(), aliveR.end(), char(1));
        return RegularizeError(RegularizeError::Kind::TooSparse, why,
                               {{"left", L}, {"right", R}, {"edges", E}});
    };
    if (E == 0) throw too_sparse("peeling removed every edge");

    // (c) balance: drop isolated vertices, then repeatedly remove the
    // lowest-degree vertex (smallest id on ties) of the larger side until
    // |larger| <= 2|smaller|.
    while (true) {
        for (int u = 0; u < nl; ++u)
            if (aliveL[u] && dl[u] == 0) aliveL[u] = 0;
        for (int v = 0; v < nr; ++v)
            if (aliveR[v] && dr[v] == 0) aliveR[v] = 0;
        long long L = std::count(aliveL.begin(), aliveL.end(), char(1));
        long long R = std::count(aliveR.begin(), aliveR.end(), char(1));
        if (L == 0 || R == 0) throw too_sparse("balancing emptied a side");
        if (L <= 2 * R && R <= 2 * L) break;
        if (L > 2 * R) {
            int pick = -1;
            for (int u = 0; u < nl; ++u)
                if (aliveL[u] && (pick < 0 || dl[u] < dl[pick])) pick = u;
            aliveL[pick] = 0;
        } else {
            int pick = -1;
            for (int v = 0; v < nr; ++v)
                if (aliveR[v] && (pick < 0 || dr[v] < dr[pick])) pick = v;
            aliveR[pick] = 0;
        }
        E = recount(dl, dr);
    }
    E = recount(dl, dr);

    long long L = std::count(aliveL.begin(), aliveL.end(), char(1));
    long long R = std::count(aliveR.begin(), aliveR.end(), char(1));

    // A = larger side (ties go left); B supplies subdivision vertices.
    out.a_is_left = (L >= R);

    long long mindeg = std::numeric_limits<long long>::max(), maxdeg = 0;
    for (int u = 0; u < nl; ++u)
        if (aliveL[u]) {
            mindeg = std::min(mindeg, dl[u]);
            maxdeg = std::max(maxdeg, dl[u]);
        }
    for (int v = 0; v < nr; ++v)
        if (aliveR[v]) {
            mindeg = std::min(mindeg, dr[v]);
            maxdeg = std::max(maxdeg, dr[v]);
        }

    const long long m = std::min(L, R);
    if (m < 4 || mindeg == 0)
        throw RegularizeError(RegularizeError::Kind::TooSparse, "degenerate subgraph",
                              {{"left", L}, {"right", R}, {"edges", E}, {"delta", mindeg}});

    // re-index
    std::vector<int> mapL(nl, -1), mapR(nr, -1);
    std::vector<int> idsL, idsR;
    for (int u = 0; u < nl; ++u)
        if (aliveL[u]) {
            mapL[u] = static_cast<int>(idsL.size());
            idsL.push_back(u);
        }
    for (int v = 0; v < nr; ++v)
        if (aliveR[v]) {
            mapR[v] = static_cast<int>(idsR.size());
            idsR.push_back(v);
        }
    std::vector<std::vector<int>> adjL(idsL.size()), adjR(idsR.size());
    for (int u = 0; u < nl; ++u) {
        if (!aliveL[u]) continue;
        for (int v : aux.left_adj[u]) {
            if (!aliveR[v]) continue;
            adjL[mapL[u]].push_back(mapR[v]);
            adjR[mapR[v]].push_back(mapL[u]);
        }
    }
    for (auto& a : adjL) std::sort(a.begin(), a.end());
    for (auto& a : adjR) std::sort(a.begin(), a.end());

    auto fill_side = [&](bool left, std::vector<int>& ids, std::vector<std::pair<int, int>>& pairs,
                         std::vector<std::vector<int>>& adj) {
        ids = left ? idsL : idsR;
        adj = left ? adjL : adjR;
        const auto& src = left ? aux.left_pairs : aux.right_pairs;
        pairs.clear();
        for (int id : ids) pairs.push_back(src[id]);
    };
    fill_side(out.a_is_left, out.a_ids, out.a_pairs, out.a_adj);
    fill_side(!out.a_is_left, out.b_ids, out.b_pairs, out.b_adj);

    out.edges = E;
    out.m = static_cast<int>(m);
    out.delta = static_cast<int>(mindeg);
    out.max_degree = static_cast<int>(maxdeg);
    out.bigK = Rational(maxdeg, mindeg);
    return out;
}

PipelineConstants pipeline_constants(int t, const Rational& gamma) {
    if (t < 3) throw std::invalid_argument("pipeline_constants: t must be >= 3");
    if (gamma <= 0) throw std::invalid_argument("pipeline_constants: gamma must be positive");
    PipelineConstants pc;
    pc.alpha = Rational(t - 2, 2 * t - 3);
    const double inv_a2 = to_double(Rational(1) / (pc.alpha * pc.alpha));
    pc.regularity_cap = 60.0 * std::pow(2.0, 1.0 + inv_a2);
    pc.c0 = Rational(1) / (Rational(1024) * gamma);
    pc.c1 = pc.c0 / 10;
    return pc;
}

nlohmann::json to_json(const RegularizedSubgraph& g) {
    nlohmann::json ja = nlohmann::json::array(), jb = nlohmann::json::array();
    for (const auto& [x, y] : g.a_pairs) ja.push_back({x, y});
    for (const auto& [x, y] : g.b_pairs) jb.push_back({x, y});
    nlohmann::json adj = nlohmann::json::array();
    for (const auto& row : g.a_adj) adj.push_back(row);
    nlohmann::json lh = nlohmann::json::object(), rh = nlohmann::json::object();
    for (const auto& [b, c] : g.left_bucket_histogram) lh[std::to_string(b)] = c;
    for (const auto& [b, c] : g.right_bucket_histogram) rh[std::to_string(b)] = c;
    return {{"a_is_left", g.a_is_left},
            {"a_pairs", ja},
            {"b_pairs", jb},
            {"a_adj", adj},
            {"edges", g.edges},
            {"m", g.m},
            {"delta", g.delta},
            {"max_degree", g.max_degree},
            {"bigK", to_string(g.bigK)},
            {"alpha", to_string(g.alpha)},
            {"rounds", g.rounds},
            {"original_edges", g.original_edges},
            {"bucket_retained_edges", g.bucket_retained_edges},
            {"bucket_pairs_considered", g.bucket_pairs_considered},
            {"left_bucket_histogram", lh},
            {"right_bucket_histogram", rh}};
}

}  // namespace htpair
