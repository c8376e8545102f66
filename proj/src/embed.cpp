#include "htpair/embed.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace htpair {

namespace {

// Side-A adjacency as bitsets over B, for codegree work.
struct BitCtx {
    int nA = 0, nB = 0, words = 0;
    std::vector<std::uint64_t> bits;  // nA rows

    explicit BitCtx(const RegularizedSubgraph& g0) {
        nA = g0.size_a();
        nB = g0.size_b();
        words = (nB + 63) / 64;
        bits.assign(static_cast<size_t>(nA) * words, 0);
        for (int u = 0; u < nA; ++u)
            for (int b : g0.a_adj[u]) row(u)[b >> 6] |= (1ull << (b & 63));
    }
    std::uint64_t* row(int u) { return bits.data() + static_cast<size_t>(u) * words; }
    const std::uint64_t* row(int u) const { return bits.data() + static_cast<size_t>(u) * words; }
    int codeg(int u, int v) const {
        const std::uint64_t *a = row(u), *b = row(v);
        int c = 0;
        for (int w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
        return c;
    }
    std::vector<std::uint64_t> intersect(int u, int v) const {
        std::vector<std::uint64_t> out(words);
        const std::uint64_t *a = row(u), *b = row(v);
        for (int w = 0; w < words; ++w) out[w] = a[w] & b[w];
        return out;
    }
};

template <typename F>
void for_each_bit(const std::vector<std::uint64_t>& mask, F&& f) {
    for (size_t w = 0; w < mask.size(); ++w) {
        std::uint64_t x = mask[w];
        while (x) {
            int b = std::countr_zero(x);
            f(static_cast<int>(w * 64 + b));
            x &= x - 1;
        }
    }
}

bool mask_intersects(const std::vector<std::uint64_t>& m, const std::uint64_t* row) {
    for (size_t w = 0; w < m.size(); ++w)
        if (m[w] & row[w]) return true;
    return false;
}

// K_t search by ascending-id DFS over an h x h adjacency matrix.
bool clique_dfs(const std::vector<std::vector<char>>& adj, int t, std::vector<int>& clique,
                std::vector<int>& cands) {
    if (static_cast<int>(clique.size()) == t) return true;
    if (static_cast<int>(clique.size() + cands.size()) < t) return false;
    for (size_t p = 0; p < cands.size(); ++p) {
        int c = cands[p];
        std::vector<int> next;
        for (size_t q = p + 1; q < cands.size(); ++q)
            if (adj[c][cands[q]]) next.push_back(cands[q]);
        clique.push_back(c);
        if (clique_dfs(adj, t, clique, next)) return true;
        clique.pop_back();
    }
    return false;
}

Rational rational_pow(const Rational& base, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

long long binom3_ll(long long x) { return x < 3 ? 0 : x * (x - 1) * (x - 2) / 6; }

enum class SubdivStatus { Found, Exhausted, Budget };

SubdivStatus assign_subdivision(const RegularizedSubgraph& g0, const BitCtx& ctx,
                                const std::vector<int>& branch, const PipelineParams& params,
                                std::vector<int>& subdiv, long long& backtracks) {
    const int t = params.t;
    const int pairs = t * (t - 1) / 2;
    std::vector<std::vector<int>> cand(pairs);
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            auto mask = ctx.intersect(branch[i], branch[j]);
            for_each_bit(mask, [&](int b) { cand[pair_rank(t, i, j)].push_back(b); });
        }

    std::vector<int> branch_coords;
    for (int u : branch) {
        branch_coords.push_back(g0.a_pairs[u].first);
        branch_coords.push_back(g0.a_pairs[u].second);
    }
    auto conflicts = [&](int b, const std::vector<int>& chosen) {
        auto [x, y] = g0.b_pairs[b];
        for (int c : branch_coords)
            if (c == x || c == y) return true;
        for (int prev : chosen) {
            if (prev == b) return true;
            auto [px, py] = g0.b_pairs[prev];
            if (px == x || px == y || py == x || py == y) return true;
        }
        return false;
    };

    subdiv.clear();
    std::vector<size_t> pos(pairs, 0);
    int r = 0;
    while (r < pairs) {
        bool advanced = false;
        while (pos[r] < cand[r].size()) {
            int b = cand[r][pos[r]++];
            if (!conflicts(b, subdiv)) {
                subdiv.push_back(b);
                ++r;
                advanced = true;
                break;
            }
        }
        if (advanced) continue;
        // dead end at rank r
        if (r == 0) return SubdivStatus::Exhausted;
        pos[r] = 0;
        --r;
        subdiv.pop_back();
        if (++backtracks > params.max_backtracks) return SubdivStatus::Budget;
    }
    return SubdivStatus::Found;
}

}  // namespace

const char* to_string(EmbedFailureReason r) {
    switch (r) {
        case EmbedFailureReason::None: return "none";
        case EmbedFailureReason::EmptyGraph: return "empty-graph";
        case EmbedFailureReason::ExhaustedCandidates: return "exhausted-candidates";
        case EmbedFailureReason::BacktrackBudget: return "backtrack-budget";
        case EmbedFailureReason::GateFailed: return "gate-failed";
    }
    return "?";
}

int codegree(const RegularizedSubgraph& g0, int u, int v) {
    const auto &a = g0.a_adj.at(u), &b = g0.a_adj.at(v);
    int c = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else {
            ++c;
            ++i;
            ++j;
        }
    }
    return c;
}

long long weight_sum(const RegularizedSubgraph& g0, const std::vector<int>& U) {
    BitCtx ctx(g0);
    long long w = 0;
    for (size_t i = 0; i < U.size(); ++i)
        for (size_t j = i + 1; j < U.size(); ++j) w += ctx.codeg(U[i], U[j]);
    return w;
}

CodegreeSumReport codegree_sum_check(const RegularizedSubgraph& g0, const std::vector<int>& U) {
    CodegreeSumReport rep;
    rep.weight = weight_sum(g0, U);
    const long long u = static_cast<long long>(U.size());
    rep.bound = Rational(static_cast<long long>(g0.delta) * g0.delta, 2ll * g0.m) *
                Rational(binom2_ll(u));
    rep.precondition = static_cast<long long>(g0.delta) * u >= 2ll * g0.m;
    rep.holds = Rational(rep.weight) >= rep.bound;
    return rep;
}

EdgeClasses classify_edges(const RegularizedSubgraph& g0, const std::vector<int>& U,
                           int light_threshold) {
    BitCtx ctx(g0);
    EdgeClasses ec;
    std::vector<int> s(U);
    std::sort(s.begin(), s.end());
    for (size_t i = 0; i < s.size(); ++i)
        for (size_t j = i + 1; j < s.size(); ++j) {
            int w = ctx.codeg(s[i], s[j]);
            auto& dst = w == 0 ? ec.zero : (w < light_threshold ? ec.light : ec.heavy);
            dst.emplace_back(s[i], s[j]);
        }
    return ec;
}

TuranAudit turan_light_audit(const RegularizedSubgraph& g0, const std::vector<int>& U,
                             const PipelineParams& params) {
    const int t = params.t;
    const int thr = params.light_threshold;
    BitCtx ctx(g0);
    std::vector<char> inU(g0.size_a(), 0);
    for (int u : U) inU[u] = 1;

    TuranAudit audit;
    for (int b = 0; b < g0.size_b(); ++b) {
        std::vector<int> nb;
        for (int u : g0.b_adj[b])
            if (inU[u]) nb.push_back(u);
        const int h = static_cast<int>(nb.size());
        if (h < 2 * (t - 1)) continue;

        TuranAuditEntry e;
        e.b = b;
        e.h = h;
        std::vector<std::vector<char>> heavy(h, std::vector<char>(h, 0));
        for (int i = 0; i < h; ++i)
            for (int j = i + 1; j < h; ++j) {
                int w = ctx.codeg(nb[i], nb[j]);
                if (w >= thr)
                    heavy[i][j] = heavy[j][i] = 1;
                else if (w >= 1)
                    ++e.light_count;
            }
        std::vector<int> clique, cands(h);
        for (int i = 0; i < h; ++i) cands[i] = i;
        if (clique_dfs(heavy, t, clique, cands)) {
            for (int i : clique) e.heavy_clique.push_back(nb[i]);
            audit.any_heavy_clique = true;
        } else {
            e.reported_bound = Rational(binom2_ll(h), t - 1);
            e.floor_bound = Rational(static_cast<long long>(h) * h, 4ll * (t - 1));
            e.reported_holds = Rational(e.light_count) >= e.reported_bound;
            e.floor_holds = Rational(e.light_count) >= e.floor_bound;
        }
        audit.entries.push_back(std::move(e));
    }

    for (size_t i = 0; i < U.size(); ++i)
        for (size_t j = i + 1; j < U.size(); ++j) {
            int w = ctx.codeg(U[i], U[j]);
            if (w >= 1 && w < thr) ++audit.total_light;
        }
    const long long usz = static_cast<long long>(U.size());
    audit.aggregate_bound =
        Rational(static_cast<long long>(g0.delta) * g0.delta,
                 16ll * t * t * t * g0.m) *
        Rational(binom2_ll(usz));
    audit.aggregate_precondition =
        usz >= 2 && static_cast<long long>(g0.delta) * usz >= 8ll * t * g0.m;
    audit.aggregate_holds = Rational(audit.total_light) >= audit.aggregate_bound;
    return audit;
}

EmbedOutcome greedy_embed(const RegularizedSubgraph& g0, const PipelineParams& params) {
    EmbedOutcome out;
    const int t = params.t;
    const int thr = params.light_threshold;
    if (g0.size_a() == 0 || g0.size_b() == 0 || t < 3) {
        out.reason = EmbedFailureReason::EmptyGraph;
        return out;
    }
    BitCtx ctx(g0);
    const int nA = g0.size_a();

    const Rational shrink_factor(static_cast<long long>(g0.delta) * g0.delta,
                                 64ll * t * t * t * g0.m);
    const Rational pigeonhole_rhs(8ll * t * g0.m, g0.delta);
    const long long tchoose2 = static_cast<long long>(t) * (t - 1) / 2;

    std::vector<int> U(nA);
    for (int i = 0; i < nA; ++i) U[i] = i;
    std::vector<int> branch;

    auto record_gate = [&](const char* name, int step, Rational lhs, Rational rhs) -> bool {
        GateRecord g{name, step, lhs, rhs, lhs >= rhs};
        bool ok = g.holds;
        out.trace.gates.push_back(std::move(g));
        return ok;
    };
    auto gate_abort = [&](const char* name, int step) {
        out.reason = EmbedFailureReason::GateFailed;
        out.fail_step = step;
        out.failed_gate = name;
    };

    for (int step = 1; step <= t; ++step) {
        DeletionTally tally;
        const Rational floor_rhs = rational_pow(shrink_factor, step - 1) * nA;
        if (!record_gate("size_floor", step, Rational(static_cast<long long>(U.size())),
                         floor_rhs) &&
            !params.relaxed) {
            out.trace.deletions.push_back(tally);
            gate_abort("size_floor", step);
            return out;
        }

        // deletion (0): drop candidates whose pair meets a chosen branch pair
        // in K_n (vacuous on aux graphs built from an equipartition).
        if (!branch.empty()) {
            std::vector<int> keep;
            for (int u : U) {
                auto [x, y] = g0.a_pairs[u];
                bool clash = false;
                for (int q : branch) {
                    auto [bx, by] = g0.a_pairs[q];
                    if (bx == x || bx == y || by == x || by == y) {
                        clash = true;
                        break;
                    }
                }
                if (clash)
                    ++tally.share_with_branch;
                else
                    keep.push_back(u);
            }
            U.swap(keep);
        }

        // deletion (1): u may not close a shared neighbor with any chosen
        // pair u_i, u_j — drop u when N(u_i) cap N(u_j) cap N(u) != empty.
        if (branch.size() >= 2) {
            std::vector<std::vector<std::uint64_t>> pij;
            for (size_t i = 0; i < branch.size(); ++i)
                for (size_t j = i + 1; j < branch.size(); ++j)
                    pij.push_back(ctx.intersect(branch[i], branch[j]));
            std::vector<int> keep;
            for (int u : U) {
                bool hit = false;
                for (const auto& m : pij)
                    if (mask_intersects(m, ctx.row(u))) {
                        hit = true;
                        break;
                    }
                if (hit)
                    ++tally.triple_intersection;
                else
                    keep.push_back(u);
            }
            U.swap(keep);
        }

        // deletion (2): for distinct chosen i, j, k, a b in N(u_k) whose pair
        // meets a K_n coordinate of P_ij = N(u_i) cap N(u_j) is bad; drop
        // every candidate adjacent to a bad b.
        if (branch.size() >= 3) {
            std::vector<std::uint64_t> bad(ctx.words, 0);
            for (size_t i = 0; i < branch.size(); ++i)
                for (size_t j = i + 1; j < branch.size(); ++j) {
                    auto mask = ctx.intersect(branch[i], branch[j]);
                    std::vector<char> coord;
                    auto mark = [&](int v) {
                        if (v >= static_cast<int>(coord.size())) coord.resize(v + 1, 0);
                        coord[v] = 1;
                    };
                    for_each_bit(mask, [&](int b) {
                        mark(g0.b_pairs[b].first);
                        mark(g0.b_pairs[b].second);
                    });
                    auto is_marked = [&](int v) {
                        return v < static_cast<int>(coord.size()) && coord[v];
                    };
                    for (size_t k = 0; k < branch.size(); ++k) {
                        if (k == i || k == j) continue;
                        for (int b : g0.a_adj[branch[k]])
                            if (is_marked(g0.b_pairs[b].first) || is_marked(g0.b_pairs[b].second))
                                bad[b >> 6] |= (1ull << (b & 63));
                    }
                }
            std::vector<int> keep;
            for (int u : U) {
                if (mask_intersects(bad, ctx.row(u)))
                    ++tally.pair_share;
                else
                    keep.push_back(u);
            }
            U.swap(keep);
        }

        bool pigeon_ok = record_gate("pigeonhole_domain", step,
                                     Rational(static_cast<long long>(U.size())), pigeonhole_rhs);
        bool headroom_ok = true;
        if (step >= 2) {
            const Rational headroom_rhs =
                Rational(2 * binom3_ll(step - 1) * 4 * tchoose2 +
                         2 * binom2_ll(step - 1) * 2 * tchoose2) *
                g0.max_degree;
            headroom_ok = record_gate("deletion_headroom", step,
                                      rational_pow(shrink_factor, step - 1) * nA, headroom_rhs);
        }
        if (!params.relaxed && (!pigeon_ok || !headroom_ok)) {
            out.trace.deletions.push_back(tally);
            gate_abort(!pigeon_ok ? "pigeonhole_domain" : "deletion_headroom", step);
            return out;
        }

        out.trace.candidate_sizes.push_back(static_cast<long long>(U.size()));
        if (U.empty()) {
            out.trace.deletions.push_back(tally);
            out.reason = EmbedFailureReason::ExhaustedCandidates;
            out.fail_step = step;
            return out;
        }

        // pick the candidate with the most light edges into the survivors;
        // ties resolve to the smallest id.
        int best = -1;
        long long best_score = -1;
        for (int u : U) {
            long long score = 0;
            for (int v : U) {
                if (v == u) continue;
                int w = ctx.codeg(u, v);
                if (w >= 1 && w < thr) ++score;
            }
            if (score > best_score) {
                best_score = score;
                best = u;
            }
        }
        branch.push_back(best);

        std::vector<int> next;
        for (int v : U) {
            if (v == best) continue;
            int w = ctx.codeg(best, v);
            if (w >= 1 && w < thr) next.push_back(v);
        }
        tally.light_filter = static_cast<long long>(U.size()) - 1 - static_cast<long long>(next.size());
        out.trace.deletions.push_back(tally);
        U.swap(next);
    }

    std::vector<int> subdiv;
    SubdivStatus st = assign_subdivision(g0, ctx, branch, params, subdiv, out.trace.backtracks_used);
    if (st == SubdivStatus::Found) {
        HtEmbedding e;
        e.t = t;
        e.branch = std::move(branch);
        e.subdiv = std::move(subdiv);
        validate_embedding(g0, e);
        out.embedding = std::move(e);
        return out;
    }
    out.reason = st == SubdivStatus::Budget ? EmbedFailureReason::BacktrackBudget
                                            : EmbedFailureReason::ExhaustedCandidates;
    out.fail_step = t;
    return out;
}

std::optional<HtEmbedding> complete_embedding(const RegularizedSubgraph& g0,
                                              const std::vector<int>& branch,
                                              const PipelineParams& params,
                                              long long* backtracks_out) {
    if (static_cast<int>(branch.size()) != params.t)
        throw std::invalid_argument("complete_embedding: branch size != t");
    for (int u : branch)
        if (u < 0 || u >= g0.size_a())
            throw std::invalid_argument("complete_embedding: branch index out of range");
    BitCtx ctx(g0);
    std::vector<int> subdiv;
    long long backtracks = 0;
    SubdivStatus st = assign_subdivision(g0, ctx, branch, params, subdiv, backtracks);
    if (backtracks_out) *backtracks_out = backtracks;
    if (st != SubdivStatus::Found) return std::nullopt;
    HtEmbedding e;
    e.t = params.t;
    e.branch = branch;
    e.subdiv = std::move(subdiv);
    validate_embedding(g0, e);
    return e;
}

void validate_embedding(const RegularizedSubgraph& g0, const HtEmbedding& e) {
    const int t = e.t;
    auto fail = [](const std::string& msg) { throw InternalInconsistencyError(msg); };
    if (t < 3) fail("embedding: t < 3");
    if (static_cast<int>(e.branch.size()) != t) fail("embedding: branch size mismatch");
    if (static_cast<int>(e.subdiv.size()) != t * (t - 1) / 2) fail("embedding: subdiv size mismatch");
    for (int u : e.branch)
        if (u < 0 || u >= g0.size_a()) fail("embedding: branch index out of range");
    for (int b : e.subdiv)
        if (b < 0 || b >= g0.size_b()) fail("embedding: subdiv index out of range");

    auto share = [](std::pair<int, int> p, std::pair<int, int> q) {
        return p.first == q.first || p.first == q.second || p.second == q.first ||
               p.second == q.second;
    };
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            if (e.branch[i] == e.branch[j]) fail("embedding: repeated branch vertex");
            if (share(g0.a_pairs[e.branch[i]], g0.a_pairs[e.branch[j]]))
                fail("embedding: branch pairs share a K_n vertex");
        }
    const int pairs = t * (t - 1) / 2;
    for (int r = 0; r < pairs; ++r)
        for (int s = r + 1; s < pairs; ++s) {
            if (e.subdiv[r] == e.subdiv[s]) fail("embedding: repeated subdivision vertex");
            if (share(g0.b_pairs[e.subdiv[r]], g0.b_pairs[e.subdiv[s]]))
                fail("embedding: subdivision pairs share a K_n vertex");
        }
    for (int q = 0; q < t; ++q)
        for (int r = 0; r < pairs; ++r)
            if (share(g0.a_pairs[e.branch[q]], g0.b_pairs[e.subdiv[r]]))
                fail("embedding: branch and subdivision pairs share a K_n vertex");
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            int b = e.subdiv[pair_rank(t, i, j)];
            const auto& ai = g0.a_adj[e.branch[i]];
            const auto& aj = g0.a_adj[e.branch[j]];
            if (!std::binary_search(ai.begin(), ai.end(), b) ||
                !std::binary_search(aj.begin(), aj.end(), b))
                fail("embedding: subdivision vertex not a common neighbor");
        }
}

CertificatePair lift_to_certificate(const RegularizedSubgraph& g0, const HtEmbedding& e,
                                    const ProperColoring& coloring) {
    validate_embedding(g0, e);
    const int t = e.t;
    CertificatePair cert;
    cert.t = t;
    for (int u : e.branch) {
        cert.copy1_branch.push_back(g0.a_pairs[u].first);
        cert.copy2_branch.push_back(g0.a_pairs[u].second);
    }
    for (int b : e.subdiv) {
        cert.copy1_subdiv.push_back(g0.b_pairs[b].first);
        cert.copy2_subdiv.push_back(g0.b_pairs[b].second);
    }

    std::vector<int> all;
    for (auto* v : {&cert.copy1_branch, &cert.copy2_branch, &cert.copy1_subdiv,
                    &cert.copy2_subdiv})
        all.insert(all.end(), v->begin(), v->end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw InternalInconsistencyError("certificate: repeated K_n vertex");
    if (all.front() < 0 || all.back() >= coloring.n)
        throw InternalInconsistencyError("certificate: K_n vertex out of range");

    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
            int r = pair_rank(t, i, j);
            for (int end : {i, j}) {
                int c1 = coloring.color(cert.copy1_branch[end], cert.copy1_subdiv[r]);
                int c2 = coloring.color(cert.copy2_branch[end], cert.copy2_subdiv[r]);
                if (c1 != c2)
                    throw InternalInconsistencyError("certificate: color mismatch on a lifted edge");
            }
        }
    cert.colors_checked = true;
    return cert;
}

nlohmann::json cert_to_json(const CertificatePair& cert) {
    auto copy = [&](const std::vector<int>& branch, const std::vector<int>& subdiv) {
        nlohmann::json sd = nlohmann::json::object();
        for (int i = 0; i < cert.t; ++i)
            for (int j = i + 1; j < cert.t; ++j)
                sd[std::to_string(i + 1) + "," + std::to_string(j + 1)] =
                    subdiv[pair_rank(cert.t, i, j)];
        return nlohmann::json{{"branch", branch}, {"subdiv", sd}};
    };
    return {{"t", cert.t},
            {"copy1", copy(cert.copy1_branch, cert.copy1_subdiv)},
            {"copy2", copy(cert.copy2_branch, cert.copy2_subdiv)},
            {"colors_checked", cert.colors_checked}};
}

CertificatePair cert_from_json(const nlohmann::json& j) {
    CertificatePair cert;
    cert.t = j.at("t").get<int>();
    if (cert.t < 3) throw std::invalid_argument("certificate: t must be >= 3");
    auto copy = [&](const nlohmann::json& jc, std::vector<int>& branch, std::vector<int>& subdiv) {
        branch = jc.at("branch").get<std::vector<int>>();
        if (static_cast<int>(branch.size()) != cert.t)
            throw std::invalid_argument("certificate: branch size != t");
        subdiv.assign(cert.t * (cert.t - 1) / 2, -1);
        const auto& sd = jc.at("subdiv");
        if (static_cast<int>(sd.size()) != cert.t * (cert.t - 1) / 2)
            throw std::invalid_argument("certificate: wrong subdivision count");
        for (auto it = sd.begin(); it != sd.end(); ++it) {
            int i = 0, jj = 0;
            if (std::sscanf(it.key().c_str(), "%d,%d", &i, &jj) != 2 || i < 1 || jj <= i ||
                jj > cert.t)
                throw std::invalid_argument("certificate: bad subdivision key " + it.key());
            subdiv[pair_rank(cert.t, i - 1, jj - 1)] = it.value().get<int>();
        }
        for (int v : subdiv)
            if (v < 0) throw std::invalid_argument("certificate: missing subdivision entry");
    };
    copy(j.at("copy1"), cert.copy1_branch, cert.copy1_subdiv);
    copy(j.at("copy2"), cert.copy2_branch, cert.copy2_subdiv);
    cert.colors_checked = j.value("colors_checked", false);
    return cert;
}

nlohmann::json to_json(const EmbedOutcome& o) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : o.trace.gates)
        gates.push_back({{"name", g.name},
                         {"step", g.step},
                         {"lhs", to_string(g.lhs)},
                         {"rhs", to_string(g.rhs)},
                         {"holds", g.holds}});
    nlohmann::json dels = nlohmann::json::array();
    for (const auto& d : o.trace.deletions)
        dels.push_back({{"share_with_branch", d.share_with_branch},
                        {"triple_intersection", d.triple_intersection},
                        {"pair_share", d.pair_share},
                        {"light_filter", d.light_filter}});
    nlohmann::json j{{"ok", o.ok()},
                     {"trace",
                      {{"candidate_sizes", o.trace.candidate_sizes},
                       {"deletions", dels},
                       {"gates", gates},
                       {"backtracks", o.trace.backtracks_used}}}};
    if (o.ok()) {
        j["embedding"] = {{"t", o.embedding->t},
                          {"branch", o.embedding->branch},
                          {"subdiv", o.embedding->subdiv}};
    } else {
        j["failure"] = {{"reason", to_string(o.reason)}, {"step", o.fail_step}};
        if (!o.failed_gate.empty()) j["failure"]["gate"] = o.failed_gate;
    }
    return j;
}

nlohmann::json to_json(const TuranAudit& a) {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : a.entries) {
        nlohmann::json je{{"b", e.b}, {"h", e.h}, {"light_count", e.light_count}};
        if (!e.heavy_clique.empty()) {
            je["heavy_clique"] = e.heavy_clique;
        } else {
            je["reported_bound"] = to_string(e.reported_bound);
            je["floor_bound"] = to_string(e.floor_bound);
            je["reported_holds"] = e.reported_holds;
            je["floor_holds"] = e.floor_holds;
        }
        entries.push_back(std::move(je));
    }
    return {{"entries", entries},
            {"any_heavy_clique", a.any_heavy_clique},
            {"total_light", a.total_light},
            {"aggregate_bound", to_string(a.aggregate_bound)},
            {"aggregate_precondition", a.aggregate_precondition},
            {"aggregate_holds", a.aggregate_holds}};
}

}  // namespace htpair
