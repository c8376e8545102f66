#include "htpair/oracle.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace htpair {

namespace {

int subdiv_slots(int t) { return t * (t - 1) / 2; }

// colors of the 2*C(t,2) edges in labeled order: for each branch pair (i,j)
// lex, the edge at branch i then the edge at branch j.
std::vector<int> labeled_edge_colors(const ProperColoring& c, const HtCopy& copy) {
    std::vector<int> out;
    out.reserve(2 * subdiv_slots(copy.t));
    for (int i = 0; i < copy.t; ++i)
        for (int j = i + 1; j < copy.t; ++j) {
            int s = copy.subdiv[pair_rank(copy.t, i, j)];
            out.push_back(c.color(copy.branch[i], s));
            out.push_back(c.color(copy.branch[j], s));
        }
    return out;
}

// 6-cycle vertex order of a t=3 copy: b0 s01 b1 s12 b2 s02.
std::array<int, 6> cycle_of(const HtCopy& copy) {
    return {copy.branch[0], copy.subdiv[pair_rank(3, 0, 1)],
            copy.branch[1], copy.subdiv[pair_rank(3, 1, 2)],
            copy.branch[2], copy.subdiv[pair_rank(3, 0, 2)]};
}

HtCopy copy_from_cycle(const std::array<int, 6>& w) {
    HtCopy out;
    out.t = 3;
    out.branch = {w[0], w[2], w[4]};
    out.subdiv.assign(3, -1);
    out.subdiv[pair_rank(3, 0, 1)] = w[1];
    out.subdiv[pair_rank(3, 1, 2)] = w[3];
    out.subdiv[pair_rank(3, 0, 2)] = w[5];
    return out;
}

template <typename F>
void for_each_dihedral(const std::array<int, 6>& v, F&& f) {
    for (int dir = 0; dir < 2; ++dir)
        for (int rot = 0; rot < 6; ++rot) {
            std::array<int, 6> w;
            for (int k = 0; k < 6; ++k) {
                int idx = dir == 0 ? (rot + k) % 6 : (rot - k + 12) % 6;
                w[k] = v[idx];
            }
            f(w);
        }
}

HtCopy permute_branch(const HtCopy& b, const std::vector<int>& perm) {
    HtCopy out;
    out.t = b.t;
    out.branch.resize(b.t);
    out.subdiv.resize(subdiv_slots(b.t));
    for (int i = 0; i < b.t; ++i) out.branch[i] = b.branch[perm[i]];
    for (int i = 0; i < b.t; ++i)
        for (int j = i + 1; j < b.t; ++j) {
            int pi = perm[i], pj = perm[j];
            if (pi > pj) std::swap(pi, pj);
            out.subdiv[pair_rank(b.t, i, j)] = b.subdiv[pair_rank(b.t, pi, pj)];
        }
    return out;
}

std::string key_of(const std::vector<int>& sig) {
    std::string k(sig.size() * sizeof(int), '\0');
    std::memcpy(k.data(), sig.data(), k.size());
    return k;
}

}  // namespace

std::uint64_t HtCopy::vertex_mask() const {
    std::uint64_t m = 0;
    for (int v : branch) m |= 1ull << v;
    for (int v : subdiv) m |= 1ull << v;
    return m;
}

std::vector<int> HtCopy::vertices() const {
    std::vector<int> out(branch);
    out.insert(out.end(), subdiv.begin(), subdiv.end());
    return out;
}

bool enumerate_ht_copies(int n, int t, const std::function<bool(const HtCopy&)>& visit) {
    if (t < 3) throw std::invalid_argument("enumerate_ht_copies: t must be >= 3");
    const int slots = subdiv_slots(t);
    if (n < t + slots) return true;

    std::vector<char> used(n, 0);
    HtCopy copy;
    copy.t = t;
    copy.branch.assign(t, 0);
    copy.subdiv.assign(slots, 0);

    // For t = 3 only assignments with every subdivision vertex above
    // branch[0] are generated: of the two alternating decompositions of a
    // 6-cycle exactly the one whose branch class holds the cycle's minimum
    // vertex survives, so each subgraph is visited once.
    const int sub_floor_from_branch0 = (t == 3) ? 1 : 0;

    std::function<bool(int)> fill = [&](int slot) -> bool {
        if (slot == slots) return visit(copy);
        const int lo = sub_floor_from_branch0 ? copy.branch[0] + 1 : 0;
        for (int v = lo; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            copy.subdiv[slot] = v;
            bool go = fill(slot + 1);
            used[v] = 0;
            if (!go) return false;
        }
        return true;
    };

    std::function<bool(int, int)> pick_branch = [&](int idx, int lo) -> bool {
        if (idx == t) return fill(0);
        for (int v = lo; v < n; ++v) {
            if (used[v]) continue;
            used[v] = 1;
            copy.branch[idx] = v;
            bool go = pick_branch(idx + 1, v + 1);
            used[v] = 0;
            if (!go) return false;
        }
        return true;
    };
    return pick_branch(0, 0);
}

std::vector<HtCopy> enumerate_ht_copies(int n, int t) {
    std::vector<HtCopy> out;
    enumerate_ht_copies(n, t, [&](const HtCopy& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

long long count_ht_copies(int n, int t) {
    long long c = 0;
    enumerate_ht_copies(n, t, [&](const HtCopy&) {
        ++c;
        return true;
    });
    return c;
}

std::vector<int> canonical_color_signature(const ProperColoring& c, const HtCopy& copy) {
    if (copy.t == 3) {
        auto v = cycle_of(copy);
        std::vector<int> best;
        for_each_dihedral(v, [&](const std::array<int, 6>& w) {
            std::vector<int> sig(6);
            for (int k = 0; k < 6; ++k) sig[k] = c.color(w[k], w[(k + 1) % 6]);
            if (best.empty() || sig < best) best = std::move(sig);
        });
        return best;
    }
    std::vector<int> perm(copy.t);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    do {
        auto sig = labeled_edge_colors(c, permute_branch(copy, perm));
        if (best.empty() || sig < best) best = std::move(sig);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::optional<HtCopy> color_iso_alignment(const ProperColoring& c, const HtCopy& a,
                                          const HtCopy& b) {
    if (a.t != b.t) return std::nullopt;
    const auto target = labeled_edge_colors(c, a);
    if (a.t == 3) {
        std::optional<HtCopy> found;
        for_each_dihedral(cycle_of(b), [&](const std::array<int, 6>& w) {
            if (found) return;
            HtCopy cand = copy_from_cycle(w);
            if (labeled_edge_colors(c, cand) == target) found = std::move(cand);
        });
        return found;
    }
    std::vector<int> perm(b.t);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        HtCopy cand = permute_branch(b, perm);
        if (labeled_edge_colors(c, cand) == target) return cand;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

bool color_isomorphic(const ProperColoring& c, const HtCopy& a, const HtCopy& b) {
    return color_iso_alignment(c, a, b).has_value();
}

const char* to_string(PairSearchStatus s) {
    switch (s) {
        case PairSearchStatus::FoundPair: return "found-pair";
        case PairSearchStatus::ProvenAbsent: return "proven-absent";
        case PairSearchStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

PairSearchResult find_disjoint_color_iso_pair(const ProperColoring& c, int t,
                                              long long max_copies) {
    if (t < 3) throw std::invalid_argument("find_disjoint_color_iso_pair: t must be >= 3");
    if (c.n > 64)
        throw std::invalid_argument("find_disjoint_color_iso_pair: supports n <= 64");
    PairSearchResult res;
    const int need = 2 * (t + subdiv_slots(t));
    if (c.n < need) {
        res.status = PairSearchStatus::ProvenAbsent;
        res.enumeration_complete = res.scan_complete = true;
        res.note = "fewer than " + std::to_string(need) + " vertices";
        return res;
    }

    std::vector<HtCopy> copies;
    std::vector<std::uint64_t> masks;
    std::unordered_map<std::string, std::vector<int>> buckets;
    res.enumeration_complete = enumerate_ht_copies(c.n, t, [&](const HtCopy& copy) {
        if (res.copies_enumerated >= max_copies) return false;
        ++res.copies_enumerated;
        int id = static_cast<int>(copies.size());
        copies.push_back(copy);
        masks.push_back(copy.vertex_mask());
        buckets[key_of(canonical_color_signature(c, copy))].push_back(id);
        return true;
    });

    res.buckets = static_cast<long long>(buckets.size());
    res.scan_complete = true;
    constexpr long long kPairwiseCap = 2000;

    int found_a = -1, found_b = -1;
    for (const auto& [key, ids] : buckets) {
        res.largest_bucket = std::max(res.largest_bucket, static_cast<long long>(ids.size()));
        if (ids.size() < 2) continue;
        const long long s = static_cast<long long>(ids.size());
        if (s <= kPairwiseCap) {
            for (size_t i = 0; i < ids.size() && found_a < 0; ++i)
                for (size_t j = i + 1; j < ids.size(); ++j)
                    if ((masks[ids[i]] & masks[ids[j]]) == 0) {
                        found_a = ids[i];
                        found_b = ids[j];
                        break;
                    }
        } else if (c.n <= 16) {
            // subset-closure DP: reach[S] = true iff some mask in the bucket
            // is a subset of S
            std::vector<char> reach(1u << c.n, 0);
            for (int id : ids) reach[masks[id]] = 1;
            for (int bit = 0; bit < c.n; ++bit)
                for (std::uint32_t S = 0; S < (1u << c.n); ++S)
                    if ((S >> bit) & 1) reach[S] = reach[S] | reach[S ^ (1u << bit)];
            const std::uint32_t full = (1u << c.n) - 1;
            for (int id : ids) {
                std::uint32_t comp = full & ~static_cast<std::uint32_t>(masks[id]);
                if (!reach[comp]) continue;
                for (int other : ids)
                    if ((masks[other] & masks[id]) == 0) {
                        found_a = id;
                        found_b = other;
                        break;
                    }
                break;
            }
        } else {
            res.scan_complete = false;
            res.note = "bucket of " + std::to_string(s) + " copies skipped";
            continue;
        }
        if (found_a >= 0) break;
    }

    if (found_a >= 0) {
        const HtCopy& a = copies[found_a];
        auto aligned = color_iso_alignment(c, a, copies[found_b]);
        if (!aligned)
            throw std::logic_error("pair search: bucket members not color-isomorphic");
        CertificatePair cert;
        cert.t = t;
        cert.copy1_branch = a.branch;
        cert.copy1_subdiv = a.subdiv;
        cert.copy2_branch = aligned->branch;
        cert.copy2_subdiv = aligned->subdiv;
        cert.colors_checked = true;
        auto rep = verify_certificate(c, cert);
        if (!rep.ok) throw std::logic_error("pair search: constructed pair failed verification");
        res.pair = std::move(cert);
        res.status = PairSearchStatus::FoundPair;
        return res;
    }
    res.status = (res.enumeration_complete && res.scan_complete)
                     ? PairSearchStatus::ProvenAbsent
                     : PairSearchStatus::Inconclusive;
    return res;
}

VerifyReport verify_certificate(const ProperColoring& c, const CertificatePair& cert) {
    VerifyReport rep;
    auto err = [&](const std::string& m) { rep.errors.push_back(m); };
    const int t = cert.t;
    if (t < 3) {
        err("t must be >= 3");
        return rep;
    }
    const int slots = subdiv_slots(t);
    if (static_cast<int>(cert.copy1_branch.size()) != t ||
        static_cast<int>(cert.copy2_branch.size()) != t)
        err("branch lists must have t entries");
    if (static_cast<int>(cert.copy1_subdiv.size()) != slots ||
        static_cast<int>(cert.copy2_subdiv.size()) != slots)
        err("subdivision lists must have C(t,2) entries");
    if (!rep.errors.empty()) return rep;

    std::vector<int> all;
    for (const auto* v :
         {&cert.copy1_branch, &cert.copy1_subdiv, &cert.copy2_branch, &cert.copy2_subdiv})
        all.insert(all.end(), v->begin(), v->end());
    for (int v : all)
        if (v < 0 || v >= c.n) {
            err("vertex " + std::to_string(v) + " out of range");
            return rep;
        }
    std::vector<int> sorted(all);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        err("copies are not vertex-disjoint (or repeat a vertex)");

    for (int i = 0; i < t && rep.errors.empty(); ++i)
        for (int j = i + 1; j < t; ++j) {
            int r = pair_rank(t, i, j);
            for (int end : {i, j}) {
                int c1 = c.color(cert.copy1_branch[end], cert.copy1_subdiv[r]);
                int c2 = c.color(cert.copy2_branch[end], cert.copy2_subdiv[r]);
                if (c1 != c2)
                    err("color mismatch at pair (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + ") end " + std::to_string(end + 1) + ": " +
                        std::to_string(c1) + " vs " + std::to_string(c2));
            }
        }
    rep.ok = rep.errors.empty();
    return rep;
}

nlohmann::json absence_to_json(const ProperColoring& c, int t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(coloring_hash(c)));
    return {{"n", c.n}, {"t", t}, {"coloring_hash", std::string(buf)}, {"absent", true}};
}

nlohmann::json to_json(const PairSearchResult& r) {
    nlohmann::json j{{"status", to_string(r.status)},
                     {"copies_enumerated", r.copies_enumerated},
                     {"buckets", r.buckets},
                     {"largest_bucket", r.largest_bucket},
                     {"enumeration_complete", r.enumeration_complete},
                     {"scan_complete", r.scan_complete}};
    if (!r.note.empty()) j["note"] = r.note;
    if (r.pair) j["pair"] = cert_to_json(*r.pair);
    return j;
}

}  // namespace htpair
