#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "htpair/coloring.hpp"
#include "htpair/embed.hpp"
#include "json.hpp"

namespace htpair {

// A labeled copy of the 1-subdivision of K_t inside K_n: t branch vertices
// (ascending) and C(t,2) subdivision vertices in lex order of branch pairs.
struct HtCopy {
    int t = 0;
    std::vector<int> branch;
    std::vector<int> subdiv;

    std::uint64_t vertex_mask() const;  // requires all vertices < 64
    std::vector<int> vertices() const;  // branch then subdiv
};

// Visit every copy of the subdivision of K_t in K_n exactly once per
// subgraph. For t = 3 the subgraph is a 6-cycle with two alternating
// branch/subdivision decompositions; we keep the one whose branch contains
// the copy's minimum vertex. For t >= 4 the decomposition is forced by
// degrees. Enumeration order: branch sets ascending, then subdivision slots
// filled lexicographically with ascending vertex ids. Returns false if the
// visitor stopped the walk.
bool enumerate_ht_copies(int n, int t, const std::function<bool(const HtCopy&)>& visit);
std::vector<HtCopy> enumerate_ht_copies(int n, int t);
long long count_ht_copies(int n, int t);

// Lex-minimal edge-color sequence of the copy over the automorphisms of the
// subdivision (dihedral maps of the 6-cycle for t = 3, branch permutations
// for t >= 4). Two copies are color-isomorphic iff their canonical
// signatures are equal.
std::vector<int> canonical_color_signature(const ProperColoring& c, const HtCopy& copy);

// Relabel `b` (same subgraph, new decomposition/indexing) so its edge colors
// match `a` index-for-index; nullopt when the copies are not
// color-isomorphic.
std::optional<HtCopy> color_iso_alignment(const ProperColoring& c, const HtCopy& a,
                                          const HtCopy& b);
bool color_isomorphic(const ProperColoring& c, const HtCopy& a, const HtCopy& b);

enum class PairSearchStatus { FoundPair, ProvenAbsent, Inconclusive };
const char* to_string(PairSearchStatus s);

struct PairSearchResult {
    PairSearchStatus status = PairSearchStatus::Inconclusive;
    std::optional<CertificatePair> pair;
    long long copies_enumerated = 0;
    long long buckets = 0;
    long long largest_bucket = 0;
    bool enumeration_complete = false;
    bool scan_complete = false;
    std::string note;
};

// Exhaustive search for two vertex-disjoint color-isomorphic copies, by
// bucketing canonical signatures and scanning buckets for disjoint vertex
// sets. Complete for t = 3, n <= 16 (and whenever the enumeration fits the
// budget), else budget-capped and flagged inconclusive. Requires n <= 64.
PairSearchResult find_disjoint_color_iso_pair(const ProperColoring& c, int t,
                                              long long max_copies = 4000000);

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> errors;
};

// Re-derives every certificate invariant from scratch against the coloring:
// shapes, vertex ranges, global distinctness (hence disjoint copies), and
// color equality edge-for-edge under the index-aligned isomorphism.
VerifyReport verify_certificate(const ProperColoring& c, const CertificatePair& cert);

nlohmann::json absence_to_json(const ProperColoring& c, int t);
nlohmann::json to_json(const PairSearchResult& r);

}  // namespace htpair
