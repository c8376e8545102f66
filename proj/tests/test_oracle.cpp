#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "htpair/oracle.hpp"
#include "testutil.hpp"

using namespace htpair;

namespace {

long long binom(long long n, int k) {
    if (n < k) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// the copy's edge set in K_n, as sorted vertex pairs
std::set<std::pair<int, int>> edge_set(const HtCopy& c) {
    std::set<std::pair<int, int>> es;
    for (int i = 0; i < c.t; ++i)
        for (int j = i + 1; j < c.t; ++j) {
            int s = c.subdiv[pair_rank(c.t, i, j)];
            for (int b : {c.branch[i], c.branch[j]}) es.insert({std::min(b, s), std::max(b, s)});
        }
    return es;
}

// both planted 6-cycles as explicit copies: branch {base, base+2, base+4},
// subdivision vertices the odd positions
HtCopy planted_copy(int base) {
    HtCopy c;
    c.t = 3;
    c.branch = {base, base + 2, base + 4};
    // pair (0,1) -> vertex between branch 0 and 1, etc.
    c.subdiv = {base + 1, base + 5, base + 3};
    return c;
}

}  // namespace

TEST_CASE("copy counts match the closed form C(n,6)*60 for t=3") {
    CHECK(count_ht_copies(6, 3) == 60);
    CHECK(count_ht_copies(8, 3) == binom(8, 6) * 60);
    CHECK(count_ht_copies(8, 3) == 1680);
    CHECK(count_ht_copies(12, 3) == binom(12, 6) * 60);
    CHECK(count_ht_copies(12, 3) == 55440);
    CHECK(count_ht_copies(5, 3) == 0);  // needs 6 vertices
}

TEST_CASE("copy count for t=4 matches C(n,10)*10!/ (automorphisms)") {
    // 4 branch + 6 subdivision vertices; 151200 labeled copies on 10 points
    CHECK(count_ht_copies(10, 4) == 151200);
    CHECK(count_ht_copies(11, 4) == binom(11, 10) * 151200);
}

TEST_CASE("every enumerated copy is distinct as a subgraph and well-formed") {
    std::set<std::set<std::pair<int, int>>> subgraphs;
    auto copies = enumerate_ht_copies(6, 3);
    REQUIRE(copies.size() == 60);
    for (const auto& c : copies) {
        CHECK(c.t == 3);
        REQUIRE(c.branch.size() == 3);
        REQUIRE(c.subdiv.size() == 3);
        CHECK(std::is_sorted(c.branch.begin(), c.branch.end()));
        std::set<int> verts(c.branch.begin(), c.branch.end());
        verts.insert(c.subdiv.begin(), c.subdiv.end());
        CHECK(verts.size() == 6);
        CHECK(*verts.begin() >= 0);
        CHECK(*verts.rbegin() < 6);
        // canonical decomposition: the minimum vertex sits on the branch side
        CHECK(c.branch[0] == *verts.begin());
        CHECK(subgraphs.insert(edge_set(c)).second);
    }
}

TEST_CASE("t=4 enumeration: degree-forced decomposition, distinct subgraphs") {
    std::set<std::set<std::pair<int, int>>> subgraphs;
    long long count = 0;
    enumerate_ht_copies(10, 4, [&](const HtCopy& c) {
        ++count;
        std::set<int> verts(c.branch.begin(), c.branch.end());
        verts.insert(c.subdiv.begin(), c.subdiv.end());
        if (verts.size() != 10 || !subgraphs.insert(edge_set(c)).second) return false;
        return true;
    });
    CHECK(count == 151200);
    CHECK(subgraphs.size() == 151200);
}

TEST_CASE("visitor can stop the enumeration early") {
    int seen = 0;
    bool finished = enumerate_ht_copies(8, 3, [&](const HtCopy&) { return ++seen < 5; });
    CHECK(!finished);
    CHECK(seen == 5);
}

TEST_CASE("canonical signature is invariant under relabeling the same subgraph") {
    ProperColoring c = generate_round_robin(8);
    // the 6-cycle 0-1-2-3-4-5 admits the alternate decomposition with branch
    // {1,3,5}; both views must canonicalize identically
    HtCopy a = planted_copy(0);
    HtCopy b;
    b.t = 3;
    b.branch = {1, 3, 5};
    b.subdiv = {2, 0, 4};  // between (1,3): 2, (1,5): 0, (3,5): 4
    CHECK(edge_set(a) == edge_set(b));
    CHECK(canonical_color_signature(c, a) == canonical_color_signature(c, b));
    CHECK(color_isomorphic(c, a, b));

    // signatures have one color per edge
    CHECK(canonical_color_signature(c, a).size() == 6);
}

TEST_CASE("color isomorphism detects the planted pair and aligns it") {
    ProperColoring c = testutil::planted_pair_coloring();
    HtCopy a = planted_copy(0), b = planted_copy(6);
    REQUIRE(color_isomorphic(c, a, b));
    auto aligned = color_iso_alignment(c, a, b);
    REQUIRE(aligned.has_value());
    CHECK(edge_set(*aligned) == edge_set(b));
    // aligned copy matches a's colors index-for-index
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            int r = pair_rank(3, i, j);
            for (int end : {i, j}) {
                int c1 = c.color(std::min(a.branch[end], a.subdiv[r]),
                                 std::max(a.branch[end], a.subdiv[r]));
                int c2 = c.color(std::min(aligned->branch[end], aligned->subdiv[r]),
                                 std::max(aligned->branch[end], aligned->subdiv[r]));
                CHECK(c1 == c2);
            }
        }

    // under a rainbow coloring the same two copies use 12 distinct colors
    ProperColoring rb = generate_rainbow(12);
    CHECK(!color_isomorphic(rb, a, b));
}

TEST_CASE("planted pair is found and certified") {
    ProperColoring c = testutil::planted_pair_coloring();
    auto res = find_disjoint_color_iso_pair(c, 3);
    REQUIRE(res.status == PairSearchStatus::FoundPair);
    CHECK(res.enumeration_complete);
    REQUIRE(res.pair.has_value());
    auto rep = verify_certificate(c, *res.pair);
    INFO((rep.errors.empty() ? std::string() : rep.errors.front()));
    CHECK(rep.ok);

    // the two copies occupy exactly the two planted cycles
    auto [v1, v2] = testutil::planted_pair_vertices();
    std::set<int> got1, got2, want1(v1.begin(), v1.end()), want2(v2.begin(), v2.end());
    for (int x : res.pair->copy1_branch) got1.insert(x);
    for (int x : res.pair->copy1_subdiv) got1.insert(x);
    for (int x : res.pair->copy2_branch) got2.insert(x);
    for (int x : res.pair->copy2_subdiv) got2.insert(x);
    CHECK(((got1 == want1 && got2 == want2) || (got1 == want2 && got2 == want1)));
}

TEST_CASE("rainbow colorings admit no pair: every signature is unique") {
    for (int n : {12, 14}) {
        auto res = find_disjoint_color_iso_pair(generate_rainbow(n), 3);
        INFO("n=" << n);
        CHECK(res.status == PairSearchStatus::ProvenAbsent);
        CHECK(res.enumeration_complete);
        CHECK(res.scan_complete);
        CHECK(res.largest_bucket == 1);
    }
}

TEST_CASE("round-robin K_12 has no disjoint color-isomorphic pair") {
    // frozen: confirmed by a direct scan of all 1,663,200 disjoint copy
    // pairs, which found zero color-isomorphic ones
    ProperColoring c = generate_round_robin(12);
    auto res = find_disjoint_color_iso_pair(c, 3);
    CHECK(res.status == PairSearchStatus::ProvenAbsent);
    CHECK(res.enumeration_complete);
    CHECK(res.scan_complete);
    CHECK(res.copies_enumerated == 55440);
}

TEST_CASE("reduced independent cross-check of the frozen K_12 absence") {
    // rescan with the public pairwise predicate instead of signature
    // bucketing: any disjoint pair splits the vertex set into two 6-sets, so
    // checking the {0..5} x {6..11} split exercises the predicate against
    // 3600 genuinely disjoint pairs
    ProperColoring c = generate_round_robin(12);
    std::vector<HtCopy> low, high;
    enumerate_ht_copies(12, 3, [&](const HtCopy& copy) {
        auto vs = copy.vertices();
        if (*std::max_element(vs.begin(), vs.end()) <= 5) low.push_back(copy);
        if (*std::min_element(vs.begin(), vs.end()) >= 6) high.push_back(copy);
        return true;
    });
    CHECK(low.size() == 60);
    CHECK(high.size() == 60);
    for (const auto& a : low)
        for (const auto& b : high) CHECK(!color_isomorphic(c, a, b));
}

TEST_CASE("too few vertices for two disjoint copies is immediate absence") {
    auto res = find_disjoint_color_iso_pair(generate_round_robin(10), 3);
    CHECK(res.status == PairSearchStatus::ProvenAbsent);
    CHECK(!res.note.empty());
}

TEST_CASE("budget exhaustion reports inconclusive, never a fake verdict") {
    auto res = find_disjoint_color_iso_pair(generate_round_robin(12), 3, 100);
    CHECK(res.status == PairSearchStatus::Inconclusive);
    CHECK(!res.enumeration_complete);
}

TEST_CASE("oracle input limits") {
    CHECK_THROWS_AS(find_disjoint_color_iso_pair(generate_rainbow(65), 3),
                    std::invalid_argument);
}

TEST_CASE("verify_certificate rejects every defect class") {
    ProperColoring c = testutil::planted_pair_coloring();
    auto res = find_disjoint_color_iso_pair(c, 3);
    REQUIRE(res.pair.has_value());
    CertificatePair good = *res.pair;
    REQUIRE(verify_certificate(c, good).ok);

    auto expect_bad = [&](CertificatePair bad, const char* what) {
        auto rep = verify_certificate(c, bad);
        INFO(what);
        CHECK(!rep.ok);
        CHECK(!rep.errors.empty());
    };

    CertificatePair overlap = good;
    overlap.copy2_branch[0] = good.copy1_branch[0];  // copies now intersect
    expect_bad(overlap, "overlap");

    CertificatePair range = good;
    range.copy1_subdiv[1] = 12;  // off the end of K_12
    expect_bad(range, "range");

    CertificatePair shape = good;
    shape.copy1_subdiv.pop_back();
    expect_bad(shape, "shape");

    CertificatePair tshape = good;
    tshape.t = 2;
    expect_bad(tshape, "t too small");

    // recolor one edge of copy2 so one lifted equality breaks
    ProperColoring mut = c;
    int a0 = good.copy2_branch[0], s0 = good.copy2_subdiv[0];
    mut.edge_color[edge_index(12, std::min(a0, s0), std::max(a0, s0))] = mut.num_colors;
    ++mut.num_colors;
    auto rep = verify_certificate(mut, good);
    CHECK(!rep.ok);
    bool mentions_color = false;
    for (const auto& e : rep.errors)
        if (e.find("color") != std::string::npos) mentions_color = true;
    CHECK(mentions_color);
}

TEST_CASE("absence JSON names the coloring and the verdict") {
    ProperColoring c = generate_round_robin(12);
    auto j = absence_to_json(c, 3);
    CHECK(j.at("t").get<int>() == 3);
    CHECK(j.at("n").get<int>() == 12);
    CHECK(j.at("absent").get<bool>());
    CHECK(j.contains("coloring_hash"));

    auto res = find_disjoint_color_iso_pair(c, 3);
    auto jr = to_json(res);
    CHECK(jr.at("status").get<std::string>() == std::string("proven-absent"));
    CHECK(jr.at("copies_enumerated").get<long long>() == 55440);
}
