#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>

#include "sievekit/covers.hpp"

using namespace sievekit;

namespace {

const std::vector<std::string> abc = {"a", "b", "c"};

// Reference flagification: add any subset whose proper subsets are faces,
// iterate, then drop nested blocks. Tiny ground sets only.
Cover flagify_by_completion(const Cover& c) {
    const int n = c.ground_size();
    std::vector<char> face(static_cast<std::size_t>(1) << n, 0);
    for (std::uint64_t b : c.block_masks())
        for (std::uint64_t sub = b;; sub = (sub - 1) & b) {
            face[sub] = 1;
            if (sub == 0) break;
        }
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::uint64_t s = 1; s < (1ull << n); ++s) {
            if (face[s]) continue;
            bool all_proper = true;
            for (std::uint64_t sub = (s - 1) & s; all_proper; sub = (sub - 1) & s) {
                if (sub != s && sub != 0 && !face[sub] &&
                    std::popcount(sub) == std::popcount(s) - 1)
                    all_proper = false;
                if (sub == 0) break;
            }
            // A simplex enters when all its codimension-one faces are present;
            // edges are never created, only higher faces.
            if (std::popcount(s) >= 3 && all_proper) {
                face[s] = 1;
                grew = true;
            }
        }
    }
    std::vector<std::vector<int>> blocks;
    for (std::uint64_t s = 1; s < (1ull << n); ++s) {
        if (!face[s]) continue;
        bool maximal = true;
        for (std::uint64_t t = 1; t < (1ull << n); ++t)
            if (t != s && face[t] && (s & ~t) == 0) maximal = false;
        if (!maximal) continue;
        std::vector<int> blk;
        for (int v = 0; v < n; ++v)
            if (s & (1ull << v)) blk.push_back(v);
        blocks.push_back(std::move(blk));
    }
    return Cover(c.points(), std::move(blocks));
}

std::vector<Cover> all_covers(const std::vector<std::string>& points) {
    const int n = static_cast<int>(points.size());
    const std::uint64_t subsets = (1ull << n) - 1;  // nonempty subsets 1..2^n-1
    std::vector<Cover> out;
    for (std::uint64_t pick = 1; pick < (1ull << subsets); ++pick) {
        std::uint64_t covered = 0;
        std::vector<std::vector<int>> blocks;
        for (std::uint64_t s = 1; s <= subsets; ++s)
            if (pick & (1ull << (s - 1))) {
                covered |= s;
                std::vector<int> blk;
                for (int v = 0; v < n; ++v)
                    if (s & (1ull << v)) blk.push_back(v);
                blocks.push_back(std::move(blk));
            }
        if (covered != subsets) continue;
        out.push_back(Cover(points, std::move(blocks)));
    }
    return out;
}

std::vector<FlagCover> all_flag_covers(const std::vector<std::string>& points) {
    // Flag covers correspond exactly to graphs on the ground set.
    const int n = static_cast<int>(points.size());
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
    std::vector<FlagCover> out;
    for (std::uint64_t pick = 0; pick < (1ull << edges.size()); ++pick) {
        AdjacencyMasks adj(static_cast<std::size_t>(n), 0);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (pick & (1ull << e)) {
                adj[static_cast<std::size_t>(edges[e].first)] |= 1ull << edges[e].second;
                adj[static_cast<std::size_t>(edges[e].second)] |= 1ull << edges[e].first;
            }
        out.push_back(FlagCover::trusted(Cover(points, maximal_cliques(adj))));
    }
    return out;
}

Cover random_cover(std::mt19937_64& rng, const std::vector<std::string>& points) {
    const int n = static_cast<int>(points.size());
    std::vector<std::vector<int>> blocks;
    int k = 1 + static_cast<int>(rng() % 4);
    std::uint64_t covered = 0;
    for (int b = 0; b < k; ++b) {
        std::uint64_t mask = 1ull + (rng() % ((1ull << n) - 1));
        covered |= mask;
        std::vector<int> blk;
        for (int v = 0; v < n; ++v)
            if (mask & (1ull << v)) blk.push_back(v);
        blocks.push_back(std::move(blk));
    }
    for (int v = 0; v < n; ++v)
        if (!(covered & (1ull << v))) blocks.push_back({v});
    return Cover(points, std::move(blocks));
}

}  // namespace

TEST_CASE("maximal cliques of basic graphs") {
    // Path a-b-c.
    AdjacencyMasks path = {0b010, 0b101, 0b010};
    CHECK(maximal_cliques(path) == std::vector<std::vector<int>>{{0, 1}, {1, 2}});
    // Triangle.
    AdjacencyMasks tri = {0b110, 0b101, 0b011};
    CHECK(maximal_cliques(tri) == std::vector<std::vector<int>>{{0, 1, 2}});
    // No edges: singletons.
    AdjacencyMasks none = {0, 0, 0};
    CHECK(maximal_cliques(none) == std::vector<std::vector<int>>{{0}, {1}, {2}});
}

TEST_CASE("clique output is always a flag cover") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
        int n = 1 + static_cast<int>(rng() % 7);
        AdjacencyMasks adj(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) {
                    adj[static_cast<std::size_t>(i)] |= 1ull << j;
                    adj[static_cast<std::size_t>(j)] |= 1ull << i;
                }
        std::vector<std::string> pts;
        for (int i = 0; i < n; ++i) pts.push_back(std::to_string(i));
        Cover c(pts, maximal_cliques(adj));
        CHECK(is_flag_cover(c));
        CHECK(is_non_nested(c));
    }
}

TEST_CASE("refinement basics") {
    Cover singles = Cover::singletons(abc);
    Cover overlap = Cover(abc, {{0, 1}, {1, 2}});
    Cover whole = Cover::trivial(abc);
    CHECK(refines(singles, overlap));
    CHECK(refines(singles, whole));
    CHECK(refines(overlap, whole));
    CHECK_FALSE(refines(whole, overlap));
    CHECK_THROWS_AS(refines(singles, Cover::singletons({"x"})), validation_error);
}

TEST_CASE("preimage covers") {
    Cover d({"p", "q"}, {{0}, {1}});
    SetMap f({"a", "b", "c"}, {"p", "q"}, {0, 0, 1});
    CHECK(preimage_cover(f, d) == Cover(abc, {{0, 1}, {2}}));

    CHECK(preimage_cover(SetMap::identity(abc), Cover(abc, {{0, 1}, {1, 2}})) ==
          Cover(abc, {{0, 1}, {1, 2}}));

    SetMap constant(abc, {"p"}, {0, 0, 0});
    CHECK(preimage_cover(constant, Cover({"p"}, {{0}})) == Cover::trivial(abc));
}

TEST_CASE("flagify closes triangles and is idempotent") {
    Cover tri(abc, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(flagify(tri).cover() == Cover::trivial(abc));
    Cover mixed(abc, {{0, 1}, {2}});
    CHECK(flagify(mixed).cover() == mixed);
    CHECK(flagify(flagify(mixed).cover()) == flagify(mixed));
}

TEST_CASE("flagify is the minimal flag cover: exhaustive on 4 points") {
    std::vector<std::string> pts = {"a", "b", "c", "d"};
    auto flags = all_flag_covers(pts);
    for (const Cover& c : all_covers(pts)) {
        FlagCover f = flagify(c);
        CHECK(f.cover() == flagify_by_completion(c));
        CHECK(refines(c, f.cover()));
        for (const FlagCover& d : flags)
            if (refines(c, d.cover())) CHECK(refines(f.cover(), d.cover()));
    }
}

TEST_CASE("flagify minimality, randomized on 5 points") {
    std::vector<std::string> pts = {"a", "b", "c", "d", "e"};
    auto flags = all_flag_covers(pts);
    std::mt19937_64 rng(29);
    for (int t = 0; t < 300; ++t) {
        Cover c = random_cover(rng, pts);
        FlagCover f = flagify(c);
        CHECK(f.cover() == flagify_by_completion(c));
        CHECK(refines(c, f.cover()));
        for (const FlagCover& d : flags)
            if (refines(c, d.cover())) CHECK(refines(f.cover(), d.cover()));
    }
}

TEST_CASE("flagify is monotone with respect to refinement") {
    std::mt19937_64 rng(31);
    std::vector<std::string> pts = {"a", "b", "c", "d", "e"};
    for (int t = 0; t < 200; ++t) {
        Cover c = random_cover(rng, pts);
        // Coarsen by merging two random blocks.
        auto blocks = c.blocks();
        if (blocks.size() >= 2) {
            auto merged = blocks[rng() % blocks.size()];
            auto other = blocks[rng() % blocks.size()];
            merged.insert(merged.end(), other.begin(), other.end());
            blocks.push_back(merged);
        }
        Cover d(pts, blocks);
        REQUIRE(refines(c, d));
        CHECK(refines(flagify(c).cover(), flagify(d).cover()));
    }
}

TEST_CASE("refining a preimage of a flag cover is the same as refining its flagification") {
    std::mt19937_64 rng(37);
    std::vector<std::string> xs = {"a", "b", "c", "d"};
    std::vector<std::string> ys = {"p", "q", "r"};
    auto y_flags = all_flag_covers(ys);
    auto x_flags = all_flag_covers(xs);
    for (int t = 0; t < 400; ++t) {
        const FlagCover& d = y_flags[rng() % y_flags.size()];
        const FlagCover& c = x_flags[rng() % x_flags.size()];
        std::vector<int> assign(xs.size());
        for (auto& a : assign) a = static_cast<int>(rng() % ys.size());
        SetMap f(xs, ys, assign);
        Cover pre = preimage_cover(f, d.cover());
        CHECK(refines(c.cover(), pre) == refines(c.cover(), flagify(pre).cover()));
    }
}

TEST_CASE("partition detection") {
    CHECK(is_partition(Cover(abc, {{0, 1}, {2}})));
    CHECK_FALSE(is_partition(Cover(abc, {{0, 1}, {1, 2}})));
    CHECK(is_partition(Cover::trivial(abc)));
    // Every partition is a flag cover.
    CHECK(is_flag_cover(Cover(abc, {{0, 1}, {2}})));
}

TEST_CASE("cover validation") {
    CHECK_THROWS_AS(Cover(abc, {{0, 1}}), validation_error);          // c uncovered
    CHECK_THROWS_AS(Cover(abc, {{0, 1, 2}, {}}), validation_error);   // empty block
    CHECK_THROWS_AS(Cover(abc, {{0, 3}}), validation_error);          // out of range
    CHECK_THROWS_AS(FlagCover(Cover(abc, {{0, 1}, {1, 2}, {0, 2}})), validation_error);
}
