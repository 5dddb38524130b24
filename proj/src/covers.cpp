#include "sievekit/covers.hpp"

#include <algorithm>
#include <bit>

namespace sievekit {

namespace {

std::vector<std::vector<int>> canonicalize_blocks(std::vector<std::vector<int>> blocks) {
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
    }
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    return blocks;
}

std::vector<int> mask_to_block(std::uint64_t m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

std::uint64_t block_to_mask(const std::vector<int>& b) {
    std::uint64_t m = 0;
    for (int v : b) m |= 1ull << v;
    return m;
}

void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   const AdjacencyMasks& adj, std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    // Pivot on the candidate dominating the most of p.
    std::uint64_t px = p | x;
    int pivot = -1, best = -1;
    for (std::uint64_t t = px; t;) {
        int v = std::countr_zero(t);
        t &= t - 1;
        int deg = std::popcount(p & adj[static_cast<std::size_t>(v)]);
        if (deg > best) {
            best = deg;
            pivot = v;
        }
    }
    std::uint64_t cand = p & ~adj[static_cast<std::size_t>(pivot)];
    while (cand) {
        int v = std::countr_zero(cand);
        cand &= cand - 1;
        std::uint64_t bit = 1ull << v;
        bron_kerbosch(r | bit, p & adj[static_cast<std::size_t>(v)],
                      x & adj[static_cast<std::size_t>(v)], adj, out);
        p &= ~bit;
        x |= bit;
    }
}

}  // namespace

Cover::Cover(std::vector<std::string> points, std::vector<std::vector<int>> blocks)
    : points_(std::move(points)) {
    if (points_.size() > 64) throw size_guard_error("covers support at most 64 points");
    for (const auto& b : blocks) {
        if (b.empty()) throw validation_error("cover contains an empty block");
        for (int v : b)
            if (v < 0 || v >= ground_size())
                throw validation_error("block element out of range");
    }
    blocks_ = canonicalize_blocks(std::move(blocks));
    std::vector<char> covered(points_.size(), 0);
    for (const auto& b : blocks_)
        for (int v : b) covered[static_cast<std::size_t>(v)] = 1;
    for (std::size_t i = 0; i < covered.size(); ++i)
        if (!covered[i])
            throw validation_error("point '" + points_[i] + "' is not covered");
}

Cover Cover::singletons(std::vector<std::string> points) {
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) blocks.push_back({i});
    return Cover(std::move(points), std::move(blocks));
}

Cover Cover::trivial(std::vector<std::string> points) {
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(points.size()); ++i) all.push_back(i);
    return Cover(std::move(points), {all});
}

Cover Cover::from_label_blocks(std::vector<std::string> points,
                               const std::vector<std::vector<std::string>>& blocks) {
    std::vector<std::vector<int>> idx_blocks;
    for (const auto& b : blocks) {
        std::vector<int> ib;
        for (const auto& label : b) {
            auto it = std::find(points.begin(), points.end(), label);
            if (it == points.end()) throw validation_error("unknown label '" + label + "'");
            ib.push_back(static_cast<int>(it - points.begin()));
        }
        idx_blocks.push_back(std::move(ib));
    }
    return Cover(std::move(points), std::move(idx_blocks));
}

std::vector<std::vector<std::string>> Cover::label_blocks() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& b : blocks_) {
        std::vector<std::string> lb;
        for (int v : b) lb.push_back(points_[static_cast<std::size_t>(v)]);
        out.push_back(std::move(lb));
    }
    return out;
}

std::vector<std::uint64_t> Cover::block_masks() const {
    std::vector<std::uint64_t> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) out.push_back(block_to_mask(b));
    return out;
}

FlagCover::FlagCover(Cover cover) : cover_(std::move(cover)) {
    if (!is_flag_cover(cover_))
        throw validation_error("cover is not a non-nested flag cover");
}

FlagCover FlagCover::trusted(Cover cover) {
    FlagCover out;
    out.cover_ = std::move(cover);
    return out;
}

std::vector<std::vector<int>> maximal_cliques(const AdjacencyMasks& adjacency) {
    const int n = static_cast<int>(adjacency.size());
    if (n > 64) throw size_guard_error("clique enumeration supports at most 64 vertices");
    if (n == 0) return {};
    std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
    std::vector<std::uint64_t> raw;
    bron_kerbosch(0, all, 0, adjacency, raw);
    std::vector<std::vector<int>> out;
    out.reserve(raw.size());
    for (std::uint64_t m : raw) out.push_back(mask_to_block(m));
    std::sort(out.begin(), out.end());
    return out;
}

AdjacencyMasks co_occurrence_graph(const Cover& c) {
    AdjacencyMasks adj(static_cast<std::size_t>(c.ground_size()), 0);
    for (std::uint64_t m : c.block_masks()) {
        for (std::uint64_t t = m; t;) {
            int v = std::countr_zero(t);
            t &= t - 1;
            adj[static_cast<std::size_t>(v)] |= m & ~(1ull << v);
        }
    }
    return adj;
}

bool refines(const Cover& c, const Cover& d) {
    if (c.points() != d.points())
        throw validation_error("covers have different ground sets");
    auto dm = d.block_masks();
    for (std::uint64_t cb : c.block_masks()) {
        bool contained = false;
        for (std::uint64_t db : dm)
            if ((cb & ~db) == 0) {
                contained = true;
                break;
            }
        if (!contained) return false;
    }
    return true;
}

bool refines(const FlagCover& c, const FlagCover& d) { return refines(c.cover(), d.cover()); }

Cover preimage_cover(const SetMap& f, const Cover& d) {
    if (f.target() != d.points())
        throw validation_error("set map target does not match cover ground set");
    std::vector<std::vector<int>> blocks;
    for (std::uint64_t db : d.block_masks()) {
        std::vector<int> pre;
        for (int i = 0; i < static_cast<int>(f.source().size()); ++i)
            if (db & (1ull << f.apply(i))) pre.push_back(i);
        if (!pre.empty()) blocks.push_back(std::move(pre));
    }
    return Cover(f.source(), std::move(blocks));
}

FlagCover flagify(const Cover& c) {
    return FlagCover::trusted(Cover(c.points(), maximal_cliques(co_occurrence_graph(c))));
}

bool is_partition(const Cover& c) {
    std::uint64_t seen = 0;
    for (std::uint64_t m : c.block_masks()) {
        if (seen & m) return false;
        seen |= m;
    }
    return true;
}

bool is_non_nested(const Cover& c) {
    auto masks = c.block_masks();
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (std::size_t j = 0; j < masks.size(); ++j)
            if (i != j && (masks[i] & ~masks[j]) == 0) return false;
    return true;
}

bool is_flag_cover(const Cover& c) {
    return c.blocks() == maximal_cliques(co_occurrence_graph(c));
}

}  // namespace sievekit
