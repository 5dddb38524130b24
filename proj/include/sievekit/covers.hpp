#ifndef SIEVEKIT_COVERS_HPP
#define SIEVEKIT_COVERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sievekit/weight.hpp"

namespace sievekit {

// Cover of a labeled ground set. Blocks are stored canonically: each block
// sorted ascending by point index, blocks deduplicated and sorted
// lexicographically. Ground sets are capped at 64 points so blocks fit in a
// single bitmask during clique computations.
class Cover {
public:
    Cover() = default;
    // Validates: nonempty blocks, union equals the ground set.
    Cover(std::vector<std::string> points, std::vector<std::vector<int>> blocks);

    static Cover singletons(std::vector<std::string> points);
    static Cover trivial(std::vector<std::string> points);
    static Cover from_label_blocks(std::vector<std::string> points,
                                   const std::vector<std::vector<std::string>>& blocks);

    const std::vector<std::string>& points() const { return points_; }
    int ground_size() const { return static_cast<int>(points_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    std::vector<std::vector<std::string>> label_blocks() const;

    std::vector<std::uint64_t> block_masks() const;

    friend bool operator==(const Cover& a, const Cover& b) {
        return a.points_ == b.points_ && a.blocks_ == b.blocks_;
    }
    friend bool operator!=(const Cover& a, const Cover& b) { return !(a == b); }

private:
    std::vector<std::string> points_;
    std::vector<std::vector<int>> blocks_;
};

// Cover whose blocks are exactly the maximal cliques of their co-occurrence
// graph; in particular no block contains another. Construction re-checks the
// invariant unless the trusted factory is used by code that built the blocks
// as maximal cliques in the first place.
class FlagCover {
public:
    FlagCover() = default;
    explicit FlagCover(Cover cover);
    static FlagCover trusted(Cover cover);

    const Cover& cover() const { return cover_; }
    const std::vector<std::string>& points() const { return cover_.points(); }
    const std::vector<std::vector<int>>& blocks() const { return cover_.blocks(); }

    friend bool operator==(const FlagCover& a, const FlagCover& b) {
        return a.cover_ == b.cover_;
    }
    friend bool operator!=(const FlagCover& a, const FlagCover& b) { return !(a == b); }

private:
    Cover cover_;
};

// Simple undirected graph on the points of a cover's ground set, as adjacency
// bitmasks (no self loops).
using AdjacencyMasks = std::vector<std::uint64_t>;

// All maximal cliques (isolated vertices yield singletons), canonically sorted.
std::vector<std::vector<int>> maximal_cliques(const AdjacencyMasks& adjacency);

// Pairs co-occurring in some block.
AdjacencyMasks co_occurrence_graph(const Cover& c);

// true iff every block of c is contained in some block of d.
bool refines(const Cover& c, const Cover& d);
bool refines(const FlagCover& c, const FlagCover& d);

// Nonempty preimages of the blocks of d, deduplicated.
Cover preimage_cover(const SetMap& f, const Cover& d);

// Minimal non-nested flag cover refined by c: the maximal cliques of the
// co-occurrence graph of c.
FlagCover flagify(const Cover& c);

bool is_partition(const Cover& c);

bool is_non_nested(const Cover& c);
bool is_flag_cover(const Cover& c);

}  // namespace sievekit

#endif
