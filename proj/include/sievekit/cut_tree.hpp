#ifndef SIEVEKIT_CUT_TREE_HPP
#define SIEVEKIT_CUT_TREE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sievekit/weight.hpp"

namespace sievekit {

// Bipartition of a labeled ground set, canonicalized so the stored side
// contains the first label. The trivial cut (everything on one side) is
// representable but excluded from decomposition bases.
class Cut {
public:
    Cut(std::vector<std::string> points, std::uint64_t side_mask);
    static Cut from_labels(std::vector<std::string> points,
                           const std::vector<std::string>& side);

    const std::vector<std::string>& points() const { return points_; }
    std::uint64_t side_mask() const { return side_; }
    bool is_trivial() const;
    bool separates(int x, int y) const;
    std::vector<std::string> side_labels() const;

    friend bool operator==(const Cut& a, const Cut& b) {
        return a.points_ == b.points_ && a.side_ == b.side_;
    }

private:
    std::vector<std::string> points_;
    std::uint64_t side_;
};

struct CutDecomposition {
    std::vector<std::string> points;
    std::vector<std::pair<Cut, Num>> terms;  // weights nonnegative, cuts distinct
};

// 0/1 split pseudometric of the cut.
WeightSpace cut_metric(const Cut& c);

// Sum of the weighted cut metrics.
WeightSpace evaluate(const CutDecomposition& dec);

struct DecomposeOutcome {
    std::optional<CutDecomposition> decomposition;
    // Farkas certificate when infeasible: row multipliers y (one per pair,
    // in row-major pair order) with y.b > 0 and y.delta_A <= 0 for every
    // nontrivial cut A.
    std::vector<Rational> certificate;
    bool feasible() const { return decomposition.has_value(); }
};

// Exact rational feasibility of d = sum lambda_A delta_A with lambda >= 0
// over all nontrivial cuts. Inputs with double entries are lifted exactly to
// rationals first. Guarded at 12 points (2047 cut columns).
DecomposeOutcome decompose(const WeightSpace& d);

// Four-point condition: in every quadruple the two largest of the three
// pair-sums coincide. Requires a metric input.
bool is_tree_metric(const WeightSpace& d, double tol = kDefaultTol);

// d'(z,w) = |d(x,z) - d(x,w)| for a basepoint x: a tree (line) minorant of d
// agreeing with d on every pair through x.
WeightSpace line_minorant(const WeightSpace& d, int basepoint);

}  // namespace sievekit

#endif
