#ifndef SIEVEKIT_TIGHT_SPAN_HPP
#define SIEVEKIT_TIGHT_SPAN_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sievekit/weight.hpp"

namespace sievekit {

// A pointwise-minimal function in the feasibility system
// { f >= 0, f(x) + f(y) >= d(x,y) }. tight_pairs lists the pairs (i, j),
// i <= j, where the constraint is met with equality; (i, i) records f(i) = 0.
struct ExtremalFunction {
    std::vector<std::string> points;
    std::vector<Num> values;
    std::vector<std::pair<int, int>> tight_pairs;
};

ExtremalFunction kuratowski(const WeightSpace& d, int x);

bool is_feasible(const std::vector<Num>& values, const WeightSpace& d, double tol = kDefaultTol);

// Feasibility plus the fixed-point identity f(x) = max_y (d(x,y) - f(y)).
bool is_extremal(const std::vector<Num>& values, const WeightSpace& d, double tol = kDefaultTol);
bool is_extremal(const ExtremalFunction& f, const WeightSpace& d, double tol = kDefaultTol);

std::vector<std::pair<int, int>> tight_pairs_of(const std::vector<Num>& values,
                                                const WeightSpace& d, double tol = kDefaultTol);

Num sup_distance(const ExtremalFunction& f, const ExtremalFunction& g);

Num height(const ExtremalFunction& f);
std::vector<int> minset(const ExtremalFunction& f, double tol = kDefaultTol);

// The constant diameter/2 function when it is extremal; present exactly when
// every point has an antipode.
std::optional<ExtremalFunction> root_check(const WeightSpace& d, double tol = kDefaultTol);

struct TightSpanReport {
    std::vector<ExtremalFunction> vertices;      // canonically sorted, includes all e(x)
    std::vector<std::vector<Num>> distances;     // pairwise sup-distances
    std::vector<int> kuratowski_index;           // position of e(x) per point x
    std::vector<std::pair<int, int>> skeleton_edges;  // vertex pairs sharing a facet
    bool has_root = false;
    std::optional<ExtremalFunction> root;
    Num diameter_value;
};

// Enumerates the zero-cells of the injective envelope of a metric space with
// at most eight points: solutions of minimal rigid tight systems, filtered by
// feasibility and extremality. Throws size_guard_error beyond the cap and
// validation_error for non-metric input.
TightSpanReport tight_span_vertices(const WeightSpace& d, double tol = kDefaultTol);

// One extra point at distance diameter(d) from everything; the result always
// satisfies the antipode condition.
WeightSpace extend_by_diameter(const WeightSpace& d, const std::string& new_label);

// One extra point at distance diameter(d)/2 from everything.
WeightSpace extend_by_half_diameter(const WeightSpace& d, const std::string& new_label);

}  // namespace sievekit

#endif
