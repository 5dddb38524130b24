#include "sievekit/cut_tree.hpp"

#include <algorithm>
#include <bit>

namespace sievekit {

Cut::Cut(std::vector<std::string> points, std::uint64_t side_mask)
    : points_(std::move(points)), side_(side_mask) {
    if (points_.empty()) throw validation_error("cut on an empty ground set");
    if (points_.size() > 64) throw size_guard_error("cuts support at most 64 points");
    std::uint64_t all = points_.size() == 64 ? ~0ull : (1ull << points_.size()) - 1;
    if (side_ & ~all) throw validation_error("cut side names points outside the ground set");
    if (!(side_ & 1ull)) side_ = all & ~side_;  // canonical side holds the first label
}

Cut Cut::from_labels(std::vector<std::string> points, const std::vector<std::string>& side) {
    std::uint64_t mask = 0;
    for (const auto& label : side) {
        auto it = std::find(points.begin(), points.end(), label);
        if (it == points.end()) throw validation_error("unknown label '" + label + "' in cut");
        mask |= 1ull << (it - points.begin());
    }
    return Cut(std::move(points), mask);
}

bool Cut::is_trivial() const {
    std::uint64_t all = points_.size() == 64 ? ~0ull : (1ull << points_.size()) - 1;
    return side_ == 0 || side_ == all;
}

bool Cut::separates(int x, int y) const {
    return ((side_ >> x) & 1ull) != ((side_ >> y) & 1ull);
}

std::vector<std::string> Cut::side_labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < points_.size(); ++i)
        if ((side_ >> i) & 1ull) out.push_back(points_[i]);
    return out;
}

WeightSpace cut_metric(const Cut& c) {
    WeightSpace out = WeightSpace::zero(c.points());
    for (int i = 0; i < out.size(); ++i)
        for (int j = i + 1; j < out.size(); ++j)
            if (c.separates(i, j)) out.set(i, j, Num(1));
    return out;
}

WeightSpace evaluate(const CutDecomposition& dec) {
    WeightSpace out = WeightSpace::zero(dec.points);
    for (const auto& [cut, weight] : dec.terms) {
        if (cut.points() != dec.points)
            throw validation_error("decomposition mixes ground sets");
        if (weight < Num(0)) throw validation_error("negative cut weight");
        for (int i = 0; i < out.size(); ++i)
            for (int j = i + 1; j < out.size(); ++j)
                if (cut.separates(i, j)) out.set(i, j, out.at(i, j) + weight);
    }
    return out;
}

namespace {

struct SimplexResult {
    bool feasible;
    std::vector<Rational> lambda;   // per column, when feasible
    std::vector<Rational> farkas;   // row multipliers, when infeasible
};

// Phase-1 simplex over exact rationals on the dense tableau
//   [ A | I ] [lambda; s] = b,  lambda, s >= 0, minimizing sum(s),
// with b >= 0 and Bland's rule (no cycling). The artificial block of the
// final tableau holds B^{-1}, so the Farkas vector y = c_B B^{-1} can be
// read off when the optimum stays positive.
SimplexResult phase1_with_certificate(const std::vector<std::vector<Rational>>& columns,
                                      const std::vector<Rational>& b) {
    const std::size_t rows = b.size();
    const std::size_t cols = columns.size();
    const std::size_t width = cols + rows + 1;  // structural | artificial | rhs
    std::vector<std::vector<Rational>> tab(rows, std::vector<Rational>(width, Rational(0)));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) tab[r][c] = columns[c][r];
        tab[r][cols + r] = Rational(1);
        tab[r][width - 1] = b[r];
    }
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) basis[r] = cols + r;
    auto is_artificial = [&](std::size_t var) { return var >= cols; };

    while (true) {
        long enter = -1;
        for (std::size_t c = 0; c < cols && enter < 0; ++c) {
            Rational rc(0);
            for (std::size_t r = 0; r < rows; ++r)
                if (is_artificial(basis[r])) rc = rc - tab[r][c];
            if (rc < Rational(0)) enter = static_cast<long>(c);
        }
        if (enter < 0) break;
        std::size_t pc = static_cast<std::size_t>(enter);
        long leave = -1;
        Rational best(0);
        for (std::size_t r = 0; r < rows; ++r) {
            if (tab[r][pc] > Rational(0)) {
                Rational ratio = tab[r][width - 1] / tab[r][pc];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[r] < basis[static_cast<std::size_t>(leave)])) {
                    best = ratio;
                    leave = static_cast<long>(r);
                }
            }
        }
        if (leave < 0) break;
        std::size_t pr = static_cast<std::size_t>(leave);
        Rational pivot = tab[pr][pc];
        for (auto& v : tab[pr]) v = v / pivot;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr || tab[r][pc].is_zero()) continue;
            Rational factor = tab[r][pc];
            for (std::size_t c = 0; c < width; ++c) tab[r][c] = tab[r][c] - factor * tab[pr][c];
        }
        basis[pr] = pc;
    }

    Rational objective(0);
    for (std::size_t r = 0; r < rows; ++r)
        if (is_artificial(basis[r])) objective = objective + tab[r][width - 1];

    SimplexResult out;
    out.feasible = objective.is_zero();
    if (out.feasible) {
        out.lambda.assign(cols, Rational(0));
        for (std::size_t r = 0; r < rows; ++r)
            if (!is_artificial(basis[r])) out.lambda[basis[r]] = tab[r][width - 1];
    } else {
        // y = c_B B^{-1}; the artificial block of the tableau holds B^{-1}.
        out.farkas.assign(rows, Rational(0));
        for (std::size_t j = 0; j < rows; ++j) {
            Rational y(0);
            for (std::size_t r = 0; r < rows; ++r)
                if (is_artificial(basis[r])) y = y + tab[r][cols + j];
            out.farkas[j] = y;
        }
    }
    return out;
}

Rational entry_as_rational(const Num& v) {
    return v.is_exact() ? v.rat() : Rational::from_double(v.to_double());
}

}  // namespace

DecomposeOutcome decompose(const WeightSpace& d) {
    const int n = d.size();
    if (n > 12) throw size_guard_error("cut decomposition supports at most 12 points");
    if (n < 2) {
        DecomposeOutcome out;
        out.decomposition = CutDecomposition{d.points(), {}};
        return out;
    }

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});

    // Canonical nontrivial cuts: side contains point 0, not all points.
    std::vector<std::uint64_t> cut_masks;
    std::uint64_t all = (1ull << n) - 1;
    for (std::uint64_t rest = 0; rest < (1ull << (n - 1)); ++rest) {
        std::uint64_t side = 1ull | (rest << 1);
        if (side != all) cut_masks.push_back(side);
    }

    std::vector<std::vector<Rational>> columns;
    columns.reserve(cut_masks.size());
    for (std::uint64_t mask : cut_masks) {
        std::vector<Rational> col;
        col.reserve(pairs.size());
        for (auto [i, j] : pairs) {
            bool sep = (((mask >> i) & 1ull) != ((mask >> j) & 1ull));
            col.push_back(Rational(sep ? 1 : 0));
        }
        columns.push_back(std::move(col));
    }
    std::vector<Rational> b;
    b.reserve(pairs.size());
    for (auto [i, j] : pairs) b.push_back(entry_as_rational(d.at(i, j)));

    SimplexResult res = phase1_with_certificate(columns, b);
    DecomposeOutcome out;
    if (res.feasible) {
        CutDecomposition dec;
        dec.points = d.points();
        for (std::size_t c = 0; c < cut_masks.size(); ++c)
            if (!res.lambda[c].is_zero())
                dec.terms.push_back({Cut(d.points(), cut_masks[c]), Num(res.lambda[c])});
        out.decomposition = std::move(dec);
    } else {
        out.certificate = std::move(res.farkas);
    }
    return out;
}

bool is_tree_metric(const WeightSpace& d, double tol) {
    if (!satisfies(d, DomainPredicate::metric(), tol))
        throw validation_error("tree metric test requires a metric input");
    const int n = d.size();
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                for (int w = z + 1; w < n; ++w) {
                    Num s1 = d.at(x, y) + d.at(z, w);
                    Num s2 = d.at(x, z) + d.at(y, w);
                    Num s3 = d.at(x, w) + d.at(y, z);
                    Num hi = Num::max(s1, Num::max(s2, s3));
                    int at_max = 0;
                    for (const Num& s : {s1, s2, s3})
                        if (Num::eq_tol(s, hi, tol)) ++at_max;
                    if (at_max < 2) return false;
                }
    return true;
}

WeightSpace line_minorant(const WeightSpace& d, int basepoint) {
    if (basepoint < 0 || basepoint >= d.size())
        throw validation_error("basepoint out of range");
    WeightSpace out = WeightSpace::zero(d.points());
    for (int z = 0; z < d.size(); ++z)
        for (int w = z + 1; w < d.size(); ++w)
            out.set(z, w, (d.at(basepoint, z) - d.at(basepoint, w)).abs());
    return out;
}

}  // namespace sievekit
