#include "sievekit/weight.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sievekit {

WeightSpace WeightSpace::validate(std::vector<std::string> points,
                                  std::vector<std::vector<Num>> matrix) {
    const int n = static_cast<int>(points.size());
    {
        std::set<std::string> seen;
        for (int i = 0; i < n; ++i)
            if (!seen.insert(points[i]).second)
                throw validation_error("duplicate label '" + points[i] + "' at index " +
                                       std::to_string(i + 1));
    }
    if (static_cast<int>(matrix.size()) != n)
        throw validation_error("matrix has " + std::to_string(matrix.size()) + " rows, expected " +
                               std::to_string(n));
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(matrix[i].size()) != n)
            throw validation_error("row " + std::to_string(i + 1) + " has " +
                                   std::to_string(matrix[i].size()) + " entries, expected " +
                                   std::to_string(n));
    for (int i = 0; i < n; ++i) {
        if (matrix[i][i] != Num(0))
            throw validation_error("nonzero diagonal at (" + std::to_string(i + 1) + "," +
                                   std::to_string(i + 1) + ")");
        for (int j = 0; j < n; ++j) {
            if (matrix[i][j] < Num(0))
                throw validation_error("negative entry at (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
            if (matrix[i][j] != matrix[j][i])
                throw validation_error("asymmetric at (" + std::to_string(i + 1) + "," +
                                       std::to_string(j + 1) + ")");
        }
    }
    WeightSpace out;
    out.points_ = std::move(points);
    out.w_.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.w_.push_back(matrix[i][j]);
    return out;
}

WeightSpace WeightSpace::zero(std::vector<std::string> points) {
    WeightSpace out;
    const std::size_t n = points.size();
    out.points_ = std::move(points);
    out.w_.assign(n * n, Num(0));
    return out;
}

int WeightSpace::index_of(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (points_[i] == label) return i;
    return -1;
}

void WeightSpace::set(int i, int j, Num v) {
    w_[idx(i, j)] = v;
    w_[idx(j, i)] = std::move(v);
}

bool WeightSpace::is_exact() const {
    for (const auto& v : w_)
        if (!v.is_exact()) return false;
    return true;
}

WeightSpace WeightSpace::to_inexact() const {
    WeightSpace out = *this;
    for (auto& v : out.w_) v = Num(v.to_double());
    return out;
}

bool operator==(const WeightSpace& a, const WeightSpace& b) {
    if (a.points_ != b.points_) return false;
    for (std::size_t i = 0; i < a.w_.size(); ++i)
        if (a.w_[i] != b.w_[i]) return false;
    return true;
}

SetMap::SetMap(std::vector<std::string> source, std::vector<std::string> target,
               std::vector<int> assignment)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(assignment)) {
    if (map_.size() != source_.size())
        throw validation_error("set map is not total on its source");
    for (int t : map_)
        if (t < 0 || t >= static_cast<int>(target_.size()))
            throw validation_error("set map image out of range");
}

SetMap SetMap::from_labels(std::vector<std::string> source, std::vector<std::string> target,
                           const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<int> assignment(source.size(), -1);
    for (const auto& [s, t] : pairs) {
        auto si = std::find(source.begin(), source.end(), s);
        auto ti = std::find(target.begin(), target.end(), t);
        if (si == source.end()) throw validation_error("unknown source label '" + s + "'");
        if (ti == target.end()) throw validation_error("unknown target label '" + t + "'");
        assignment[static_cast<std::size_t>(si - source.begin())] =
            static_cast<int>(ti - target.begin());
    }
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] < 0)
            throw validation_error("source label '" + source[i] + "' has no image");
    return SetMap(std::move(source), std::move(target), std::move(assignment));
}

SetMap SetMap::identity(std::vector<std::string> points) {
    std::vector<int> assignment(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) assignment[i] = static_cast<int>(i);
    auto copy = points;
    return SetMap(std::move(points), std::move(copy), std::move(assignment));
}

bool SetMap::is_injective() const {
    std::set<int> seen(map_.begin(), map_.end());
    return seen.size() == map_.size();
}

bool SetMap::is_surjective() const {
    std::set<int> seen(map_.begin(), map_.end());
    return seen.size() == target_.size();
}

SetMap SetMap::compose(const SetMap& g, const SetMap& f) {
    if (f.target_ != g.source_) throw validation_error("set maps are not composable");
    std::vector<int> assignment(f.map_.size());
    for (std::size_t i = 0; i < f.map_.size(); ++i)
        assignment[i] = g.map_[static_cast<std::size_t>(f.map_[i])];
    return SetMap(f.source_, g.target_, std::move(assignment));
}

DomainPredicate DomainPredicate::metric() { return {}; }
DomainPredicate DomainPredicate::ultrametric() {
    DomainPredicate p;
    p.kind = Kind::ultrametric;
    return p;
}
DomainPredicate DomainPredicate::q_metric(double q) {
    if (!(q >= 1.0)) throw validation_error("q must satisfy q >= 1");
    DomainPredicate p;
    p.kind = Kind::q_metric;
    p.q = q;
    return p;
}
DomainPredicate DomainPredicate::q_metric_infinity() {
    DomainPredicate p;
    p.kind = Kind::q_metric;
    p.q_infinite = true;
    return p;
}
DomainPredicate DomainPredicate::rho_inframetric(Num rho) {
    if (rho < Num(1)) throw validation_error("rho must satisfy rho >= 1");
    DomainPredicate p;
    p.kind = Kind::rho_inframetric;
    p.rho = std::move(rho);
    return p;
}
DomainPredicate DomainPredicate::rho_relaxed(Num rho) {
    if (rho < Num(1)) throw validation_error("rho must satisfy rho >= 1");
    DomainPredicate p;
    p.kind = Kind::rho_relaxed;
    p.rho = std::move(rho);
    return p;
}
DomainPredicate DomainPredicate::a_space() {
    DomainPredicate p;
    p.kind = Kind::a_space;
    return p;
}
DomainPredicate DomainPredicate::a_m_space(int m) {
    if (m < 3) throw validation_error("m must satisfy m >= 3");
    DomainPredicate p;
    p.kind = Kind::a_m_space;
    p.m = m;
    return p;
}
DomainPredicate DomainPredicate::integer_grid(Num step) {
    if (step <= Num(0)) throw validation_error("grid step must be positive");
    DomainPredicate p;
    p.kind = Kind::integer_grid;
    p.grid_step = std::move(step);
    return p;
}

WeightSpace pullback(const SetMap& f, const WeightSpace& target_space) {
    if (f.target() != target_space.points())
        throw validation_error("set map target does not match weight space");
    WeightSpace out = WeightSpace::zero(f.source());
    const int n = out.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.set(i, j, target_space.at(f.apply(i), f.apply(j)));
    return out;
}

bool is_nonexpansive(const SetMap& f, const WeightSpace& u, const WeightSpace& v) {
    if (f.source() != u.points()) throw validation_error("set map source does not match domain");
    return leq(pullback(f, v), u);
}

bool leq(const WeightSpace& u, const WeightSpace& v) {
    if (!u.same_points(v)) throw validation_error("weight spaces have different point sets");
    const int n = u.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (u.at(i, j) > v.at(i, j)) return false;
    return true;
}

WeightSpace max2(const WeightSpace& u, const WeightSpace& v) {
    if (!u.same_points(v)) throw validation_error("weight spaces have different point sets");
    WeightSpace out = u;
    const int n = u.size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.set(i, j, Num::max(u.at(i, j), v.at(i, j)));
    return out;
}

WeightSpace sup(const std::vector<WeightSpace>& family) {
    if (family.empty()) throw validation_error("sup of empty family");
    WeightSpace out = family.front();
    for (std::size_t k = 1; k < family.size(); ++k) out = max2(out, family[k]);
    return out;
}

namespace {

bool triple_holds(const WeightSpace& u, const DomainPredicate& p, int x, int y, int z,
                  double tol) {
    const Num& uxz = u.at(x, z);
    const Num& uxy = u.at(x, y);
    const Num& uyz = u.at(y, z);
    switch (p.kind) {
        case DomainPredicate::Kind::metric:
            return Num::leq_tol(uxz, uxy + uyz, tol);
        case DomainPredicate::Kind::ultrametric:
            return Num::leq_tol(uxz, Num::max(uxy, uyz), tol);
        case DomainPredicate::Kind::q_metric: {
            if (p.q_infinite) return Num::leq_tol(uxz, Num::max(uxy, uyz), tol);
            if (p.q == 1.0) return Num::leq_tol(uxz, uxy + uyz, tol);
            double qi;
            if (std::modf(p.q, &qi) == 0.0 && u.is_exact()) {
                unsigned e = static_cast<unsigned>(qi);
                return Num::pow_int(uxz, e) <= Num::pow_int(uxy, e) + Num::pow_int(uyz, e);
            }
            double lhs = std::pow(uxz.to_double(), p.q);
            double rhs = std::pow(uxy.to_double(), p.q) + std::pow(uyz.to_double(), p.q);
            return lhs <= rhs + tol;
        }
        case DomainPredicate::Kind::rho_inframetric:
            return Num::leq_tol(uxz, p.rho * Num::max(uxy, uyz), tol);
        case DomainPredicate::Kind::rho_relaxed:
            return Num::leq_tol(uxz, p.rho * (uxy + uyz), tol);
        default:
            return true;
    }
}

bool every_point_has_antipode(const WeightSpace& u, double tol) {
    for (int x = 0; x < u.size(); ++x)
        if (antipodes(u, x, tol).empty()) return false;
    return true;
}

bool subset_is_a_space(const WeightSpace& u, const std::vector<int>& pts, double tol) {
    // Diameter of the induced subspace.
    Num diam(0);
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
            diam = Num::max(diam, u.at(pts[a], pts[b]));
    if (Num::eq_tol(diam, Num(0), tol)) return true;  // every point is its own antipode
    for (std::size_t a = 0; a < pts.size(); ++a) {
        bool covered = false;
        for (std::size_t b = 0; b < pts.size() && !covered; ++b)
            if (a != b && Num::eq_tol(u.at(pts[a], pts[b]), diam, tol)) covered = true;
        if (!covered) return false;
    }
    return true;
}

bool all_m_subsets_a_spaces(const WeightSpace& u, int m, double tol) {
    const int n = u.size();
    if (n < m) return true;  // vacuous
    std::vector<int> pick(static_cast<std::size_t>(m));
    // Lexicographic enumeration of m-subsets.
    for (int i = 0; i < m; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!subset_is_a_space(u, pick, tol)) return false;
        int i = m - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - m + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
    return true;
}

bool on_grid(const Num& v, const Num& step, double tol) {
    if (v.is_exact() && step.is_exact()) {
        Rational q = (v / step).rat();
        return q.is_integer();
    }
    double q = v.to_double() / step.to_double();
    return std::fabs(q - std::round(q)) <= tol;
}

}  // namespace

bool satisfies(const WeightSpace& u, const DomainPredicate& p, double tol) {
    const int n = u.size();
    switch (p.kind) {
        case DomainPredicate::Kind::a_space:
            return every_point_has_antipode(u, tol);
        case DomainPredicate::Kind::a_m_space:
            return all_m_subsets_a_spaces(u, p.m, tol);
        case DomainPredicate::Kind::integer_grid: {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!on_grid(u.at(i, j), p.grid_step, tol)) return false;
            return true;
        }
        default:
            for (int x = 0; x < n; ++x)
                for (int z = x + 1; z < n; ++z)
                    for (int y = 0; y < n; ++y) {
                        if (y == x || y == z) continue;
                        if (!triple_holds(u, p, x, y, z, tol)) return false;
                    }
            return true;
    }
}

Num diameter(const WeightSpace& u) {
    Num out(0);
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j) out = Num::max(out, u.at(i, j));
    return out;
}

Num separation(const WeightSpace& u) {
    if (u.size() < 2) throw validation_error("separation is undefined on a singleton space");
    Num out = u.at(0, 1);
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j) out = Num::min(out, u.at(i, j));
    return out;
}

std::vector<int> antipodes(const WeightSpace& u, int x, double tol) {
    const Num diam = diameter(u);
    std::vector<int> out;
    if (Num::eq_tol(diam, Num(0), tol)) {
        for (int y = 0; y < u.size(); ++y) out.push_back(y);
        return out;
    }
    for (int y = 0; y < u.size(); ++y)
        if (y != x && Num::eq_tol(u.at(x, y), diam, tol)) out.push_back(y);
    return out;
}

}  // namespace sievekit
