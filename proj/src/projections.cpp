#include "sievekit/projections.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sievekit/kernels.hpp"

namespace sievekit {

namespace {

std::vector<std::vector<Num>> to_grid_matrix(const WeightSpace& u) {
    const int n = u.size();
    std::vector<std::vector<Num>> m(static_cast<std::size_t>(n),
                                    std::vector<Num>(static_cast<std::size_t>(n), Num(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = u.at(i, j);
    return m;
}

WeightSpace from_grid_matrix(const WeightSpace& like, const std::vector<std::vector<Num>>& m) {
    WeightSpace out = WeightSpace::zero(like.points());
    for (int i = 0; i < like.size(); ++i)
        for (int j = i + 1; j < like.size(); ++j)
            out.set(i, j, m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    return out;
}

enum class ClosureOp { min_plus, min_max };

// Floyd-Warshall on Num entries; same visit order as the double kernels.
void closure_generic(std::vector<std::vector<Num>>& m, ClosureOp op) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const Num a = m[i][k];
            for (std::size_t j = 0; j < n; ++j) {
                Num via = op == ClosureOp::min_plus ? a + m[k][j] : Num::max(a, m[k][j]);
                if (via < m[i][j]) m[i][j] = via;
            }
        }
}

WeightSpace closure_double(const WeightSpace& u, ClosureOp op) {
    const std::size_t n = static_cast<std::size_t>(u.size());
    std::vector<double> buf(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            buf[i * n + j] = u.at(static_cast<int>(i), static_cast<int>(j)).to_double();
    if (op == ClosureOp::min_plus)
        kernels::min_plus_closure(buf.data(), n, n);
    else
        kernels::min_max_closure(buf.data(), n, n);
    WeightSpace out = WeightSpace::zero(u.points());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.set(static_cast<int>(i), static_cast<int>(j), Num(buf[i * n + j]));
    return out;
}

WeightSpace closure(const WeightSpace& u, ClosureOp op) {
    if (!u.is_exact()) return closure_double(u, op);
    auto m = to_grid_matrix(u);
    closure_generic(m, op);
    return from_grid_matrix(u, m);
}

// Subdominant ultrametric via a minimum spanning tree: the value for a pair
// is the largest edge on the unique tree path between them.
WeightSpace subdominant_ultrametric_mst(const WeightSpace& u) {
    const int n = u.size();
    WeightSpace out = WeightSpace::zero(u.points());
    if (n <= 1) return out;

    std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
    std::vector<int> parent(static_cast<std::size_t>(n), 0);
    std::vector<Num> key(static_cast<std::size_t>(n), Num(0));
    in_tree[0] = 1;
    for (int v = 1; v < n; ++v) key[static_cast<std::size_t>(v)] = u.at(0, v);
    std::vector<std::vector<std::pair<int, Num>>> tree(static_cast<std::size_t>(n));
    for (int step = 1; step < n; ++step) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!in_tree[static_cast<std::size_t>(v)] &&
                (best < 0 || key[static_cast<std::size_t>(v)] < key[static_cast<std::size_t>(best)]))
                best = v;
        in_tree[static_cast<std::size_t>(best)] = 1;
        int p = parent[static_cast<std::size_t>(best)];
        tree[static_cast<std::size_t>(p)].push_back({best, key[static_cast<std::size_t>(best)]});
        tree[static_cast<std::size_t>(best)].push_back({p, key[static_cast<std::size_t>(best)]});
        for (int v = 0; v < n; ++v)
            if (!in_tree[static_cast<std::size_t>(v)] &&
                u.at(best, v) < key[static_cast<std::size_t>(v)]) {
                key[static_cast<std::size_t>(v)] = u.at(best, v);
                parent[static_cast<std::size_t>(v)] = best;
            }
    }
    for (int x = 0; x < n; ++x) {
        // DFS from x carrying the max edge seen so far.
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<std::pair<int, Num>> stack{{x, Num(0)}};
        seen[static_cast<std::size_t>(x)] = 1;
        while (!stack.empty()) {
            auto [v, acc] = stack.back();
            stack.pop_back();
            if (v != x && v > x) out.set(x, v, acc);
            for (const auto& [w, len] : tree[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back({w, Num::max(acc, len)});
                }
        }
    }
    return out;
}

WeightSpace project_path_metric(const WeightSpace& u) { return closure(u, ClosureOp::min_plus); }

WeightSpace project_ultrametric(const WeightSpace& u) {
    if (u.is_exact()) return subdominant_ultrametric_mst(u);
    return closure_double(u, ClosureOp::min_max);
}

WeightSpace project_q_metric(const WeightSpace& u, double q) {
    const std::size_t n = static_cast<std::size_t>(u.size());
    std::vector<double> buf(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                buf[i * n + j] =
                    std::pow(u.at(static_cast<int>(i), static_cast<int>(j)).to_double(), q);
    kernels::min_plus_closure(buf.data(), n, n);
    WeightSpace out = WeightSpace::zero(u.points());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.set(static_cast<int>(i), static_cast<int>(j),
                    Num(std::pow(buf[i * n + j], 1.0 / q)));
    return out;
}

Num floor_to_grid(const Num& v, const std::vector<Num>& grid) {
    Num best(0);
    for (const Num& g : grid) {
        if (g <= v)
            best = Num::max(best, g);
        else
            break;  // grid sorted
    }
    return best;
}

WeightSpace project_discretize(const WeightSpace& u, const std::vector<Num>& grid,
                               bool then_path_metric) {
    WeightSpace out = WeightSpace::zero(u.points());
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j) out.set(i, j, floor_to_grid(u.at(i, j), grid));
    if (then_path_metric) out = project_path_metric(out);
    return out;
}

std::vector<int> class_index_of(const WeightSpace& u,
                                const std::vector<std::vector<std::string>>& classes) {
    std::vector<int> cls(static_cast<std::size_t>(u.size()), -1);
    for (std::size_t c = 0; c < classes.size(); ++c)
        for (const auto& label : classes[c]) {
            int i = u.index_of(label);
            if (i < 0) throw validation_error("quotient class names unknown label '" + label + "'");
            if (cls[static_cast<std::size_t>(i)] >= 0)
                throw validation_error("quotient classes overlap at '" + label + "'");
            cls[static_cast<std::size_t>(i)] = static_cast<int>(c);
        }
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (cls[i] < 0)
            throw validation_error("quotient classes miss point '" + u.points()[i] + "'");
    return cls;
}

WeightSpace project_quotient(const WeightSpace& u,
                             const std::vector<std::vector<std::string>>& classes) {
    auto cls = class_index_of(u, classes);
    WeightSpace zeroed = u;
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j)
            if (cls[static_cast<std::size_t>(i)] == cls[static_cast<std::size_t>(j)])
                zeroed.set(i, j, u.is_exact() ? Num(0) : Num(0.0));
    return project_path_metric(zeroed);
}

WeightSpace project_a_space(const WeightSpace& input) {
    // Every a-space is a metric, so projecting to the metrics first does not
    // change the set of a-spaces below the input.
    WeightSpace d = project_path_metric(input);
    const int n = d.size();
    if (n <= 1) return d;
    const double tol = d.is_exact() ? 0.0 : kDefaultTol;
    while (true) {
        if (satisfies(d, DomainPredicate::a_space(), tol)) return d;
        const Num diam = diameter(d);
        // Largest entry strictly below the current diameter.
        Num second(0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!Num::eq_tol(d.at(i, j), diam, tol)) second = Num::max(second, d.at(i, j));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (Num::eq_tol(d.at(i, j), diam, tol)) d.set(i, j, second);
    }
}

bool weights_equal_tol(const WeightSpace& a, const WeightSpace& b, double tol) {
    if (a.is_exact() && b.is_exact()) return a == b;
    for (int i = 0; i < a.size(); ++i)
        for (int j = i + 1; j < a.size(); ++j)
            if (!Num::eq_tol(a.at(i, j), b.at(i, j), tol)) return false;
    return true;
}

}  // namespace

ProjectionKind ProjectionKind::ultrametric() {
    ProjectionKind k;
    k.kind = Kind::ultrametric;
    return k;
}
ProjectionKind ProjectionKind::path_metric() {
    ProjectionKind k;
    k.kind = Kind::path_metric;
    return k;
}
ProjectionKind ProjectionKind::q_metric(double q) {
    if (!(q >= 1.0)) throw validation_error("q must satisfy q >= 1");
    ProjectionKind k;
    k.kind = Kind::q_metric;
    k.q = q;
    return k;
}
ProjectionKind ProjectionKind::q_metric_infinity() {
    ProjectionKind k;
    k.kind = Kind::q_metric;
    k.q_infinite = true;
    return k;
}
ProjectionKind ProjectionKind::discretize(std::vector<Num> grid, bool then_path) {
    for (const Num& g : grid)
        if (g <= Num(0)) throw validation_error("grid levels must be positive");
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    ProjectionKind k;
    k.kind = Kind::discretize;
    k.grid = std::move(grid);
    k.then_path_metric = then_path;
    return k;
}
ProjectionKind ProjectionKind::rho_inframetric(Num rho) {
    if (rho < Num(1)) throw validation_error("rho must satisfy rho >= 1");
    ProjectionKind k;
    k.kind = Kind::rho_inframetric;
    k.rho = std::move(rho);
    return k;
}
ProjectionKind ProjectionKind::a_space() {
    ProjectionKind k;
    k.kind = Kind::a_space;
    return k;
}
ProjectionKind ProjectionKind::quotient(std::vector<std::vector<std::string>> classes) {
    ProjectionKind k;
    k.kind = Kind::quotient;
    k.classes = std::move(classes);
    return k;
}
ProjectionKind ProjectionKind::intersection(std::vector<ProjectionKind> parts, double tol,
                                            int max_iter) {
    if (parts.empty()) throw validation_error("intersection of no projections");
    ProjectionKind k;
    k.kind = Kind::intersection;
    k.parts = std::move(parts);
    k.iter_tol = tol;
    k.max_iter = max_iter;
    return k;
}

std::optional<DomainPredicate> ProjectionKind::predicate() const {
    switch (kind) {
        case Kind::ultrametric: return DomainPredicate::ultrametric();
        case Kind::path_metric: return DomainPredicate::metric();
        case Kind::q_metric:
            return q_infinite ? DomainPredicate::q_metric_infinity() : DomainPredicate::q_metric(q);
        case Kind::rho_inframetric: return DomainPredicate::rho_inframetric(rho);
        case Kind::a_space: return DomainPredicate::a_space();
        default: return std::nullopt;
    }
}

WeightSpace project(const WeightSpace& u, const ProjectionKind& kind) {
    switch (kind.kind) {
        case ProjectionKind::Kind::ultrametric: return project_ultrametric(u);
        case ProjectionKind::Kind::path_metric: return project_path_metric(u);
        case ProjectionKind::Kind::q_metric:
            if (kind.q_infinite) return project_ultrametric(u);
            if (kind.q == 1.0) return project_path_metric(u);
            return project_q_metric(u, kind.q);
        case ProjectionKind::Kind::discretize:
            return project_discretize(u, kind.grid, kind.then_path_metric);
        case ProjectionKind::Kind::rho_inframetric: return project_rho_inframetric(u, kind.rho);
        case ProjectionKind::Kind::a_space: return project_a_space(u);
        case ProjectionKind::Kind::quotient: return project_quotient(u, kind.classes);
        case ProjectionKind::Kind::intersection: {
            IntersectionResult r = project_intersection(u, kind.parts, kind.iter_tol, kind.max_iter);
            if (!r.converged)
                throw convergence_error("intersection projection did not stabilize within " +
                                            std::to_string(kind.max_iter) + " rounds",
                                        r.result);
            return r.result;
        }
    }
    throw std::logic_error("unknown projection kind");
}

Num ultrametric_by_splits(const WeightSpace& u, int x, int y) {
    const int n = u.size();
    if (x == y) return Num(0);
    if (n > 20) throw size_guard_error("split enumeration supports at most 20 points");
    std::vector<int> others;
    for (int v = 0; v < n; ++v)
        if (v != x && v != y) others.push_back(v);
    const std::size_t m = others.size();
    Num best(0);
    bool first = true;
    for (std::uint64_t pick = 0; pick < (1ull << m); ++pick) {
        // Side A holds x plus the picked subset; y is always on the far side.
        std::vector<char> in_a(static_cast<std::size_t>(n), 0);
        in_a[static_cast<std::size_t>(x)] = 1;
        for (std::size_t b = 0; b < m; ++b)
            if (pick & (1ull << b)) in_a[static_cast<std::size_t>(others[b])] = 1;
        Num cross = u.at(x, y);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (in_a[static_cast<std::size_t>(a)] && !in_a[static_cast<std::size_t>(b)])
                    cross = Num::min(cross, u.at(a, b));
        if (first || cross > best) {
            best = cross;
            first = false;
        }
    }
    return best;
}

Num minimax_path(const WeightSpace& u, int x, int y) {
    if (x == y) return Num(0);
    auto m = to_grid_matrix(u);
    closure_generic(m, ClosureOp::min_max);
    return m[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
}

WeightSpace project_rho_inframetric(const WeightSpace& u, const Num& rho) {
    if (rho < Num(1)) throw validation_error("rho must satisfy rho >= 1");
    WeightSpace d = u;
    const int n = d.size();
    bool dirty = true;
    while (dirty) {
        dirty = false;
        for (int x = 0; x < n; ++x)
            for (int z = x + 1; z < n; ++z) {
                Num bound(0);
                bool have = false;
                for (int y = 0; y < n; ++y) {
                    if (y == x || y == z) continue;
                    Num b = rho * Num::max(d.at(x, y), d.at(y, z));
                    if (!have || b < bound) {
                        bound = b;
                        have = true;
                    }
                }
                if (have && bound < d.at(x, z)) {
                    d.set(x, z, bound);
                    dirty = true;
                }
            }
    }
    return d;
}

IntersectionResult project_intersection(const WeightSpace& u,
                                        const std::vector<ProjectionKind>& parts, double tol,
                                        int max_iter) {
    if (parts.empty()) throw validation_error("intersection of no projections");
    IntersectionResult out;
    out.result = u;
    for (int round = 1; round <= max_iter; ++round) {
        WeightSpace prev = out.result;
        for (const auto& part : parts) out.result = project(out.result, part);
        out.rounds = round;
        if (weights_equal_tol(out.result, prev, tol)) {
            out.converged = true;
            return out;
        }
    }
    return out;
}

std::vector<Num> integer_grid_for(const WeightSpace& u, const Num& step) {
    if (step <= Num(0)) throw validation_error("grid step must be positive");
    Num diam = diameter(u);
    std::vector<Num> grid;
    Num level = step;
    while (level <= diam) {
        grid.push_back(level);
        level = level + step;
    }
    if (grid.empty() || grid.back() < diam) grid.push_back(level);
    return grid;
}

WeightSpace quotient_space(const WeightSpace& u,
                           const std::vector<std::vector<std::string>>& classes) {
    WeightSpace folded = project_quotient(u, classes);  // validates the partition
    std::vector<std::string> labels;
    std::vector<int> rep;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        std::string lbl = classes[c].front();
        for (std::size_t k = 1; k < classes[c].size(); ++k) lbl += "+" + classes[c][k];
        labels.push_back(lbl);
        rep.push_back(u.index_of(classes[c].front()));
    }
    WeightSpace out = WeightSpace::zero(labels);
    for (std::size_t a = 0; a < rep.size(); ++a)
        for (std::size_t b = a + 1; b < rep.size(); ++b)
            out.set(static_cast<int>(a), static_cast<int>(b),
                    folded.at(rep[a], rep[b]));
    return out;
}

namespace {

bool in_domain(const WeightSpace& w, const ProjectionKind& kind, double tol) {
    switch (kind.kind) {
        case ProjectionKind::Kind::a_space:
            // The projection targets metrics with antipodes; the antipode
            // condition alone spans a larger family.
            return satisfies(w, DomainPredicate::metric(), tol) &&
                   satisfies(w, DomainPredicate::a_space(), tol);
        case ProjectionKind::Kind::ultrametric:
        case ProjectionKind::Kind::path_metric:
        case ProjectionKind::Kind::q_metric:
        case ProjectionKind::Kind::rho_inframetric:
            return satisfies(w, *kind.predicate(), tol);
        case ProjectionKind::Kind::discretize: {
            for (int i = 0; i < w.size(); ++i)
                for (int j = i + 1; j < w.size(); ++j) {
                    const Num& v = w.at(i, j);
                    bool on = Num::eq_tol(v, Num(0), tol);
                    for (const Num& g : kind.grid)
                        if (Num::eq_tol(v, g, tol)) on = true;
                    if (!on) return false;
                }
            return !kind.then_path_metric || satisfies(w, DomainPredicate::metric(), tol);
        }
        case ProjectionKind::Kind::quotient: {
            auto cls = class_index_of(w, kind.classes);
            for (int i = 0; i < w.size(); ++i)
                for (int j = i + 1; j < w.size(); ++j)
                    if (cls[static_cast<std::size_t>(i)] == cls[static_cast<std::size_t>(j)] &&
                        !Num::eq_tol(w.at(i, j), Num(0), tol))
                        return false;
            return satisfies(w, DomainPredicate::metric(), tol);
        }
        case ProjectionKind::Kind::intersection: {
            for (const auto& part : kind.parts)
                if (!in_domain(w, part, tol)) return false;
            return true;
        }
    }
    return false;
}

// Pushforward weight making f non-expansive: the min of u over preimage
// pairs, the diameter of u where a pair has no preimage.
WeightSpace pushforward_min(const WeightSpace& u, const SetMap& f) {
    const int m = static_cast<int>(f.target().size());
    WeightSpace v = WeightSpace::zero(f.target());
    Num fallback = diameter(u);
    for (int p = 0; p < m; ++p)
        for (int q = p + 1; q < m; ++q) {
            Num best = fallback;
            bool found = false;
            for (int x = 0; x < u.size(); ++x)
                for (int y = 0; y < u.size(); ++y) {
                    if (f.apply(x) != p || f.apply(y) != q) continue;
                    if (!found || u.at(x, y) < best) best = u.at(x, y);
                    found = true;
                }
            v.set(p, q, best);
        }
    return v;
}

}  // namespace

ProjectionLawReport check_projection_laws(const ProjectionKind& kind,
                                          const std::vector<WeightSpace>& suite,
                                          int functoriality_maps, unsigned seed, double tol,
                                          double maximality_eps) {
    ProjectionLawReport rep;
    std::mt19937 rng(seed);
    const Num eps{Rational::from_double(maximality_eps)};

    for (const auto& u : suite) {
        ++rep.instances;
        WeightSpace p = project(u, kind);

        ++rep.contraction_checked;
        bool contract = true;
        for (int i = 0; i < u.size() && contract; ++i)
            for (int j = i + 1; j < u.size() && contract; ++j)
                if (!Num::leq_tol(p.at(i, j), u.at(i, j), tol)) contract = false;
        if (!contract)
            rep.violations.push_back({"contraction", "projection exceeds input"});

        if (!in_domain(p, kind, tol))
            rep.violations.push_back({"membership", "projection leaves the target domain"});

        ++rep.idempotency_checked;
        WeightSpace pp = project(p, kind);
        if (!weights_equal_tol(pp, p, tol))
            rep.violations.push_back({"idempotency", "second application moved the result"});

        // Monotone pair: u plus a random nonnegative bump.
        ++rep.monotonicity_checked;
        WeightSpace u2 = u;
        std::uniform_int_distribution<int> bump(0, 3);
        for (int i = 0; i < u.size(); ++i)
            for (int j = i + 1; j < u.size(); ++j) {
                int b = bump(rng);
                if (b) u2.set(i, j, u2.at(i, j) + (u.is_exact() ? Num(b) : Num(double(b))));
            }
        WeightSpace p2 = project(u2, kind);
        bool mono = true;
        for (int i = 0; i < u.size() && mono; ++i)
            for (int j = i + 1; j < u.size() && mono; ++j)
                if (!Num::leq_tol(p.at(i, j), p2.at(i, j), tol)) mono = false;
        if (!mono)
            rep.violations.push_back({"monotonicity", "larger input produced a smaller projection"});

        ++rep.maximality_checked;
        for (int i = 0; i < u.size(); ++i)
            for (int j = i + 1; j < u.size(); ++j) {
                WeightSpace bumped = p;
                bumped.set(i, j, p.at(i, j) + (p.is_exact() ? eps : Num(maximality_eps)));
                bool leq_u = true;
                for (int a = 0; a < u.size() && leq_u; ++a)
                    for (int b = a + 1; b < u.size() && leq_u; ++b)
                        if (!Num::leq_tol(bumped.at(a, b), u.at(a, b), tol)) leq_u = false;
                if (leq_u && in_domain(bumped, kind, tol)) {
                    rep.violations.push_back(
                        {"maximality", "entry (" + u.points()[i] + "," + u.points()[j] +
                                           ") can grow inside the domain"});
                }
            }
    }

    if (functoriality_maps > 0 && kind.kind != ProjectionKind::Kind::quotient && !suite.empty()) {
        for (int t = 0; t < functoriality_maps; ++t) {
            const WeightSpace& u = suite[rng() % suite.size()];
            if (u.size() < 1) continue;
            // a-space pullbacks only stay in the domain along surjections.
            bool need_surjective = kind.kind == ProjectionKind::Kind::a_space;
            int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(u.size()));
            std::vector<std::string> target_labels;
            for (int i = 0; i < m; ++i) target_labels.push_back("t" + std::to_string(i));
            std::vector<int> assignment(static_cast<std::size_t>(u.size()));
            for (int i = 0; i < u.size(); ++i)
                assignment[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<unsigned>(m));
            if (need_surjective)
                for (int p = 0; p < m; ++p)
                    assignment[static_cast<std::size_t>(p % u.size())] = p;
            SetMap f(u.points(), target_labels, assignment);
            WeightSpace v = pushforward_min(u, f);
            ++rep.functoriality_checked;
            WeightSpace pu = project(u, kind);
            WeightSpace pv = project(v, kind);
            WeightSpace pulled = pullback(f, pv);
            bool ok = true;
            for (int i = 0; i < u.size() && ok; ++i)
                for (int j = i + 1; j < u.size() && ok; ++j)
                    if (!Num::leq_tol(pulled.at(i, j), pu.at(i, j), tol)) ok = false;
            if (!ok)
                rep.violations.push_back(
                    {"functoriality", "projected map is no longer non-expansive"});
        }
    }
    return rep;
}

}  // namespace sievekit
