#include "sievekit/tight_span.hpp"

#include <algorithm>
#include <numeric>

namespace sievekit {

namespace {

int cmp_values(const std::vector<Num>& a, const std::vector<Num>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = Num::cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool values_close(const std::vector<Num>& a, const std::vector<Num>& b, double tol) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!Num::eq_tol(a[i], b[i], tol)) return false;
    return true;
}

// Union-find with parity relative to the root; tracks which components carry
// an odd cycle or a zero loop. Rank of the rows {e_i + e_j} / {e_i} equals
// sum over touched components of (size - 1 + odd-flag).
struct ParityDsu {
    std::vector<int> parent;
    std::vector<unsigned char> parity;   // parity of the path to the parent
    std::vector<unsigned char> odd;      // root-indexed: component has odd cycle/loop
    std::vector<unsigned char> touched;

    explicit ParityDsu(int n)
        : parent(static_cast<std::size_t>(n)),
          parity(static_cast<std::size_t>(n), 0),
          odd(static_cast<std::size_t>(n), 0),
          touched(static_cast<std::size_t>(n), 0) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    std::pair<int, unsigned char> find(int v) {
        unsigned char par = 0;
        while (parent[static_cast<std::size_t>(v)] != v) {
            par ^= parity[static_cast<std::size_t>(v)];
            v = parent[static_cast<std::size_t>(v)];
        }
        return {v, par};
    }

    // Adds a constraint row. Returns false when the row is dependent through
    // an even cycle (rank would stall) or a second cycle lands in a component.
    enum class Add { tree, odd_cycle, even_cycle };

    Add add_edge(int a, int b) {
        touched[static_cast<std::size_t>(a)] = 1;
        touched[static_cast<std::size_t>(b)] = 1;
        if (a == b) {
            auto [r, pa] = find(a);
            if (odd[static_cast<std::size_t>(r)]) return Add::even_cycle;  // second cycle
            odd[static_cast<std::size_t>(r)] = 1;
            return Add::odd_cycle;
        }
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra != rb) {
            // Edge creates parity pa(sub a) + 1 between the roots.
            parent[static_cast<std::size_t>(ra)] = rb;
            parity[static_cast<std::size_t>(ra)] = static_cast<unsigned char>(pa ^ pb ^ 1);
            if (odd[static_cast<std::size_t>(ra)]) {
                if (odd[static_cast<std::size_t>(rb)]) return Add::even_cycle;  // two cycles
                odd[static_cast<std::size_t>(rb)] = 1;
            }
            return Add::tree;
        }
        if (odd[static_cast<std::size_t>(ra)]) return Add::even_cycle;  // second cycle
        if ((pa ^ pb ^ 1) == 0) return Add::even_cycle;
        odd[static_cast<std::size_t>(ra)] = 1;
        return Add::odd_cycle;
    }
};

int rank_of_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    ParityDsu dsu(n);
    for (auto [a, b] : pairs) {
        if (a == b) {
            auto [r, p] = dsu.find(a);
            dsu.touched[static_cast<std::size_t>(a)] = 1;
            dsu.odd[static_cast<std::size_t>(r)] |= 1;
        } else {
            dsu.add_edge(a, b);
        }
    }
    // Components of touched vertices.
    int rank = 0;
    std::vector<int> comp_size(static_cast<std::size_t>(n), 0);
    std::vector<unsigned char> comp_odd(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
        if (!dsu.touched[static_cast<std::size_t>(v)]) continue;
        auto [r, p] = dsu.find(v);
        comp_size[static_cast<std::size_t>(r)] += 1;
        comp_odd[static_cast<std::size_t>(r)] |= dsu.odd[static_cast<std::size_t>(r)];
    }
    for (int r = 0; r < n; ++r)
        if (comp_size[static_cast<std::size_t>(r)] > 0)
            rank += comp_size[static_cast<std::size_t>(r)] - 1 +
                    (comp_odd[static_cast<std::size_t>(r)] ? 1 : 0);
    return rank;
}

// Solves the equality system of a minimal rigid edge set. Each component is
// unicyclic with an odd cycle or loop, so values are determined.
// Returns false when arithmetic pins a negative value early (caller filters).
bool solve_rigid_system(const WeightSpace& d, const std::vector<std::pair<int, int>>& edges,
                        std::vector<Num>& out) {
    const int n = d.size();
    out.assign(static_cast<std::size_t>(n), Num(0));
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> loops;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [a, b] = edges[e];
        if (a == b) {
            loops.push_back({a, a});
        } else {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
    }
    std::vector<int> state(static_cast<std::size_t>(n), -1);  // component id
    std::vector<Num> offset(static_cast<std::size_t>(n), Num(0));
    std::vector<int> sign(static_cast<std::size_t>(n), 1);

    std::vector<int> bfs_parent(static_cast<std::size_t>(n), -1);
    int comp = 0;
    for (int root = 0; root < n; ++root) {
        if (state[static_cast<std::size_t>(root)] != -1) continue;
        // BFS assigning f_v = offset_v + sign_v * t.
        std::vector<int> order{root};
        state[static_cast<std::size_t>(root)] = comp;
        offset[static_cast<std::size_t>(root)] = Num(0);
        sign[static_cast<std::size_t>(root)] = 1;
        std::vector<std::pair<int, int>> closers;
        for (std::size_t qi = 0; qi < order.size(); ++qi) {
            int v = order[qi];
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (state[static_cast<std::size_t>(w)] == -1) {
                    state[static_cast<std::size_t>(w)] = comp;
                    bfs_parent[static_cast<std::size_t>(w)] = v;
                    offset[static_cast<std::size_t>(w)] =
                        d.at(v, w) - offset[static_cast<std::size_t>(v)];
                    sign[static_cast<std::size_t>(w)] = -sign[static_cast<std::size_t>(v)];
                    order.push_back(w);
                } else if (w != bfs_parent[static_cast<std::size_t>(v)] && v < w) {
                    closers.push_back({v, w});  // non-tree edge, recorded once
                }
            }
        }
        std::optional<Num> t;
        for (auto [a, a2] : loops)
            if (state[static_cast<std::size_t>(a)] == comp) {
                // offset_a + sign_a * t = 0
                Num val = -offset[static_cast<std::size_t>(a)];
                t = sign[static_cast<std::size_t>(a)] == 1 ? val : -val;
            }
        for (auto [a, b] : closers) {
            if (sign[static_cast<std::size_t>(a)] != sign[static_cast<std::size_t>(b)])
                return false;  // even cycle, not rigid
            // offset_a + offset_b + 2*sign*t = d(a,b)
            Num rhs = d.at(a, b) - offset[static_cast<std::size_t>(a)] -
                      offset[static_cast<std::size_t>(b)];
            Num tv = rhs / Num(2);
            if (sign[static_cast<std::size_t>(a)] == -1) tv = -tv;
            t = tv;
        }
        if (!t.has_value()) return false;  // tree component, not rigid
        for (int v : order)
            out[static_cast<std::size_t>(v)] =
                offset[static_cast<std::size_t>(v)] +
                (sign[static_cast<std::size_t>(v)] == 1 ? *t : -*t);
        ++comp;
    }
    return true;
}

}  // namespace

ExtremalFunction kuratowski(const WeightSpace& d, int x) {
    ExtremalFunction f;
    f.points = d.points();
    for (int y = 0; y < d.size(); ++y) f.values.push_back(d.at(x, y));
    f.tight_pairs = tight_pairs_of(f.values, d);
    return f;
}

bool is_feasible(const std::vector<Num>& values, const WeightSpace& d, double tol) {
    const int n = d.size();
    for (int i = 0; i < n; ++i) {
        if (!Num::leq_tol(Num(0), values[static_cast<std::size_t>(i)], tol)) return false;
        for (int j = i; j < n; ++j)
            if (!Num::leq_tol(d.at(i, j),
                              values[static_cast<std::size_t>(i)] + values[static_cast<std::size_t>(j)],
                              tol))
                return false;
    }
    return true;
}

bool is_extremal(const std::vector<Num>& values, const WeightSpace& d, double tol) {
    const int n = d.size();
    if (static_cast<int>(values.size()) != n) return false;
    if (!is_feasible(values, d, tol)) return false;
    for (int x = 0; x < n; ++x) {
        Num best = -values[static_cast<std::size_t>(x)];  // y = x term
        for (int y = 0; y < n; ++y)
            if (y != x) best = Num::max(best, d.at(x, y) - values[static_cast<std::size_t>(y)]);
        if (!Num::eq_tol(values[static_cast<std::size_t>(x)], best, tol)) return false;
    }
    return true;
}

bool is_extremal(const ExtremalFunction& f, const WeightSpace& d, double tol) {
    return f.points == d.points() && is_extremal(f.values, d, tol);
}

std::vector<std::pair<int, int>> tight_pairs_of(const std::vector<Num>& values,
                                                const WeightSpace& d, double tol) {
    std::vector<std::pair<int, int>> out;
    const int n = d.size();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (Num::eq_tol(values[static_cast<std::size_t>(i)] + values[static_cast<std::size_t>(j)],
                            d.at(i, j), tol))
                out.push_back({i, j});
    return out;
}

Num sup_distance(const ExtremalFunction& f, const ExtremalFunction& g) {
    if (f.points != g.points)
        throw validation_error("sup distance between functions on different spaces");
    Num out(0);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        out = Num::max(out, (f.values[i] - g.values[i]).abs());
    return out;
}

Num height(const ExtremalFunction& f) {
    Num out = f.values.front();
    for (const Num& v : f.values) out = Num::min(out, v);
    return out;
}

std::vector<int> minset(const ExtremalFunction& f, double tol) {
    Num h = height(f);
    std::vector<int> out;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (Num::eq_tol(f.values[i], h, tol)) out.push_back(static_cast<int>(i));
    return out;
}

std::optional<ExtremalFunction> root_check(const WeightSpace& d, double tol) {
    const Num half = diameter(d) / Num(2);
    std::vector<Num> values(static_cast<std::size_t>(d.size()), half);
    if (!is_extremal(values, d, tol)) return std::nullopt;
    ExtremalFunction f;
    f.points = d.points();
    f.values = std::move(values);
    f.tight_pairs = tight_pairs_of(f.values, d, tol);
    return f;
}

TightSpanReport tight_span_vertices(const WeightSpace& d, double tol) {
    const int n = d.size();
    if (n > 8) throw size_guard_error("tight span enumeration supports at most 8 points");
    if (!satisfies(d, DomainPredicate::metric(), tol))
        throw validation_error("tight span requires a metric input");
    if (n == 0) throw validation_error("tight span of the empty space");

    // Candidate tight constraints: pairs (i, j) i < j and loops (i, i).
    std::vector<std::pair<int, int>> cand;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) cand.push_back({i, j});

    std::vector<std::vector<Num>> found;
    std::vector<std::pair<int, int>> chosen;

    // Depth-first choice of n constraints keeping every component at most
    // unicyclic with an odd cycle; solves each complete rigid system.
    auto recurse = [&](auto&& self, std::size_t next, ParityDsu dsu) -> void {
        if (static_cast<int>(chosen.size()) == n) {
            std::vector<Num> values;
            if (!solve_rigid_system(d, chosen, values)) return;
            if (!is_extremal(values, d, tol)) return;
            found.push_back(std::move(values));
            return;
        }
        if (cand.size() - next < static_cast<std::size_t>(n) - chosen.size()) return;
        for (std::size_t e = next; e < cand.size(); ++e) {
            ParityDsu trial = dsu;
            auto res = trial.add_edge(cand[e].first, cand[e].second);
            if (res == ParityDsu::Add::even_cycle) continue;
            chosen.push_back(cand[e]);
            self(self, e + 1, std::move(trial));
            chosen.pop_back();
        }
    };
    recurse(recurse, 0, ParityDsu(n));

    // Deduplicate values.
    std::sort(found.begin(), found.end(),
              [](const auto& a, const auto& b) { return cmp_values(a, b) < 0; });
    std::vector<std::vector<Num>> unique_vals;
    for (auto& v : found) {
        if (!unique_vals.empty() && values_close(unique_vals.back(), v, tol)) continue;
        unique_vals.push_back(std::move(v));
    }

    TightSpanReport rep;
    rep.diameter_value = diameter(d);
    for (auto& v : unique_vals) {
        ExtremalFunction f;
        f.points = d.points();
        f.values = std::move(v);
        f.tight_pairs = tight_pairs_of(f.values, d, tol);
        rep.vertices.push_back(std::move(f));
    }

    rep.kuratowski_index.assign(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        ExtremalFunction ex = kuratowski(d, x);
        for (std::size_t v = 0; v < rep.vertices.size(); ++v)
            if (values_close(rep.vertices[v].values, ex.values, tol)) {
                rep.kuratowski_index[static_cast<std::size_t>(x)] = static_cast<int>(v);
                break;
            }
    }

    rep.distances.assign(rep.vertices.size(), std::vector<Num>(rep.vertices.size(), Num(0)));
    for (std::size_t a = 0; a < rep.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < rep.vertices.size(); ++b) {
            Num dist = sup_distance(rep.vertices[a], rep.vertices[b]);
            rep.distances[a][b] = dist;
            rep.distances[b][a] = dist;
        }

    for (std::size_t a = 0; a < rep.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < rep.vertices.size(); ++b) {
            std::vector<std::pair<int, int>> common;
            for (const auto& p : rep.vertices[a].tight_pairs)
                if (std::find(rep.vertices[b].tight_pairs.begin(),
                              rep.vertices[b].tight_pairs.end(),
                              p) != rep.vertices[b].tight_pairs.end())
                    common.push_back(p);
            if (rank_of_pairs(n, common) == n - 1)
                rep.skeleton_edges.push_back({static_cast<int>(a), static_cast<int>(b)});
        }

    auto root = root_check(d, tol);
    rep.has_root = root.has_value();
    rep.root = std::move(root);
    return rep;
}

WeightSpace extend_by_diameter(const WeightSpace& d, const std::string& new_label) {
    if (d.index_of(new_label) >= 0)
        throw validation_error("extension label already present");
    Num diam = diameter(d);
    std::vector<std::string> points = d.points();
    points.push_back(new_label);
    WeightSpace out = WeightSpace::zero(points);
    for (int i = 0; i < d.size(); ++i) {
        for (int j = i + 1; j < d.size(); ++j) out.set(i, j, d.at(i, j));
        out.set(i, d.size(), diam);
    }
    return out;
}

WeightSpace extend_by_half_diameter(const WeightSpace& d, const std::string& new_label) {
    if (d.index_of(new_label) >= 0)
        throw validation_error("extension label already present");
    Num half = diameter(d) / Num(2);
    std::vector<std::string> points = d.points();
    points.push_back(new_label);
    WeightSpace out = WeightSpace::zero(points);
    for (int i = 0; i < d.size(); ++i) {
        for (int j = i + 1; j < d.size(); ++j) out.set(i, j, d.at(i, j));
        out.set(i, d.size(), half);
    }
    return out;
}

}  // namespace sievekit
