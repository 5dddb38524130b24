#include "sievekit/sieves.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace sievekit {

namespace {

std::vector<Num> threshold_grid(const WeightSpace& u) {
    std::vector<Num> ts;
    ts.push_back(Num(0));
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j) ts.push_back(u.at(i, j));
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

AdjacencyMasks threshold_graph(const WeightSpace& u, const Num& t) {
    AdjacencyMasks adj(static_cast<std::size_t>(u.size()), 0);
    for (int i = 0; i < u.size(); ++i)
        for (int j = i + 1; j < u.size(); ++j)
            if (u.at(i, j) <= t) {
                adj[static_cast<std::size_t>(i)] |= 1ull << j;
                adj[static_cast<std::size_t>(j)] |= 1ull << i;
            }
    return adj;
}

std::vector<std::vector<int>> components(const AdjacencyMasks& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (std::uint64_t t = adj[static_cast<std::size_t>(i)]; t;) {
            int j = std::countr_zero(t);
            t &= t - 1;
            int a = find(i), b = find(j);
            if (a != b) parent[static_cast<std::size_t>(a)] = b;
        }
    std::vector<std::vector<int>> comps(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) comps[static_cast<std::size_t>(find(i))].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& c : comps)
        if (!c.empty()) out.push_back(std::move(c));
    std::sort(out.begin(), out.end());
    return out;
}

AdjacencyMasks cech_graph(const WeightSpace& u, const Num& t) {
    const int n = u.size();
    // Balls of radius t; z witnesses edge xy iff z lies in both balls.
    std::vector<std::uint64_t> ball(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
            if (u.at(x, z) <= t) ball[static_cast<std::size_t>(x)] |= 1ull << z;
    AdjacencyMasks adj(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (ball[static_cast<std::size_t>(x)] & ball[static_cast<std::size_t>(y)]) {
                adj[static_cast<std::size_t>(x)] |= 1ull << y;
                adj[static_cast<std::size_t>(y)] |= 1ull << x;
            }
    return adj;
}

Sieve sieve_from_levels(const WeightSpace& u,
                        const std::function<Cover(const WeightSpace&, const Num&)>& level_cover) {
    std::vector<Num> ts = threshold_grid(u);
    std::vector<FlagCover> covers;
    for (const Num& t : ts) covers.push_back(FlagCover::trusted(level_cover(u, t)));
    return Sieve::make(u.points(), std::move(ts), std::move(covers));
}

}  // namespace

Sieve Sieve::make(std::vector<std::string> points, std::vector<Num> thresholds,
                  std::vector<FlagCover> covers) {
    if (thresholds.empty() || thresholds.size() != covers.size())
        throw validation_error("sieve needs one cover per threshold");
    if (thresholds.front() != Num(0))
        throw validation_error("sieve must start at threshold zero");
    for (std::size_t i = 0; i + 1 < thresholds.size(); ++i)
        if (!(thresholds[i] < thresholds[i + 1]))
            throw validation_error("sieve thresholds must be strictly increasing");
    for (const auto& c : covers)
        if (c.points() != points)
            throw validation_error("sieve cover on a different ground set");
    for (std::size_t i = 0; i + 1 < covers.size(); ++i)
        if (!refines(covers[i], covers[i + 1]))
            throw validation_error("sieve covers must be refinement-monotone");
    if (covers.back().blocks() != Cover::trivial(points).blocks())
        throw validation_error("sieve must end with the trivial cover");

    Sieve out;
    out.points_ = std::move(points);
    for (std::size_t i = 0; i < covers.size(); ++i) {
        if (!out.covers_.empty() && covers[i] == out.covers_.back()) continue;
        out.thresholds_.push_back(thresholds[i]);
        out.covers_.push_back(std::move(covers[i]));
    }
    return out;
}

bool Sieve::is_proper() const {
    return covers_.front().blocks() == Cover::singletons(points_).blocks();
}

bool operator==(const Sieve& a, const Sieve& b) {
    return a.points_ == b.points_ && a.thresholds_ == b.thresholds_ && a.covers_ == b.covers_;
}

const FlagCover& eval(const Sieve& s, const Num& t) {
    if (t < Num(0)) throw validation_error("negative threshold");
    std::size_t lo = 0;
    for (std::size_t i = 1; i < s.thresholds().size(); ++i)
        if (s.thresholds()[i] <= t) lo = i;
    return s.covers()[lo];
}

Sieve rips_sieve(const WeightSpace& u) {
    return sieve_from_levels(u, [](const WeightSpace& w, const Num& t) {
        return Cover(w.points(), maximal_cliques(threshold_graph(w, t)));
    });
}

Sieve sl_sieve(const WeightSpace& u) {
    return sieve_from_levels(u, [](const WeightSpace& w, const Num& t) {
        return Cover(w.points(), components(threshold_graph(w, t)));
    });
}

Sieve cech_sieve(const WeightSpace& u) {
    return sieve_from_levels(u, [](const WeightSpace& w, const Num& t) {
        return Cover(w.points(), maximal_cliques(cech_graph(w, t)));
    });
}

Sieve build_sieve(const WeightSpace& u, SieveMethod method) {
    switch (method) {
        case SieveMethod::rips: return rips_sieve(u);
        case SieveMethod::single_linkage: return sl_sieve(u);
        case SieveMethod::cech: return cech_sieve(u);
    }
    throw std::logic_error("unknown sieve method");
}

WeightSpace sieve_to_weight(const Sieve& s) {
    const int n = static_cast<int>(s.points().size());
    WeightSpace out = WeightSpace::zero(s.points());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            bool found = false;
            for (int lvl = 0; lvl < s.levels() && !found; ++lvl) {
                for (const auto& mask : s.covers()[static_cast<std::size_t>(lvl)]
                                            .cover()
                                            .block_masks()) {
                    if ((mask & (1ull << i)) && (mask & (1ull << j))) {
                        out.set(i, j, s.thresholds()[static_cast<std::size_t>(lvl)]);
                        found = true;
                        break;
                    }
                }
            }
            if (!found)
                throw validation_error("sieve never joins a pair; trivial tail missing");
        }
    return out;
}

bool is_sieve_morphism(const SetMap& f, const Sieve& s, const Sieve& s2) {
    if (f.source() != s.points() || f.target() != s2.points())
        throw validation_error("set map does not match sieve ground sets");
    std::vector<Num> ts = s.thresholds();
    ts.insert(ts.end(), s2.thresholds().begin(), s2.thresholds().end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (const Num& t : ts) {
        Cover pre = preimage_cover(f, eval(s2, t).cover());
        if (!refines(eval(s, t).cover(), pre)) return false;
    }
    return true;
}

bool is_stationary_sample(SieveMethod method, const WeightSpace& u) {
    WeightSpace once = sieve_to_weight(build_sieve(u, method));
    if (!leq(once, u)) return false;
    WeightSpace twice = sieve_to_weight(build_sieve(once, method));
    return twice == once;
}

}  // namespace sievekit
