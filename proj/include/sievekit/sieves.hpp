#ifndef SIEVEKIT_SIEVES_HPP
#define SIEVEKIT_SIEVES_HPP

#include <string>
#include <vector>

#include "sievekit/covers.hpp"
#include "sievekit/weight.hpp"

namespace sievekit {

// Right-continuous step function from thresholds to flag covers:
// covers[i] holds on [thresholds[i], thresholds[i+1]) and covers.back() on
// [thresholds.back(), infinity). Canonical form: thresholds[0] == 0, strictly
// increasing, consecutive covers distinct, final cover trivial.
class Sieve {
public:
    Sieve() = default;

    // Validates refinement monotonicity and the trivial tail, then prunes
    // breakpoints whose cover repeats the previous one.
    static Sieve make(std::vector<std::string> points, std::vector<Num> thresholds,
                      std::vector<FlagCover> covers);

    const std::vector<std::string>& points() const { return points_; }
    const std::vector<Num>& thresholds() const { return thresholds_; }
    const std::vector<FlagCover>& covers() const { return covers_; }
    int levels() const { return static_cast<int>(thresholds_.size()); }

    // Cover on singletons at threshold zero.
    bool is_proper() const;

    friend bool operator==(const Sieve& a, const Sieve& b);
    friend bool operator!=(const Sieve& a, const Sieve& b) { return !(a == b); }

private:
    std::vector<std::string> points_;
    std::vector<Num> thresholds_;
    std::vector<FlagCover> covers_;
};

enum class SieveMethod { rips, single_linkage, cech };

const FlagCover& eval(const Sieve& s, const Num& t);

// Maximal cliques of the threshold graph {xy : u(x,y) <= t} per level.
Sieve rips_sieve(const WeightSpace& u);
// Connected components of the threshold graph per level.
Sieve sl_sieve(const WeightSpace& u);
// Maximal cliques of the graph with an edge xy whenever some z in X has
// u(x,z) <= t and u(z,y) <= t; z ranges over all of X, so u(x,y) <= t always
// yields a direct edge.
Sieve cech_sieve(const WeightSpace& u);

Sieve build_sieve(const WeightSpace& u, SieveMethod method);

// First threshold at which each pair shares a block.
WeightSpace sieve_to_weight(const Sieve& s);

// Checks the refinement condition at every breakpoint of either sieve.
bool is_sieve_morphism(const SetMap& f, const Sieve& s, const Sieve& s2);

// Whether the weight-level composite of the method with sieve_to_weight is
// contractive and idempotent at u.
bool is_stationary_sample(SieveMethod method, const WeightSpace& u);

}  // namespace sievekit

#endif
