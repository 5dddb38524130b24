#ifndef SIEVEKIT_WEIGHT_HPP
#define SIEVEKIT_WEIGHT_HPP

#include <optional>
#include <string>
#include <vector>

#include "sievekit/num.hpp"

namespace sievekit {

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct size_guard_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite set with a symmetric nonnegative dissimilarity, zero on the diagonal.
// Not required to satisfy any triangle-type inequality.
class WeightSpace {
public:
    WeightSpace() = default;

    // Checks symmetry, zero diagonal, nonnegativity and label uniqueness;
    // throws validation_error naming the offending indices.
    static WeightSpace validate(std::vector<std::string> points,
                                std::vector<std::vector<Num>> matrix);

    // Symmetrizing constructor for values produced internally; only the
    // upper triangle of the callback is consulted.
    static WeightSpace zero(std::vector<std::string> points);

    int size() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    const std::string& label(int i) const { return points_[i]; }
    int index_of(const std::string& label) const;  // -1 if absent

    const Num& at(int i, int j) const { return w_[idx(i, j)]; }
    void set(int i, int j, Num v);

    bool is_exact() const;
    WeightSpace to_inexact() const;  // all entries converted to double

    bool same_points(const WeightSpace& other) const { return points_ == other.points_; }

    friend bool operator==(const WeightSpace& a, const WeightSpace& b);

private:
    std::vector<std::string> points_;
    std::vector<Num> w_;  // row-major n*n

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * points_.size() + static_cast<std::size_t>(j);
    }
};

// Set map between labeled point sets; total on its source by construction.
class SetMap {
public:
    SetMap(std::vector<std::string> source, std::vector<std::string> target,
           std::vector<int> assignment);

    // Builds from label->label pairs; throws on unknown labels or gaps.
    static SetMap from_labels(std::vector<std::string> source, std::vector<std::string> target,
                              const std::vector<std::pair<std::string, std::string>>& pairs);
    static SetMap identity(std::vector<std::string> points);

    const std::vector<std::string>& source() const { return source_; }
    const std::vector<std::string>& target() const { return target_; }
    int apply(int i) const { return map_[static_cast<std::size_t>(i)]; }

    bool is_injective() const;
    bool is_surjective() const;

    static SetMap compose(const SetMap& g, const SetMap& f);  // g after f

private:
    std::vector<std::string> source_, target_;
    std::vector<int> map_;
};

// Membership predicates for the clustering domains handled by this library.
struct DomainPredicate {
    enum class Kind {
        metric,
        ultrametric,
        q_metric,
        rho_inframetric,
        rho_relaxed,
        a_space,
        a_m_space,
        integer_grid,
    };

    Kind kind = Kind::metric;
    bool q_infinite = false;  // q_metric only
    double q = 1.0;           // q in [1, inf)
    Num rho = Num(1);         // rho >= 1
    int m = 3;                // a_m_space, m >= 3
    Num grid_step = Num(1);   // integer_grid, step > 0

    static DomainPredicate metric();
    static DomainPredicate ultrametric();
    static DomainPredicate q_metric(double q);
    static DomainPredicate q_metric_infinity();
    static DomainPredicate rho_inframetric(Num rho);
    static DomainPredicate rho_relaxed(Num rho);
    static DomainPredicate a_space();
    static DomainPredicate a_m_space(int m);
    static DomainPredicate integer_grid(Num step);
};

WeightSpace pullback(const SetMap& f, const WeightSpace& target_space);

bool is_nonexpansive(const SetMap& f, const WeightSpace& u, const WeightSpace& v);

bool leq(const WeightSpace& u, const WeightSpace& v);
WeightSpace max2(const WeightSpace& u, const WeightSpace& v);
WeightSpace sup(const std::vector<WeightSpace>& family);

bool satisfies(const WeightSpace& u, const DomainPredicate& p, double tol = kDefaultTol);

Num diameter(const WeightSpace& u);
Num separation(const WeightSpace& u);  // min over distinct pairs; throws on singleton

// Points realizing the diameter from x. When the diameter is zero this
// includes x itself, so that zero spaces count as a-spaces.
std::vector<int> antipodes(const WeightSpace& u, int x, double tol = kDefaultTol);

}  // namespace sievekit

#endif
