#ifndef SIEVEKIT_PROJECTIONS_HPP
#define SIEVEKIT_PROJECTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sievekit/weight.hpp"

namespace sievekit {

struct convergence_error : std::runtime_error {
    convergence_error(std::string msg, WeightSpace last)
        : std::runtime_error(std::move(msg)), last_iterate(std::move(last)) {}
    WeightSpace last_iterate;
};

// A canonical projection target. Each kind names a sup-closed family of
// weight spaces; project() returns the pointwise-maximal member below the
// input.
struct ProjectionKind {
    enum class Kind {
        ultrametric,
        path_metric,
        q_metric,
        discretize,
        rho_inframetric,
        a_space,
        quotient,
        intersection,
    };

    Kind kind = Kind::path_metric;

    bool q_infinite = false;
    double q = 1.0;

    std::vector<Num> grid;        // sorted positive levels; zero is implicit
    bool then_path_metric = false;

    Num rho = Num(1);

    std::vector<std::vector<std::string>> classes;  // partition of the points

    std::vector<ProjectionKind> parts;  // intersection
    double iter_tol = kDefaultTol;
    int max_iter = 100;

    static ProjectionKind ultrametric();
    static ProjectionKind path_metric();
    static ProjectionKind q_metric(double q);
    static ProjectionKind q_metric_infinity();
    static ProjectionKind discretize(std::vector<Num> grid, bool then_path_metric);
    static ProjectionKind rho_inframetric(Num rho);
    static ProjectionKind a_space();
    static ProjectionKind quotient(std::vector<std::vector<std::string>> classes);
    static ProjectionKind intersection(std::vector<ProjectionKind> parts, double tol,
                                       int max_iter);

    // The membership predicate this projection targets, when expressible.
    std::optional<DomainPredicate> predicate() const;
};

WeightSpace project(const WeightSpace& u, const ProjectionKind& kind);

// Split formula for the maximal ultrametric below u: max over bipartitions
// separating x and y of the minimum cross-pair weight. Exponential; the
// independent check for the spanning-tree and closure routes.
Num ultrametric_by_splits(const WeightSpace& u, int x, int y);

// Minimax path value computed by min-max dynamic programming over all
// intermediate points.
Num minimax_path(const WeightSpace& u, int x, int y);

// Entry repair to the largest rho-inframetric below u.
WeightSpace project_rho_inframetric(const WeightSpace& u, const Num& rho);

struct IntersectionResult {
    WeightSpace result;
    int rounds = 0;
    bool converged = false;
};

// Alternates the part projections until a full round is stable (exact
// equality for exact inputs, sup-difference below tol otherwise).
IntersectionResult project_intersection(const WeightSpace& u,
                                        const std::vector<ProjectionKind>& parts, double tol,
                                        int max_iter);

// Integer grid 0,1,...,ceil(diameter), step-scaled.
std::vector<Num> integer_grid_for(const WeightSpace& u, const Num& step = Num(1));

// Quotient metric on the classes of the partition (as a space whose points
// are the class representatives' labels joined by '+').
WeightSpace quotient_space(const WeightSpace& u,
                           const std::vector<std::vector<std::string>>& classes);

struct LawViolation {
    std::string law;
    std::string detail;
};

struct ProjectionLawReport {
    int instances = 0;
    int idempotency_checked = 0;
    int contraction_checked = 0;
    int monotonicity_checked = 0;
    int maximality_checked = 0;
    int functoriality_checked = 0;
    std::vector<LawViolation> violations;
    bool all_pass() const { return violations.empty(); }
};

// Checks idempotency, contraction, monotonicity, entrywise maximality and
// functoriality of the projection on the given instances. Maps for the
// functoriality check are derived deterministically from the seed.
ProjectionLawReport check_projection_laws(const ProjectionKind& kind,
                                          const std::vector<WeightSpace>& suite,
                                          int functoriality_maps = 0,
                                          unsigned seed = 1,
                                          double tol = kDefaultTol,
                                          double maximality_eps = 1e-6);

}  // namespace sievekit

#endif
