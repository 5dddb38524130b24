#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sievekit/kernels.hpp"
#include "sievekit/projections.hpp"

using namespace sievekit;

namespace {

WeightSpace triangle(const char* ab, const char* bc, const char* ac) {
    WeightSpace u = WeightSpace::zero({"a", "b", "c"});
    u.set(0, 1, Num::parse(ab));
    u.set(1, 2, Num::parse(bc));
    u.set(0, 2, Num::parse(ac));
    return u;
}

WeightSpace random_weights(std::mt19937_64& rng, int n, bool exact = true) {
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
    WeightSpace u = WeightSpace::zero(pts);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (exact)
                u.set(i, j, Num(Rational{BigInt(1 + static_cast<int>(rng() % 24)),
                                         BigInt(1 + static_cast<int>(rng() % 3))}));
            else
                u.set(i, j, Num(0.25 + static_cast<double>(rng() % 1000) / 100.0));
        }
    return u;
}

WeightSpace random_metric(std::mt19937_64& rng, int n) {
    return project(random_weights(rng, n), ProjectionKind::path_metric());
}

}  // namespace

TEST_CASE("ultrametric projection of the 1-2-3 triangle") {
    WeightSpace p = project(triangle("1", "2", "3"), ProjectionKind::ultrametric());
    CHECK(p.at(0, 1) == Num(1));
    CHECK(p.at(1, 2) == Num(2));
    CHECK(p.at(0, 2) == Num(2));
}

TEST_CASE("path metric projection shortcuts the long edge") {
    WeightSpace p = project(triangle("1", "1", "5"), ProjectionKind::path_metric());
    CHECK(p.at(0, 1) == Num(1));
    CHECK(p.at(1, 2) == Num(1));
    CHECK(p.at(0, 2) == Num(2));
}

TEST_CASE("q=2 projection uses the two-norm of the best path") {
    WeightSpace p = project(triangle("1", "2", "3"), ProjectionKind::q_metric(2.0));
    CHECK(p.at(0, 2).to_double() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(p.at(0, 1).to_double() == doctest::Approx(1.0));
    CHECK(p.at(1, 2).to_double() == doctest::Approx(2.0));
}

TEST_CASE("a-space projection of the 3-4-5 triangle lowers the diameter once") {
    WeightSpace p = project(triangle("3", "4", "5"), ProjectionKind::a_space());
    CHECK(p.at(0, 1) == Num(3));
    CHECK(p.at(1, 2) == Num(4));
    CHECK(p.at(0, 2) == Num(4));
    CHECK(satisfies(p, DomainPredicate::a_space()));
}

TEST_CASE("quotient projection zeroes the class then takes shortest paths") {
    WeightSpace u = WeightSpace::zero({"a", "b", "c"});
    u.set(0, 1, Num(2));   // ab
    u.set(0, 2, Num(1));   // ac
    u.set(1, 2, Num(3));   // bc
    WeightSpace p = project(u, ProjectionKind::quotient({{"a", "b"}, {"c"}}));
    CHECK(p.at(0, 1) == Num(0));
    CHECK(p.at(0, 2) == Num(1));
    CHECK(p.at(1, 2) == Num(1));
}

TEST_CASE("integer discretization floors then restores the triangle inequality") {
    WeightSpace u = triangle("3/2", "3/2", "5/2");
    auto grid = integer_grid_for(u);
    WeightSpace floored = project(u, ProjectionKind::discretize(grid, false));
    CHECK(floored.at(0, 1) == Num(1));
    CHECK(floored.at(1, 2) == Num(1));
    CHECK(floored.at(0, 2) == Num(2));
    WeightSpace metric = project(u, ProjectionKind::discretize(grid, true));
    CHECK(metric.at(0, 2) == Num(2));
    CHECK(satisfies(metric, DomainPredicate::metric()));
}

TEST_CASE("floor-then-path can differ from path-then-floor") {
    WeightSpace u = triangle("3/2", "3/2", "4");
    auto grid = integer_grid_for(u);
    WeightSpace a = project(u, ProjectionKind::discretize(grid, true));
    WeightSpace b = project(project(u, ProjectionKind::path_metric()),
                            ProjectionKind::discretize(grid, false));
    CHECK(a.at(0, 2) == Num(2));  // floor first: 1+1
    CHECK(b.at(0, 2) == Num(3));  // path first: 3/2+3/2 = 3, already integral
    CHECK(a != b);
}

TEST_CASE("split formula oracle on the triangle") {
    WeightSpace u = triangle("1", "2", "3");
    CHECK(ultrametric_by_splits(u, 0, 2) == Num(2));
    CHECK(ultrametric_by_splits(u, 0, 1) == Num(1));
    WeightSpace two = WeightSpace::zero({"1", "2"});
    two.set(0, 1, Num::parse("7/3"));
    CHECK(ultrametric_by_splits(two, 0, 1) == Num::parse("7/3"));
}

TEST_CASE("three routes to the maximal ultrametric agree") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 120; ++t) {
        int n = 2 + static_cast<int>(rng() % 6);
        WeightSpace u = random_weights(rng, n, t % 2 == 0);
        WeightSpace p = project(u, ProjectionKind::ultrametric());
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (u.is_exact()) {
                    CHECK(p.at(i, j) == ultrametric_by_splits(u, i, j));
                    CHECK(p.at(i, j) == minimax_path(u, i, j));
                } else {
                    CHECK(p.at(i, j).to_double() ==
                          doctest::Approx(ultrametric_by_splits(u, i, j).to_double())
                              .epsilon(1e-12));
                    CHECK(p.at(i, j).to_double() ==
                          doctest::Approx(minimax_path(u, i, j).to_double()).epsilon(1e-12));
                }
            }
    }
}

TEST_CASE("minimax path on the chain metric is one everywhere") {
    WeightSpace chain = WeightSpace::zero({"1", "2", "3", "4"});
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) chain.set(i, j, Num(j - i));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) CHECK(minimax_path(chain, i, j) == Num(1));
}

TEST_CASE("q-metric infinity equals the ultrametric projection") {
    std::mt19937_64 rng(103);
    for (int t = 0; t < 40; ++t) {
        WeightSpace u = random_weights(rng, 2 + static_cast<int>(rng() % 5));
        CHECK(project(u, ProjectionKind::q_metric_infinity()) ==
              project(u, ProjectionKind::ultrametric()));
        CHECK(project(u, ProjectionKind::q_metric(1.0)) ==
              project(u, ProjectionKind::path_metric()));
    }
}

TEST_CASE("q-metric projections decrease pointwise as q grows") {
    std::mt19937_64 rng(107);
    const double qs[] = {1.0, 1.5, 2.0, 4.0};
    for (int t = 0; t < 40; ++t) {
        WeightSpace u = random_weights(rng, 2 + static_cast<int>(rng() % 5), false);
        std::vector<WeightSpace> projs;
        for (double q : qs) projs.push_back(project(u, ProjectionKind::q_metric(q)));
        projs.push_back(project(u, ProjectionKind::q_metric_infinity()));
        for (std::size_t k = 0; k + 1 < projs.size(); ++k)
            for (int i = 0; i < u.size(); ++i)
                for (int j = i + 1; j < u.size(); ++j)
                    CHECK(projs[k + 1].at(i, j).to_double() <=
                          projs[k].at(i, j).to_double() + 1e-9);
    }
}

TEST_CASE("rho repair: rho=1 recovers the ultrametric projection") {
    std::mt19937_64 rng(109);
    for (int t = 0; t < 60; ++t) {
        WeightSpace u = random_weights(rng, 2 + static_cast<int>(rng() % 5));
        CHECK(project_rho_inframetric(u, Num(1)) == project(u, ProjectionKind::ultrametric()));
    }
}

TEST_CASE("rho repair fixes inframetrics and repairs the 1-1-3 triangle") {
    WeightSpace u = triangle("1", "1", "3");
    WeightSpace p = project_rho_inframetric(u, Num(2));
    CHECK(p.at(0, 2) == Num(2));
    CHECK(p.at(0, 1) == Num(1));
    CHECK(satisfies(p, DomainPredicate::rho_inframetric(Num(2))));
    CHECK(project_rho_inframetric(p, Num(2)) == p);

    WeightSpace ok = triangle("1", "1", "2");
    CHECK(project_rho_inframetric(ok, Num(2)) == ok);
}

TEST_CASE("intersection of discretize and path converges in two rounds") {
    WeightSpace u = WeightSpace::zero({"a", "b", "c"});
    u.set(0, 1, Num(1.5));
    u.set(1, 2, Num(1.5));
    u.set(0, 2, Num(2.5));
    auto grid = integer_grid_for(u);
    IntersectionResult r = project_intersection(
        u, {ProjectionKind::discretize(grid, false), ProjectionKind::path_metric()}, 1e-9, 50);
    CHECK(r.converged);
    CHECK(r.rounds <= 2);
    WeightSpace recipe = project(u, ProjectionKind::discretize(grid, true));
    CHECK(r.result == recipe);
}

TEST_CASE("intersection of a single projection is that projection") {
    std::mt19937_64 rng(113);
    WeightSpace u = random_weights(rng, 5);
    IntersectionResult r = project_intersection(u, {ProjectionKind::ultrametric()}, 1e-9, 10);
    CHECK(r.converged);
    CHECK(r.result == project(u, ProjectionKind::ultrametric()));
}

TEST_CASE("intersecting ultrametric with path metric is just the ultrametric projection") {
    std::mt19937_64 rng(127);
    for (int t = 0; t < 30; ++t) {
        WeightSpace u = random_weights(rng, 2 + static_cast<int>(rng() % 5));
        IntersectionResult r = project_intersection(
            u, {ProjectionKind::ultrametric(), ProjectionKind::path_metric()}, 1e-9, 10);
        CHECK(r.converged);
        CHECK(r.result == project(u, ProjectionKind::ultrametric()));
    }
}

TEST_CASE("a-space projection laws on random inputs") {
    std::mt19937_64 rng(131);
    for (int t = 0; t < 60; ++t) {
        WeightSpace u = random_metric(rng, 2 + static_cast<int>(rng() % 5));
        WeightSpace p = project(u, ProjectionKind::a_space());
        CHECK(satisfies(p, DomainPredicate::a_space()));
        CHECK(leq(p, u));
        CHECK(project(p, ProjectionKind::a_space()) == p);
    }
}

TEST_CASE("ultrametrics are fixed by the a-space projection") {
    std::mt19937_64 rng(137);
    for (int t = 0; t < 40; ++t) {
        WeightSpace u = project(random_weights(rng, 2 + static_cast<int>(rng() % 5)),
                                ProjectionKind::ultrametric());
        CHECK(project(u, ProjectionKind::a_space()) == u);
    }
}

TEST_CASE("projection law checker passes for every kind") {
    std::mt19937_64 rng(139);
    std::vector<WeightSpace> suite;
    for (int t = 0; t < 40; ++t) suite.push_back(random_weights(rng, 2 + (t % 5), false));

    auto grid = std::vector<Num>{Num(1), Num(2), Num(3), Num(4), Num(5), Num(6), Num(7), Num(8),
                                 Num(9), Num(10), Num(11), Num(12), Num(13)};
    std::vector<ProjectionKind> kinds = {
        ProjectionKind::ultrametric(),
        ProjectionKind::path_metric(),
        ProjectionKind::q_metric(2.0),
        ProjectionKind::discretize(grid, true),
        ProjectionKind::rho_inframetric(Num::parse("3/2")),
        ProjectionKind::a_space(),
        ProjectionKind::intersection({ProjectionKind::discretize(grid, false),
                                      ProjectionKind::path_metric()},
                                     1e-9, 50),
    };
    for (const auto& kind : kinds) {
        ProjectionLawReport rep = check_projection_laws(kind, suite, 25, 7);
        if (!rep.all_pass())
            for (const auto& v : rep.violations) MESSAGE(v.law << ": " << v.detail);
        CHECK(rep.all_pass());
    }

    // Quotient needs a shared point set.
    std::vector<WeightSpace> fixed;
    for (int t = 0; t < 30; ++t) fixed.push_back(random_weights(rng, 5, false));
    ProjectionLawReport rep = check_projection_laws(
        ProjectionKind::quotient({{"p0", "p1"}, {"p2"}, {"p3", "p4"}}), fixed, 0, 11);
    CHECK(rep.all_pass());
}

TEST_CASE("identity-style projection trivially passes the law checker") {
    std::mt19937_64 rng(149);
    std::vector<WeightSpace> suite;
    for (int t = 0; t < 20; ++t)
        suite.push_back(project(random_weights(rng, 4), ProjectionKind::path_metric()));
    // Path metric fixes metrics, so this suite is all fixed points.
    ProjectionLawReport rep = check_projection_laws(ProjectionKind::path_metric(), suite, 10, 3);
    CHECK(rep.all_pass());
    for (const auto& u : suite) CHECK(project(u, ProjectionKind::path_metric()) == u);
}

TEST_CASE("quotient commutes with the ultrametric projection through the quotient set") {
    std::mt19937_64 rng(151);
    for (int t = 0; t < 50; ++t) {
        int m = 2 + static_cast<int>(rng() % 3);  // quotient set size
        int n = m + static_cast<int>(rng() % 3);  // total points
        WeightSpace v = random_metric(rng, m);
        std::vector<std::string> xs;
        for (int i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i));
        std::vector<int> assign(static_cast<std::size_t>(n));
        for (int i = 0; i < m; ++i) assign[static_cast<std::size_t>(i)] = i;  // surjective
        for (int i = m; i < n; ++i)
            assign[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<unsigned>(m));
        SetMap pi(xs, v.points(), assign);
        WeightSpace w = pullback(pi, v);

        std::vector<std::vector<std::string>> classes(static_cast<std::size_t>(m));
        for (int i = 0; i < n; ++i)
            classes[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])].push_back(
                xs[static_cast<std::size_t>(i)]);

        WeightSpace project_then_quotient = project(
            project(w, ProjectionKind::ultrametric()), ProjectionKind::quotient(classes));
        WeightSpace quotient_then_project =
            pullback(pi, project(v, ProjectionKind::ultrametric()));
        CHECK(project_then_quotient == quotient_then_project);
    }
}

TEST_CASE("projected results are identical across kernel backends") {
    std::mt19937_64 rng(241);
    std::vector<std::string> pts;
    for (int i = 0; i < 60; ++i) pts.push_back("n" + std::to_string(i));
    WeightSpace u = WeightSpace::zero(pts);
    for (int i = 0; i < 60; ++i)
        for (int j = i + 1; j < 60; ++j)
            u.set(i, j, Num(0.5 + static_cast<double>(rng() % 4096) / 64.0));

    auto original = kernels::active_backend();
    kernels::force_backend(kernels::Backend::scalar);
    WeightSpace path_scalar = project(u, ProjectionKind::path_metric());
    WeightSpace ult_scalar = project(u, ProjectionKind::ultrametric());
    kernels::force_backend(kernels::Backend::avx2);
    WeightSpace path_simd = project(u, ProjectionKind::path_metric());
    WeightSpace ult_simd = project(u, ProjectionKind::ultrametric());
    kernels::force_backend(original);

    CHECK(path_scalar == path_simd);
    CHECK(ult_scalar == ult_simd);
    CHECK(satisfies(path_scalar, DomainPredicate::metric()));
    CHECK(satisfies(ult_scalar, DomainPredicate::ultrametric()));
}

TEST_CASE("non-convergence surfaces the last iterate") {
    WeightSpace u = triangle("1", "2", "3");
    // One round can never stabilize a fresh input unless it is already fixed;
    // with max_iter=0 the loop cannot even run once.
    IntersectionResult r =
        project_intersection(u, {ProjectionKind::ultrametric()}, 1e-9, 0);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(
        project(u, ProjectionKind::intersection({ProjectionKind::ultrametric()}, 1e-9, 0)),
        convergence_error);
}
