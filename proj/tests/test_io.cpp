#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sievekit/io.hpp"
#include "sievekit/projections.hpp"

using namespace sievekit;

namespace {

WeightSpace random_weights(std::mt19937_64& rng, int n) {
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
    WeightSpace u = WeightSpace::zero(pts);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            u.set(i, j, Num(Rational{BigInt(1 + static_cast<int>(rng() % 30)),
                                     BigInt(1 + static_cast<int>(rng() % 4))}));
    return u;
}

}  // namespace

TEST_CASE("csv parsing reads labels and exact tokens") {
    WeightSpace u = io::parse_matrix_csv("a,b\n0,4/3\n4/3,0\n");
    CHECK(u.points() == std::vector<std::string>{"a", "b"});
    CHECK(u.at(0, 1) == Num::parse("4/3"));
    CHECK(u.is_exact());

    WeightSpace v = io::parse_matrix_csv("x,y\n0, 1.5\n1.5 ,0\n");
    CHECK(v.at(0, 1) == Num::parse("3/2"));
}

TEST_CASE("csv parse errors carry positions") {
    CHECK_THROWS_WITH_AS(io::parse_matrix_csv("a,b\n0,1\n1\n"),
                         doctest::Contains("row 3"), parse_error);
    CHECK_THROWS_WITH_AS(io::parse_matrix_csv("a,b\n0,zzz\nzzz,0\n"),
                         doctest::Contains("column 2"), parse_error);
    CHECK_THROWS_AS(io::parse_matrix_csv(""), parse_error);
    CHECK_THROWS_AS(io::parse_matrix_csv("a,b\n0,1\n"), parse_error);
}

TEST_CASE("json parsing accepts numbers and exact strings") {
    WeightSpace u = io::parse_matrix_json(
        R"({"labels":["a","b"],"matrix":[[0,"4/3"],["4/3",0]]})");
    CHECK(u.at(0, 1) == Num::parse("4/3"));
    CHECK(u.is_exact());
    CHECK_THROWS_AS(io::parse_matrix_json("{"), parse_error);
    CHECK_THROWS_AS(io::parse_matrix_json(R"({"labels":["a"]})"), parse_error);
    CHECK_THROWS_AS(io::parse_matrix_json(R"({"labels":["a","b"],"matrix":[[0,[]],[0,0]]})"),
                    parse_error);
}

TEST_CASE("matrix round trips are identities") {
    std::mt19937_64 rng(197);
    for (int t = 0; t < 40; ++t) {
        WeightSpace u = random_weights(rng, 1 + static_cast<int>(rng() % 6));
        CHECK(io::parse_matrix_csv(io::emit_matrix_csv(u)) == u);
        CHECK(io::parse_matrix_json(io::emit_matrix_json(u)) == u);
    }
}

TEST_CASE("validation failures pass through the parser") {
    CHECK_THROWS_AS(io::parse_matrix_csv("a,b\n0,1\n2,0\n"), validation_error);
}

TEST_CASE("sieve documents round trip") {
    std::mt19937_64 rng(199);
    for (int t = 0; t < 30; ++t) {
        WeightSpace u = random_weights(rng, 2 + static_cast<int>(rng() % 5));
        Sieve s = rips_sieve(u);
        CHECK(io::parse_sieve(io::emit_sieve(s)) == s);
        Sieve c = cech_sieve(u);
        CHECK(io::parse_sieve(io::emit_sieve(c)) == c);
    }
}

TEST_CASE("emission is deterministic") {
    std::mt19937_64 rng(211);
    WeightSpace u = random_weights(rng, 5);
    CHECK(io::emit_matrix_json(u) == io::emit_matrix_json(u));
    CHECK(io::emit_sieve(rips_sieve(u)) == io::emit_sieve(rips_sieve(u)));
    CHECK(io::sieve_dot(sl_sieve(u)) == io::sieve_dot(sl_sieve(u)));
}

TEST_CASE("partition sieves render as dendrograms, overlapping ones as layers") {
    WeightSpace u = WeightSpace::zero({"a", "b", "c"});
    u.set(0, 1, Num(1));
    u.set(1, 2, Num(2));
    u.set(0, 2, Num(3));
    std::string tree = io::sieve_dot(sl_sieve(u));
    CHECK(tree.find("dendrogram") != std::string::npos);
    std::string layered = io::sieve_dot(rips_sieve(u));
    CHECK(layered.find("layered cover diagram") != std::string::npos);
    // The overlap level shows b in two blocks.
    CHECK(layered.find("{a,b}") != std::string::npos);
    CHECK(layered.find("{b,c}") != std::string::npos);

    // A dendrogram must stay a tree: one outgoing edge per non-final node.
    int edges = 0, nonfinal_nodes = 0;
    Sieve s = sl_sieve(u);
    for (int lvl = 0; lvl + 1 < s.levels(); ++lvl)
        nonfinal_nodes += static_cast<int>(s.covers()[static_cast<std::size_t>(lvl)].blocks().size());
    for (std::size_t pos = tree.find("->"); pos != std::string::npos;
         pos = tree.find("->", pos + 1))
        ++edges;
    CHECK(edges == nonfinal_nodes);
}

TEST_CASE("tight span report serializes with root and skeleton") {
    WeightSpace d = io::parse_matrix_csv("1,2\n0,1\n1,0\n");
    TightSpanReport rep = tight_span_vertices(d);
    std::string json = io::emit_tight_span(rep);
    CHECK(json.find("\"has_root\": true") != std::string::npos);
    std::string dot = io::tight_span_dot(rep);
    CHECK(dot.find("e(1)") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);
}

TEST_CASE("num tokens stay canonical") {
    CHECK(io::num_token(Num::parse("4/3")) == "4/3");
    CHECK(io::num_token(Num::parse("1.5")) == "3/2");
    CHECK(io::num_token(Num(7)) == "7");
    CHECK(io::num_token(Num(0.5)) == "0.5");
}
