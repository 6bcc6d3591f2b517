#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "proxemb/graph.hpp"
#include "proxemb/graph_matrices.hpp"
#include "test_support.hpp"

using namespace proxemb;
using namespace testsup;

TEST_CASE("from_edges validates and canonicalizes") {
    Graph g = Graph::from_edges(3, {{2, 1}, {1, 0}});
    CHECK(g.edges[0] == std::array<int, 2>{0, 1});
    CHECK(g.edges[1] == std::array<int, 2>{1, 2});
    CHECK(g.weights == std::vector<double>{1.0, 1.0});

    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0}}), data_error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), data_error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}, {1, 0}}), data_error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}}, {0.0}), data_error);
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1}}, {1.0, 2.0}), data_error);
}

TEST_CASE("edge list loading") {
    SUBCASE("string ids numbered by first appearance") {
        write_file("tg_ids.edg", "alice bob\nbob carol # trailing comment\n"
                                 "# full comment line\n\ncarol alice\n");
        LoadResult r = load_edge_list("tg_ids.edg");
        CHECK(r.node_ids == std::vector<std::string>{"alice", "bob", "carol"});
        CHECK(r.graph.n == 3);
        CHECK(r.graph.edge_count() == 3);
        CHECK(r.self_loops_dropped == 0);
        CHECK(r.duplicates_dropped == 0);
    }

    SUBCASE("self loops and duplicates are dropped and counted") {
        write_file("tg_dups.edg", "0 1\n1 1\n1 0\n0 1\n1 2\n");
        LoadResult r = load_edge_list("tg_dups.edg");
        CHECK(r.graph.edge_count() == 2);
        CHECK(r.self_loops_dropped == 1);
        CHECK(r.duplicates_dropped == 2);
    }

    SUBCASE("weighted lines keep the first weight seen") {
        write_file("tg_w.edg", "0 1 2.5\n1 2\n0 1 9.0\n");
        LoadResult r = load_edge_list("tg_w.edg", true);
        CHECK(r.graph.weights[0] == 2.5); // (0,1) sorts first
        CHECK(r.graph.weights[1] == 1.0); // missing weight defaults to 1
        CHECK(r.duplicates_dropped == 1);
    }

    SUBCASE("errors carry the line number") {
        write_file("tg_bad.edg", "0 1\n0 1 7\n");
        CHECK_THROWS_WITH_AS(load_edge_list("tg_bad.edg"),
                             doctest::Contains("tg_bad.edg:2"), data_error);
        write_file("tg_badw.edg", "0 1 1.0\n1 2 oops\n");
        CHECK_THROWS_WITH_AS(load_edge_list("tg_badw.edg", true),
                             doctest::Contains(":2"), data_error);
        write_file("tg_negw.edg", "0 1 -3\n");
        CHECK_THROWS_AS(load_edge_list("tg_negw.edg", true), data_error);
        CHECK_THROWS_AS(load_edge_list("tg_missing_file.edg"), data_error);
    }
}

TEST_CASE("adjacency, degree, laplacian on small fixtures") {
    Graph p3 = path3();
    DenseMatrix a = adjacency(p3);
    CHECK(a(0, 1) == 1.0);
    CHECK(a(1, 0) == 1.0);
    CHECK(a(0, 2) == 0.0);
    CHECK(a.trace() == 0.0);

    DenseMatrix l = laplacian(p3);
    CHECK(l(0, 0) == 1.0);
    CHECK(l(1, 1) == 2.0);
    CHECK(l(0, 1) == -1.0);
    CHECK(l.rowwise().sum().cwiseAbs().maxCoeff() == 0.0);

    // weighted single edge: degrees pick up the weight
    Graph w = Graph::from_edges(2, {{0, 1}}, {2.0});
    DenseMatrix d = degree_matrix(w);
    CHECK(d(0, 0) == 2.0);
    CHECK(d(1, 1) == 2.0);
    CHECK(laplacian(w)(0, 1) == -2.0);
}

TEST_CASE("random-walk transition") {
    DenseMatrix r = rw_transition(path3());
    CHECK(r(0, 1) == 1.0);
    CHECK(r(1, 0) == 0.5);
    CHECK(r(1, 2) == 0.5);
    CHECK((r.rowwise().sum().array() - 1.0).abs().maxCoeff() < 1e-15);

    Graph iso = Graph::from_edges(3, {{0, 1}}); // node 2 isolated
    CHECK_THROWS_WITH_AS(rw_transition(iso), doctest::Contains("node 2"),
                         data_error);
}

TEST_CASE("symmetric eigendecomposition") {
    // path-3 laplacian spectrum is exactly {0, 1, 3}
    auto eig = symmetric_eig(laplacian(path3()));
    CHECK(std::abs(eig.values[0]) < 1e-12);
    CHECK(eig.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig.values[2] == doctest::Approx(3.0).epsilon(1e-12));

    // reconstruction and orthonormality on a random symmetric matrix
    rng gen(7);
    DenseMatrix m(12, 12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j <= i; ++j)
            m(i, j) = m(j, i) = gen.next_unit() - 0.5;
    auto e = symmetric_eig(m);
    DenseMatrix back =
        e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    CHECK(max_abs(back - m) < 1e-12);
    CHECK(max_abs(e.vectors.transpose() * e.vectors -
                  DenseMatrix::Identity(12, 12)) < 1e-12);

    DenseMatrix bad(2, 2);
    bad << 0.0, 1.0, 1.5, 0.0;
    CHECK_THROWS_WITH_AS(symmetric_eig(bad), doctest::Contains("0.5"),
                         data_error);
}

TEST_CASE("laplacian pseudoinverse") {
    // triangle: L+ = (1/9)(3I - J)
    DenseMatrix pinv = laplacian_pinv(triangle());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(pinv(i, j) ==
                  doctest::Approx(i == j ? 2.0 / 9 : -1.0 / 9).epsilon(1e-12));

    // penrose axioms on random graphs, including a disconnected one
    for (std::uint64_t seed : {1, 2, 3}) {
        Graph g = random_connected(10, 0.2, seed);
        if (seed == 3)
            g = disjoint_union(g, random_connected(6, 0.3, seed + 10));
        DenseMatrix l = laplacian(g);
        DenseMatrix lp = laplacian_pinv(g);
        CHECK(max_abs(l * lp * l - l) < 1e-6);
        CHECK(max_abs(lp * l * lp - lp) < 1e-6);
        CHECK(max_abs((l * lp).transpose() - l * lp) < 1e-6);
        CHECK(max_abs(lp - lp.transpose()) < 1e-12);
    }
}

TEST_CASE("matrix builders are permutation equivariant") {
    Graph g = random_connected(9, 0.3, 42);
    auto perm = random_permutation(9, 5);
    Graph gp = permute(g, perm);
    DenseMatrix p = perm_matrix(perm);
    CHECK(max_abs(adjacency(gp) - p * adjacency(g) * p.transpose()) == 0.0);
    CHECK(max_abs(laplacian(gp) - p * laplacian(g) * p.transpose()) == 0.0);
    CHECK(max_abs(rw_transition(gp) - p * rw_transition(g) * p.transpose()) <
          1e-15);
}
