#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "proxemb/embedding.hpp"
#include "test_support.hpp"

using namespace proxemb;
using namespace testsup;

TEST_CASE("svd embedding of a diagonal matrix") {
    DenseMatrix s = DenseMatrix::Zero(2, 2);
    s(0, 0) = 3.0;
    s(1, 1) = 1.0;
    Embedding e1 = svd_embed(s, 1);
    CHECK(e1.y(0, 0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(std::abs(e1.y(1, 0)) < 1e-12);

    Embedding e2 = svd_embed(s, 2);
    CHECK(e2.y(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(e2.y(0, 1)) < 1e-12);

    CHECK_THROWS_AS(svd_embed(s, 3), data_error);
    CHECK_THROWS_AS(svd_embed(s, 0), data_error);
}

TEST_CASE("svd gram matrix recovers a psd input at full width") {
    rng gen(4);
    DenseMatrix b(8, 8);
    for (int i = 0; i < 64; ++i)
        b(i / 8, i % 8) = gen.next_unit() - 0.5;
    DenseMatrix s = b * b.transpose();
    Embedding e = svd_embed(s, 8);
    CHECK(max_abs(e.y * e.y.transpose() - s) < 1e-6 * max_abs(s));
}

TEST_CASE("svd sign convention pins the factor") {
    // the dominant entry of each left singular vector is positive
    rng gen(6);
    DenseMatrix s(7, 7);
    for (int i = 0; i < 49; ++i)
        s(i / 7, i % 7) = gen.next_unit();
    Embedding e = svd_embed(s, 5);
    for (int j = 0; j < 5; ++j) {
        Eigen::Index arg;
        e.y.col(j).cwiseAbs().maxCoeff(&arg);
        CHECK(e.y(arg, j) > 0.0);
    }
    // byte-identical across repeat runs
    Embedding e2 = svd_embed(s, 5);
    CHECK((e.y.array() == e2.y.array()).all());
}

TEST_CASE("cfs embedding basics") {
    // identity, n=2, d=2: single landmark t=100, both rows equal
    DenseMatrix id = DenseMatrix::Identity(2, 2);
    Embedding e = cfs_embed(id, 2);
    CHECK(e.y(0, 0) == doctest::Approx(0.931159436143842).epsilon(1e-14));
    CHECK(e.y(0, 1) == doctest::Approx(-0.2531828205548794).epsilon(1e-14));
    CHECK(e.y.row(0) == e.y.row(1));

    CHECK_THROWS_AS(cfs_embed(id, 3), data_error);
    CHECK_THROWS_AS(cfs_embed(id, 0), data_error);
    CHECK_THROWS_AS(cfs_embed(DenseMatrix::Zero(2, 3), 2), data_error);
}

TEST_CASE("cfs reads columns, not rows") {
    DenseMatrix s = DenseMatrix::Zero(2, 2);
    s(0, 1) = 1.0; // column 0 is all zero, column 1 holds {1, 0}
    Embedding e = cfs_embed(s, 2); // t = 100
    CHECK(e.y(0, 0) == 1.0); // cos sums over the zero column: (1 + 1) / 2
    CHECK(e.y(0, 1) == 0.0);
    CHECK(e.y(1, 0) ==
          doctest::Approx((std::cos(100.0) + 1.0) / 2).epsilon(1e-14));
    CHECK(e.y(1, 1) == doctest::Approx(std::sin(100.0) / 2).epsilon(1e-14));
}

TEST_CASE("cfs bounds and normalization flag") {
    rng gen(8);
    DenseMatrix s(9, 9);
    for (int i = 0; i < 81; ++i)
        s(i / 9, i % 9) = 4.0 * gen.next_unit() - 2.0;
    Embedding norm = cfs_embed(s, 10, true);
    CHECK(norm.y.cwiseAbs().maxCoeff() <= 1.0 + 1e-12);
    Embedding raw = cfs_embed(s, 10, false);
    CHECK(max_abs(raw.y - 9.0 * norm.y) < 1e-12);

    // a constant proximity matrix gives every node the same row
    Embedding c = cfs_embed(DenseMatrix::Constant(5, 5, 0.7), 6);
    for (int i = 1; i < 5; ++i)
        CHECK(max_abs(c.y.row(i) - c.y.row(0)) == 0.0);
}

TEST_CASE("diag embedding extracts the diagonal") {
    ProximityMatrix a2 = adj_power(path3(), 2);
    Embedding e = diag_embed(a2);
    CHECK(e.y.cols() == 1);
    CHECK(e.y(0, 0) == 1.0);
    CHECK(e.y(1, 0) == 2.0);
    CHECK(e.y(2, 0) == 1.0);
}

TEST_CASE("multiscale concatenation") {
    DenseMatrix s = DenseMatrix::Identity(4, 4);
    Embedding a = cfs_embed(s, 4);
    Embedding b = cfs_embed(2.0 * s, 6);
    Embedding cat = multiscale_concat({a, b});
    CHECK(cat.y.cols() == 10);
    CHECK(max_abs(cat.y.leftCols(4) - a.y) == 0.0);
    CHECK(max_abs(cat.y.rightCols(6) - b.y) == 0.0);

    Embedding sv = svd_embed(s, 2);
    CHECK_THROWS_AS(multiscale_concat({a, sv}), data_error);
    CHECK_THROWS_AS(multiscale_concat({a, cfs_embed(DenseMatrix::Identity(3, 3), 4)}),
                    data_error);
    CHECK_THROWS_AS(multiscale_concat({}), data_error);
}

TEST_CASE("pipeline composes the three steps") {
    PipelineConfig cfg;
    cfg.proximity = ProximityOp::heat;
    cfg.heat_s = 0.7;
    cfg.filter = Filter::log;
    cfg.embedding = EmbeddingKind::cfs;
    cfg.dim = 8;
    Embedding got = run_pipeline(triangle(), cfg);
    DenseMatrix manual =
        cfs_embed(log_general(heat_kernel(triangle(), 0.7).m), 8).y;
    CHECK(max_abs(got.y - manual) == 0.0);
    CHECK(got.provenance == "heat(s=0.7)+log");
}

TEST_CASE("pipeline clips svd width to the node count with a warning") {
    PipelineConfig cfg;
    cfg.proximity = ProximityOp::ppmi;
    cfg.filter = Filter::log;
    cfg.embedding = EmbeddingKind::svd;
    cfg.dim = 128;
    std::vector<std::string> warnings;
    Embedding e = run_pipeline(path3(), cfg, &warnings);
    CHECK(e.y.rows() == 3);
    CHECK(e.y.cols() == 3);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("clipped") != std::string::npos);
}

TEST_CASE("scales run the pipeline once per value and concatenate") {
    PipelineConfig cfg;
    cfg.proximity = ProximityOp::rw_power;
    cfg.embedding = EmbeddingKind::cfs;
    cfg.dim = 4;
    cfg.scales = {1.0, 2.0, 3.0};
    Embedding e = run_pipeline(path3(), cfg);
    CHECK(e.y.cols() == 12);
    DenseMatrix first = cfs_embed(rw_power(path3(), 1).m, 4).y;
    CHECK(max_abs(e.y.leftCols(4) - first) == 0.0);
    CHECK(e.provenance ==
          "rw_power(k=1)+identity|rw_power(k=2)+identity|rw_power(k=3)+identity");

    SUBCASE("power scales must be integers") {
        cfg.scales = {1.5};
        CHECK_THROWS_AS(run_pipeline(path3(), cfg), data_error);
    }

    SUBCASE("operators without a scalar reject scale lists") {
        cfg.scales = {1.0, 2.0};
        cfg.proximity = ProximityOp::fabp;
        CHECK_THROWS_AS(run_pipeline(triangle(), cfg), data_error);
        cfg.proximity = ProximityOp::lap_pinv;
        CHECK_THROWS_AS(run_pipeline(triangle(), cfg), data_error);
    }
}

TEST_CASE("structurally equivalent nodes get equal cfs rows") {
    // two disjoint copies of one graph: node i and its copy i+n are
    // automorphic images, cfs cannot tell them apart
    Graph g = random_connected(7, 0.3, 40);
    Graph gg = disjoint_union(g, g);
    PipelineConfig cfg;
    cfg.proximity = ProximityOp::adj_power;
    cfg.power_k = 2;
    cfg.embedding = EmbeddingKind::cfs;
    cfg.dim = 8;
    Embedding e = run_pipeline(gg, cfg);
    for (int i = 0; i < 7; ++i)
        CHECK(max_abs(e.y.row(i) - e.y.row(i + 7)) < 1e-12);

    // the svd factor, by contrast, separates the two copies somewhere
    cfg.embedding = EmbeddingKind::svd;
    cfg.dim = 14;
    Embedding sv = run_pipeline(gg, cfg);
    double gap = 0.0;
    for (int i = 0; i < 7; ++i)
        gap = std::max(gap, max_abs(sv.y.row(i) - sv.y.row(i + 7)));
    CHECK(gap > 1e-3);
}

TEST_CASE("pipeline output is deterministic") {
    Graph g = random_connected(12, 0.25, 50);
    PipelineConfig cfg;
    cfg.proximity = ProximityOp::ppmi;
    cfg.filter = Filter::log;
    cfg.embedding = EmbeddingKind::svd;
    cfg.dim = 12;
    Embedding a = run_pipeline(g, cfg);
    Embedding b = run_pipeline(g, cfg);
    CHECK((a.y.array() == b.y.array()).all());
}
