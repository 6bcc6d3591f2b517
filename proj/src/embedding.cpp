#include "proxemb/embedding.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "proxemb/csv.hpp"

namespace proxemb {

Embedding svd_embed(const DenseMatrix& s, int d) {
    if (d < 1)
        throw data_error("svd dimension must be >= 1, got " + std::to_string(d));
    Eigen::Index max_d = std::min(s.rows(), s.cols());
    if (d > max_d)
        throw data_error("svd dimension " + std::to_string(d) +
                         " exceeds matrix size " + std::to_string(max_d));
    Eigen::BDCSVD<DenseMatrix> svd(s, Eigen::ComputeThinU);
    DenseMatrix y(s.rows(), d);
    for (int j = 0; j < d; ++j) {
        Vector col = svd.matrixU().col(j);
        Eigen::Index argmax;
        col.cwiseAbs().maxCoeff(&argmax); // first index on exact ties
        if (col[argmax] < 0.0)
            col = -col;
        y.col(j) = col * std::sqrt(svd.singularValues()[j]);
    }
    return {std::move(y), EmbeddingKind::svd, ""};
}

Embedding cfs_embed(const DenseMatrix& s, int d, bool normalize) {
    if (d < 2 || d % 2 != 0)
        throw data_error("cfs dimension must be a positive even number, got " +
                         std::to_string(d));
    if (s.rows() != s.cols())
        throw data_error("cfs needs a square proximity matrix");
    Eigen::Index n = s.rows();
    if (n == 0)
        throw data_error("cfs needs a non-empty matrix");
    int half = d / 2;
    DenseMatrix y(n, d);
    double scale = normalize ? 1.0 / double(n) : 1.0;
    for (int j = 1; j <= half; ++j) {
        double t = 100.0 * double(j) / double(half);
        Eigen::ArrayXXd phase = t * s.array();
        // characteristic-function sums run down column u of s
        y.col(2 * (j - 1)) =
            phase.cos().colwise().sum().transpose().matrix() * scale;
        y.col(2 * (j - 1) + 1) =
            phase.sin().colwise().sum().transpose().matrix() * scale;
    }
    return {std::move(y), EmbeddingKind::cfs, ""};
}

Embedding diag_embed(const ProximityMatrix& s) {
    if (s.m.rows() != s.m.cols())
        throw data_error("diag embedding needs a square proximity matrix");
    return {s.m.diagonal(), EmbeddingKind::diag, ""};
}

Embedding multiscale_concat(const std::vector<Embedding>& blocks) {
    if (blocks.empty())
        throw data_error("multiscale concat needs at least one block");
    Eigen::Index rows = blocks[0].y.rows(), cols = 0;
    for (const auto& b : blocks) {
        if (b.kind != blocks[0].kind)
            throw data_error("multiscale concat mixes embedding kinds");
        if (b.y.rows() != rows)
            throw data_error("multiscale concat mixes row counts");
        cols += b.y.cols();
    }
    Embedding out{DenseMatrix(rows, cols), blocks[0].kind, ""};
    Eigen::Index at = 0;
    std::ostringstream prov;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        out.y.middleCols(at, blocks[i].y.cols()) = blocks[i].y;
        at += blocks[i].y.cols();
        prov << (i ? "|" : "") << blocks[i].provenance;
    }
    out.provenance = prov.str();
    return out;
}

namespace {

int scale_as_order(double scale, const std::string& what) {
    double r = std::round(scale);
    if (!(scale > 0.0) || std::abs(scale - r) > 1e-12)
        throw data_error(what + " takes positive integer scales, got " +
                         format_double(scale));
    return int(r);
}

} // namespace

ProximityMatrix pipeline_proximity(const Graph& g, const PipelineConfig& cfg,
                                   std::optional<double> scale) {
    switch (cfg.proximity) {
    case ProximityOp::ppmi:
        return ppmi(g,
                    scale ? scale_as_order(*scale, "ppmi window count")
                          : cfg.ppmi_T.value_or(10),
                    cfg.ppmi_b.value_or(1.0));
    case ProximityOp::heat:
        return heat_kernel(g, scale ? *scale : cfg.heat_s.value_or(0.1));
    case ProximityOp::fabp:
        if (scale)
            throw data_error(
                "fabp has no scale parameter; drop the scales list");
        if (cfg.fabp_heuristic) {
            auto p = fabp_default_params(g, cfg.fabp_c2);
            return fabp(g, p.a, p.c);
        }
        return fabp(g, cfg.fabp_a.value_or(1.0), cfg.fabp_c.value_or(0.01));
    case ProximityOp::ppr:
        return ppr(g, scale ? *scale : cfg.ppr_beta.value_or(0.01),
                   cfg.ppr_use_transition);
    case ProximityOp::lap_pinv:
        if (scale)
            throw data_error(
                "lap_pinv has no scale parameter; drop the scales list");
        return lap_pinv(g);
    case ProximityOp::adj_power:
        return adj_power(g, scale ? scale_as_order(*scale, "adjacency power")
                                  : cfg.power_k.value_or(2));
    case ProximityOp::rw_power:
        return rw_power(g, scale ? scale_as_order(*scale, "random-walk power")
                                 : cfg.power_k.value_or(2));
    }
    throw data_error("unhandled proximity operator");
}

namespace {

std::string block_provenance(const ProximityMatrix& p, const PipelineConfig& cfg) {
    std::ostringstream out;
    out << proximity_name(p.op);
    if (!p.params.empty()) {
        out << "(";
        for (std::size_t i = 0; i < p.params.size(); ++i)
            out << (i ? "," : "") << p.params[i].first << "="
                << format_double(p.params[i].second);
        out << ")";
    }
    out << "+" << filter_name(cfg.filter);
    if (cfg.filter == Filter::bin)
        out << format_double(cfg.filter_p);
    return out.str();
}

} // namespace

Embedding run_pipeline(const Graph& g, const PipelineConfig& cfg,
                       std::vector<std::string>* warnings) {
    std::vector<std::optional<double>> passes;
    if (cfg.scales.empty())
        passes.push_back(std::nullopt);
    else
        for (double s : cfg.scales)
            passes.emplace_back(s);

    std::vector<Embedding> blocks;
    blocks.reserve(passes.size());
    for (const auto& scale : passes) {
        ProximityMatrix prox = pipeline_proximity(g, cfg, scale);
        ProximityMatrix filtered = apply_filter(prox, cfg.filter, cfg.filter_p);
        Embedding block{{}, cfg.embedding, ""};
        switch (cfg.embedding) {
        case EmbeddingKind::svd: {
            int d = cfg.dim;
            if (d > g.n) {
                if (warnings)
                    warnings->push_back(
                        "svd dimension " + std::to_string(d) +
                        " clipped to node count " + std::to_string(g.n));
                d = g.n;
            }
            block = svd_embed(filtered.m, d);
            break;
        }
        case EmbeddingKind::cfs:
            block = cfs_embed(filtered.m, cfg.dim, cfg.cfs_normalize);
            break;
        case EmbeddingKind::diag:
            block = diag_embed(filtered);
            break;
        }
        block.provenance = block_provenance(prox, cfg);
        blocks.push_back(std::move(block));
    }
    return multiscale_concat(blocks);
}

} // namespace proxemb
