#include "proxemb/graph_features.hpp"

#include "proxemb/csv.hpp"
#include "proxemb/graph_matrices.hpp"

namespace proxemb {

Vector aggregate_mean(const Embedding& e) {
    if (e.y.rows() == 0)
        throw data_error("cannot mean-pool an empty embedding");
    return e.y.colwise().mean().transpose();
}

Vector netlsd_features(const Graph& g, const std::vector<double>& scales) {
    if (scales.empty())
        throw data_error("heat-trace signature needs at least one scale");
    for (double s : scales)
        if (!(s > 0.0))
            throw data_error("heat-trace scale must be positive, got " +
                             format_double(s));
    auto eig = symmetric_eig(laplacian(g));
    Vector out(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i)
        out[i] = (-scales[i] * eig.values.array()).exp().sum() / double(g.n);
    return out;
}

Vector retgk_features(const Graph& g, int max_k) {
    if (max_k < 1)
        throw data_error("return-probability order must be >= 1, got " +
                         std::to_string(max_k));
    DenseMatrix r = rw_transition(g);
    DenseMatrix p = r;
    Vector out(max_k);
    out[0] = p.trace() / double(g.n);
    for (int k = 2; k <= max_k; ++k) {
        p = p * r;
        out[k - 1] = p.trace() / double(g.n);
    }
    return out;
}

DenseMatrix embed_graph_set(const std::vector<Graph>& graphs,
                            const PipelineConfig& cfg) {
    if (graphs.empty())
        throw data_error("graph feature extraction needs at least one graph");
    if (cfg.embedding == EmbeddingKind::svd)
        throw data_error(
            "graph features need a basis-free embedding (cfs or diag); svd "
            "factors are only defined up to per-graph sign and rotation");
    DenseMatrix x;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        Vector f = aggregate_mean(run_pipeline(graphs[i], cfg));
        if (i == 0)
            x.resize(graphs.size(), f.size());
        else if (f.size() != x.cols())
            throw data_error("graph " + std::to_string(i) +
                             " produced a feature width of " +
                             std::to_string(f.size()) + ", expected " +
                             std::to_string(x.cols()));
        x.row(i) = f.transpose();
    }
    return x;
}

} // namespace proxemb
