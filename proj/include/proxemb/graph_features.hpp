#pragma once
#include <vector>

#include "proxemb/embedding.hpp"
#include "proxemb/graph.hpp"
#include "proxemb/matrix.hpp"
#include "proxemb/pipeline_config.hpp"

namespace proxemb {

// column means of the node embedding: one fixed-length vector per graph
Vector aggregate_mean(const Embedding& e);

// heat-trace signature: for each scale s, sum_i exp(-s * lambda_i) / n over
// the Laplacian spectrum. equals the mean-pooled diag(heat) pipeline.
Vector netlsd_features(const Graph& g, const std::vector<double>& scales);

// return-probability signature: mean_i (R^k)_ii for k = 1..max_k. equals
// the mean-pooled diag(rw_power) pipeline.
Vector retgk_features(const Graph& g, int max_k);

// run the pipeline on every graph and mean-pool rows into a feature matrix
// (one row per graph). needs a basis-free embedding: svd factors are only
// defined up to per-graph sign/rotation, so they are rejected.
DenseMatrix embed_graph_set(const std::vector<Graph>& graphs,
                            const PipelineConfig& cfg);

} // namespace proxemb
