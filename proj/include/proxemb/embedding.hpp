#pragma once
#include <optional>
#include <string>
#include <vector>

#include "proxemb/graph.hpp"
#include "proxemb/matrix.hpp"
#include "proxemb/nonlinearity.hpp"
#include "proxemb/pipeline_config.hpp"

namespace proxemb {

// the proximity step of the pipeline on its own: the configured operator
// with its parameters, where `scale` (when given) replaces the operator's
// primary scalar exactly as a scales-list entry would
ProximityMatrix pipeline_proximity(const Graph& g, const PipelineConfig& cfg,
                                   std::optional<double> scale = std::nullopt);

struct Embedding {
    DenseMatrix y; // n rows, one per node
    EmbeddingKind kind;
    std::string provenance; // "op(params)+filter" per scale, '|'-joined
};

// truncated svd factor U_d sqrt(Sigma_d). columns are sign-fixed: the entry
// of largest magnitude in each left singular vector (first such index on
// ties) is made positive, so the factor is deterministic.
Embedding svd_embed(const DenseMatrix& s, int d);

// characteristic-function sums: row u holds, for each landmark
// t_j = j * 100 / (d/2), the real and imaginary parts of
// sum_v exp(i t_j S_vu) (a sum over column u), divided by n when
// normalize is set. d must be even.
Embedding cfs_embed(const DenseMatrix& s, int d, bool normalize = true);

// one column: the diagonal of the proximity matrix
Embedding diag_embed(const ProximityMatrix& s);

// horizontal concatenation; all blocks must agree on kind and row count
Embedding multiscale_concat(const std::vector<Embedding>& blocks);

// the full pipeline on one graph. svd widths are clamped to n with a
// warning pushed to *warnings (when given); other recoverable notes land
// there too.
Embedding run_pipeline(const Graph& g, const PipelineConfig& cfg,
                       std::vector<std::string>* warnings = nullptr);

} // namespace proxemb
