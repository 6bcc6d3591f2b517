#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "proxemb/nonlinearity.hpp"
#include "proxemb/proximity.hpp"

namespace proxemb {

enum class EmbeddingKind { svd, cfs, diag };

EmbeddingKind embedding_from_name(const std::string& name);
std::string embedding_name(EmbeddingKind k);

// one pipeline specification: proximity -> filter -> embedding, plus the
// optional multiscale list. unset operator parameters fall back to the
// defaults documented next to each field.
struct PipelineConfig {
    ProximityOp proximity = ProximityOp::heat;

    std::optional<int> ppmi_T;     // window count, >= 1 (default 10)
    std::optional<double> ppmi_b;  // shift, >= 1 (default 1)
    std::optional<double> heat_s;  // diffusion time, > 0 (default 0.1)
    std::optional<double> fabp_a;  // default 1.0 when not using the heuristic
    std::optional<double> fabp_c;  // default 0.01
    bool fabp_heuristic = false;   // derive (a, c) from the degree sequence
    FabpVariant fabp_c2 = FabpVariant::trace_d2;
    std::optional<double> ppr_beta; // decay, > 0 (default 0.01)
    bool ppr_use_transition = false;
    std::optional<int> power_k;    // adj_power / rw_power order (default 2)

    Filter filter = Filter::identity;
    double filter_p = 50.0; // percentile for the bin filter

    EmbeddingKind embedding = EmbeddingKind::svd;
    int dim = 128;             // embedding width per scale
    bool cfs_normalize = true; // divide characteristic sums by n

    // when non-empty, the pipeline runs once per scale (each value replaces
    // the operator's primary scalar) and concatenates the blocks. operators
    // without a scalar (fabp, lap_pinv) reject a scale list.
    std::vector<double> scales;

    std::uint64_t seed = 0;

    static PipelineConfig from_entries(
        const std::map<std::string, std::string>& entries);
    // flat "key = value" file; '#' comments and blank lines are ignored
    static PipelineConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    std::string serialize() const; // canonical form, re-parseable by load
};

} // namespace proxemb
