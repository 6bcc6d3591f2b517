#pragma once
#include <string>
#include <utility>
#include <vector>

#include "proxemb/graph.hpp"
#include "proxemb/matrix.hpp"

namespace proxemb {

enum class ProximityOp { ppmi, heat, fabp, ppr, lap_pinv, adj_power, rw_power };

ProximityOp proximity_from_name(const std::string& name);
std::string proximity_name(ProximityOp op);

// a node-proximity matrix tagged with how it was made. the tag drives the
// log filter dispatch and the provenance lines in csv output.
struct ProximityMatrix {
    DenseMatrix m;
    ProximityOp op;
    std::vector<std::pair<std::string, double>> params;
};

// pointwise mutual information flavoured co-occurrence:
//   S = vol / (b*T) * (sum_{r=1..T} R^r) D^-1,  R = D^-1 A
ProximityMatrix ppmi(const Graph& g, int T = 10, double b = 1.0);

// heat kernel exp(-s L) via the Laplacian eigendecomposition
ProximityMatrix heat_kernel(const Graph& g, double s = 0.1);

// belief-propagation style kernel (I + a D - c A)^-1
ProximityMatrix fabp(const Graph& g, double a, double c);

// parameter heuristic for fabp. c2 has two published variants; trace_d2
// (c2 = tr(D^2) - 1) is the default, trace_d uses c2 = tr(D) - 1.
enum class FabpVariant { trace_d2, trace_d };
struct FabpParams {
    double a, c, h;
};
FabpParams fabp_default_params(const Graph& g,
                               FabpVariant variant = FabpVariant::trace_d2);

// personalized pagerank style series (I - beta M)^-1 (beta M) where M is the
// adjacency, or the rw transition when use_transition is set. errors out when
// beta * spectral_radius(M) reaches 1 (the geometric series would diverge).
ProximityMatrix ppr(const Graph& g, double beta = 0.01,
                    bool use_transition = false);

ProximityMatrix lap_pinv(const Graph& g);
ProximityMatrix adj_power(const Graph& g, int k);
ProximityMatrix rw_power(const Graph& g, int k);

// largest |eigenvalue| of a symmetric matrix, by power iteration on m*m
double spectral_radius_sym(const DenseMatrix& m);

} // namespace proxemb
