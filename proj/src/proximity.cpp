#include "proxemb/proximity.hpp"

#include <cmath>

#include "proxemb/csv.hpp"
#include "proxemb/graph_matrices.hpp"

namespace proxemb {

ProximityOp proximity_from_name(const std::string& name) {
    if (name == "ppmi") return ProximityOp::ppmi;
    if (name == "heat") return ProximityOp::heat;
    if (name == "fabp") return ProximityOp::fabp;
    if (name == "ppr") return ProximityOp::ppr;
    if (name == "lap_pinv") return ProximityOp::lap_pinv;
    if (name == "adj_power") return ProximityOp::adj_power;
    if (name == "rw_power") return ProximityOp::rw_power;
    throw data_error("unknown proximity operator '" + name +
                     "' (expected ppmi, heat, fabp, ppr, lap_pinv, "
                     "adj_power or rw_power)");
}

std::string proximity_name(ProximityOp op) {
    switch (op) {
    case ProximityOp::ppmi: return "ppmi";
    case ProximityOp::heat: return "heat";
    case ProximityOp::fabp: return "fabp";
    case ProximityOp::ppr: return "ppr";
    case ProximityOp::lap_pinv: return "lap_pinv";
    case ProximityOp::adj_power: return "adj_power";
    case ProximityOp::rw_power: return "rw_power";
    }
    throw data_error("unhandled proximity operator");
}

ProximityMatrix ppmi(const Graph& g, int T, double b) {
    if (T < 1)
        throw data_error("ppmi window count T must be >= 1, got " +
                         std::to_string(T));
    if (!(b >= 1.0))
        throw data_error("ppmi shift b must be >= 1, got " + format_double(b));
    DenseMatrix r = rw_transition(g);
    DenseMatrix acc = r;
    DenseMatrix p = r;
    for (int step = 2; step <= T; ++step) {
        p = p * r;
        acc += p;
    }
    double vol = adjacency(g).sum();
    auto deg = g.weighted_degrees();
    DenseMatrix s = acc;
    for (int j = 0; j < g.n; ++j)
        s.col(j) *= vol / (b * T * deg[j]);
    return {std::move(s), ProximityOp::ppmi, {{"T", double(T)}, {"b", b}}};
}

ProximityMatrix heat_kernel(const Graph& g, double s) {
    if (!(s > 0.0))
        throw data_error("heat kernel scale s must be positive, got " +
                         format_double(s));
    auto eig = symmetric_eig(laplacian(g));
    DenseMatrix out = eig.vectors *
                      (-s * eig.values.array()).exp().matrix().asDiagonal() *
                      eig.vectors.transpose();
    return {std::move(out), ProximityOp::heat, {{"s", s}}};
}

ProximityMatrix fabp(const Graph& g, double a, double c) {
    DenseMatrix m = DenseMatrix::Identity(g.n, g.n) + a * degree_matrix(g) -
                    c * adjacency(g);
    auto eig = symmetric_eig(m);
    double lo = eig.values.cwiseAbs().minCoeff();
    double hi = eig.values.cwiseAbs().maxCoeff();
    if (lo == 0.0 || hi / lo >= 1e12)
        throw numerical_error(
            "fabp system I + aD - cA is singular or ill-conditioned "
            "(condition number " +
            (lo == 0.0 ? std::string("inf") : format_double(hi / lo)) + ")");
    DenseMatrix out = eig.vectors *
                      eig.values.cwiseInverse().asDiagonal() *
                      eig.vectors.transpose();
    return {std::move(out), ProximityOp::fabp, {{"a", a}, {"c", c}}};
}

FabpParams fabp_default_params(const Graph& g, FabpVariant variant) {
    auto deg = g.weighted_degrees();
    double sum_d = 0.0, sum_d2 = 0.0;
    for (double d : deg) {
        sum_d += d;
        sum_d2 += d * d;
    }
    double c1 = sum_d + 2.0;
    double c2 = (variant == FabpVariant::trace_d2 ? sum_d2 : sum_d) - 1.0;
    if (c2 <= 0.0)
        throw numerical_error(
            "fabp heuristic needs tr-based c2 > 0; degree sequence is "
            "degenerate (c2 = " +
            format_double(c2) + ")");
    double h = std::sqrt((-c1 + std::sqrt(c1 * c1 + 4.0 * c2)) / (8.0 * c2));
    double denom = 1.0 - 4.0 * h * h;
    if (denom <= 0.0)
        throw numerical_error("fabp heuristic out of range: 1 - 4h^2 <= 0");
    return {4.0 * h * h / denom, 2.0 * h / denom, h};
}

ProximityMatrix ppr(const Graph& g, double beta, bool use_transition) {
    if (!(beta > 0.0))
        throw data_error("ppr decay beta must be positive, got " +
                         format_double(beta));
    DenseMatrix m = use_transition ? rw_transition(g) : adjacency(g);
    // a positive stochastic-matrix spectrum peaks at exactly 1; for the
    // symmetric adjacency use power iteration
    double rho = use_transition ? 1.0 : spectral_radius_sym(m);
    if (beta * rho >= 1.0 - 1e-6)
        throw numerical_error("ppr series diverges: beta * spectral_radius = " +
                              format_double(beta * rho) + " >= 1");
    DenseMatrix lhs = DenseMatrix::Identity(g.n, g.n) - beta * m;
    DenseMatrix out = lhs.partialPivLu().solve((beta * m).eval());
    return {std::move(out),
            ProximityOp::ppr,
            {{"beta", beta}, {"use_transition", use_transition ? 1.0 : 0.0}}};
}

ProximityMatrix lap_pinv(const Graph& g) {
    return {laplacian_pinv(g), ProximityOp::lap_pinv, {}};
}

namespace {

DenseMatrix matrix_power(DenseMatrix base, int k) {
    DenseMatrix acc = base;
    for (int i = 2; i <= k; ++i)
        acc = acc * base;
    return acc;
}

} // namespace

ProximityMatrix adj_power(const Graph& g, int k) {
    if (k < 1)
        throw data_error("adjacency power k must be >= 1, got " +
                         std::to_string(k));
    return {matrix_power(adjacency(g), k),
            ProximityOp::adj_power,
            {{"k", double(k)}}};
}

ProximityMatrix rw_power(const Graph& g, int k) {
    if (k < 1)
        throw data_error("random-walk power k must be >= 1, got " +
                         std::to_string(k));
    return {matrix_power(rw_transition(g), k),
            ProximityOp::rw_power,
            {{"k", double(k)}}};
}

double spectral_radius_sym(const DenseMatrix& m) {
    if (m.rows() == 0)
        return 0.0;
    // power iteration on m*m: converges on |lambda|_max^2 even when the
    // extreme eigenvalues come in +/- pairs (bipartite adjacency)
    DenseMatrix m2 = m * m;
    Vector x = Vector::Ones(m.rows()).normalized();
    double lam = 0.0;
    for (int it = 0; it < 200; ++it) {
        Vector y = m2 * x;
        double norm = y.norm();
        if (norm == 0.0)
            return 0.0;
        x = y / norm;
        lam = x.dot(m2 * x);
    }
    return std::sqrt(std::max(lam, 0.0));
}

} // namespace proxemb
