#include "proxemb/graph_matrices.hpp"

#include <string>

#include "proxemb/csv.hpp"

namespace proxemb {

DenseMatrix adjacency(const Graph& g) {
    DenseMatrix a = DenseMatrix::Zero(g.n, g.n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [u, v] = g.edges[i];
        a(u, v) = g.weights[i];
        a(v, u) = g.weights[i];
    }
    return a;
}

DenseMatrix degree_matrix(const Graph& g) {
    DenseMatrix d = DenseMatrix::Zero(g.n, g.n);
    auto deg = g.weighted_degrees();
    for (int i = 0; i < g.n; ++i)
        d(i, i) = deg[i];
    return d;
}

DenseMatrix laplacian(const Graph& g) { return degree_matrix(g) - adjacency(g); }

DenseMatrix rw_transition(const Graph& g) {
    auto deg = g.weighted_degrees();
    for (int i = 0; i < g.n; ++i)
        if (deg[i] == 0.0)
            throw data_error("random-walk transition undefined: node " +
                             std::to_string(i) + " is isolated");
    DenseMatrix r = adjacency(g);
    for (int i = 0; i < g.n; ++i)
        r.row(i) /= deg[i];
    return r;
}

EigDecomposition symmetric_eig(const DenseMatrix& m) {
    if (m.rows() != m.cols())
        throw data_error("eigendecomposition needs a square matrix, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9)
        throw data_error("matrix is not symmetric: max |m - m^T| = " +
                         format_double(asym));
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(
        (m + m.transpose()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw numerical_error("symmetric eigendecomposition failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

DenseMatrix laplacian_pinv(const Graph& g) {
    auto eig = symmetric_eig(laplacian(g));
    double lam_max = eig.values.size() ? eig.values.maxCoeff() : 0.0;
    DenseMatrix pinv = DenseMatrix::Zero(g.n, g.n);
    if (lam_max <= 0.0)
        return pinv; // edgeless graph: L = 0, pinv = 0
    double cutoff = 1e-8 * lam_max;
    for (int j = 0; j < eig.values.size(); ++j) {
        double lam = eig.values[j];
        if (lam <= cutoff)
            continue; // zero mode (one per connected component)
        pinv.noalias() +=
            (1.0 / lam) * eig.vectors.col(j) * eig.vectors.col(j).transpose();
    }
    return pinv;
}

} // namespace proxemb
