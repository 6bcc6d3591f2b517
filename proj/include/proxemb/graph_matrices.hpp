#pragma once
#include "proxemb/graph.hpp"
#include "proxemb/matrix.hpp"

namespace proxemb {

DenseMatrix adjacency(const Graph& g);
DenseMatrix degree_matrix(const Graph& g);
DenseMatrix laplacian(const Graph& g); // D - A

// random-walk transition D^-1 A; rejects graphs with isolated nodes
DenseMatrix rw_transition(const Graph& g);

struct EigDecomposition {
    Vector values;       // ascending
    DenseMatrix vectors; // column j pairs with values[j]
};

// dense symmetric eigendecomposition. the input must be symmetric to within
// 1e-9 absolute; anything worse is reported as an error with the magnitude.
EigDecomposition symmetric_eig(const DenseMatrix& m);

// Moore-Penrose pseudoinverse of the Laplacian. eigenvalues at or below
// 1e-8 * lambda_max are treated as zero modes (one per connected component).
DenseMatrix laplacian_pinv(const Graph& g);

} // namespace proxemb
