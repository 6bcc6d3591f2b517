#pragma once
#include <cstdint>
#include <vector>

#include "proxemb/matrix.hpp"

namespace proxemb {

struct ClassifyResult {
    double micro_f1 = 0.0;
    int train_size = 0;
    int test_size = 0;
};

// node classification: one-vs-rest logistic regression trained by full-batch
// gradient descent (l2 1e-4, at most 500 steps, fixed step from a power-
// iteration curvature bound). features are standardized on the train split.
ClassifyResult classify_nodes(const DenseMatrix& y,
                              const std::vector<int>& labels,
                              double train_fraction = 0.8,
                              std::uint64_t seed = 0);

// single-linkage agglomerative clustering (euclidean) cut at k clusters.
// ties in the merge order break toward the lexicographically smallest
// active pair. output labels are 0..k-1 in order of first member.
std::vector<int> cluster_nodes(const DenseMatrix& y, int k);

struct ClusterScores {
    double homogeneity = 0.0;
    double completeness = 0.0;
};

// entropy-based scores (natural log). a zero-entropy reference side scores 1.
ClusterScores cluster_scores(const std::vector<int>& truth,
                             const std::vector<int>& pred);

// mean silhouette over all points (euclidean); singleton clusters score 0
double silhouette(const DenseMatrix& y, const std::vector<int>& labels);

struct CvResult {
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    std::vector<double> trial_means;
};

// graph classification: linear svm (hinge subgradient, pegasos-style step
// and projection), C picked per fold from {0.01, 0.1, 1, 10} on an inner
// 75/25 split (ties to the smaller C), stratified k-fold repeated `trials`
// times with reshuffled folds. accuracy mean/std are over trial means.
CvResult classify_graphs(const DenseMatrix& x, const std::vector<int>& labels,
                         int folds = 10, int trials = 5,
                         std::uint64_t seed = 0);

struct RowStats {
    Vector sums;
    Vector variances; // population variance per row
    Vector entropies; // natural log, negatives clamped to 0 before normalizing
    std::vector<int> near_zero_rows; // rows whose clamped mass is ~0
};

RowStats row_stats(const DenseMatrix& s);

} // namespace proxemb
