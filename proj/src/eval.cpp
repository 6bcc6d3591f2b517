#include "proxemb/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "proxemb/errors.hpp"
#include "proxemb/rng.hpp"

namespace proxemb {

namespace {

struct Standardizer {
    Vector mean, scale;

    static Standardizer fit(const DenseMatrix& x) {
        Standardizer st;
        st.mean = x.colwise().mean().transpose();
        Vector var = (x.rowwise() - st.mean.transpose())
                         .array()
                         .square()
                         .colwise()
                         .mean()
                         .transpose();
        st.scale = var.array().sqrt();
        for (Eigen::Index j = 0; j < st.scale.size(); ++j)
            if (st.scale[j] < 1e-12)
                st.scale[j] = 1.0;
        return st;
    }

    DenseMatrix apply(const DenseMatrix& x) const {
        return (x.rowwise() - mean.transpose()).array().rowwise() /
               scale.transpose().array();
    }
};

double sym_lambda_max(const DenseMatrix& g) {
    Vector x = Vector::Ones(g.rows()).normalized();
    double lam = 0.0;
    for (int it = 0; it < 100; ++it) {
        Vector y = g * x;
        double norm = y.norm();
        if (norm == 0.0)
            return 0.0;
        x = y / norm;
        lam = x.dot(g * x);
    }
    return lam;
}

// full-batch gradient descent on l2-regularized logistic loss. x already
// carries a trailing all-ones column; the bias weight skips the penalty.
Vector logistic_train(const DenseMatrix& x, const Vector& y01, double lambda) {
    DenseMatrix gram = x.transpose() * x / double(x.rows());
    double step = 1.0 / (sym_lambda_max(gram) / 4.0 + lambda);
    Vector w = Vector::Zero(x.cols());
    for (int it = 0; it < 500; ++it) {
        Vector z = x * w;
        Vector p = z.unaryExpr([](double v) {
            return v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                            : std::exp(v) / (1.0 + std::exp(v));
        });
        Vector grad = x.transpose() * (p - y01) / double(x.rows());
        grad.head(x.cols() - 1) += lambda * w.head(x.cols() - 1);
        if (grad.norm() < 1e-6)
            break;
        w -= step * grad;
    }
    return w;
}

std::vector<int> sorted_classes(const std::vector<int>& labels) {
    std::set<int> s(labels.begin(), labels.end());
    return {s.begin(), s.end()};
}

DenseMatrix with_ones(const DenseMatrix& x) {
    DenseMatrix out(x.rows(), x.cols() + 1);
    out.leftCols(x.cols()) = x;
    out.col(x.cols()).setOnes();
    return out;
}

} // namespace

ClassifyResult classify_nodes(const DenseMatrix& y,
                              const std::vector<int>& labels,
                              double train_fraction, std::uint64_t seed) {
    auto n = y.rows();
    if (std::size_t(n) != labels.size())
        throw data_error("label count " + std::to_string(labels.size()) +
                         " does not match row count " + std::to_string(n));
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw data_error("train fraction must lie strictly in (0, 1)");
    auto classes = sorted_classes(labels);
    if (classes.size() < 2)
        throw data_error("classification needs at least two classes");

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    rng gen(seed);
    gen.shuffle(idx);

    auto train_m = std::llround(train_fraction * double(n));
    train_m = std::clamp(train_m, 1LL, (long long)n - 1);

    DenseMatrix xtr(train_m, y.cols()), xte(n - train_m, y.cols());
    std::vector<int> ytr(train_m), yte(n - train_m);
    for (long long i = 0; i < train_m; ++i) {
        xtr.row(i) = y.row(idx[i]);
        ytr[i] = labels[idx[i]];
    }
    for (long long i = train_m; i < n; ++i) {
        xte.row(i - train_m) = y.row(idx[i]);
        yte[i - train_m] = labels[idx[i]];
    }

    auto st = Standardizer::fit(xtr);
    DenseMatrix xtr1 = with_ones(st.apply(xtr));
    DenseMatrix xte1 = with_ones(st.apply(xte));

    DenseMatrix scores(xte1.rows(), classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        Vector y01(train_m);
        for (long long i = 0; i < train_m; ++i)
            y01[i] = ytr[i] == classes[c] ? 1.0 : 0.0;
        Vector w = logistic_train(xtr1, y01, 1e-4);
        scores.col(c) = xte1 * w;
    }

    // single-label micro f1: pool true/false positives over classes
    long long tp = 0, fp_fn = 0;
    for (Eigen::Index i = 0; i < scores.rows(); ++i) {
        Eigen::Index best;
        scores.row(i).maxCoeff(&best);
        if (classes[best] == yte[i])
            ++tp;
        else
            fp_fn += 2; // one false positive + one false negative
    }
    double micro =
        scores.rows() == 0 ? 0.0 : 2.0 * tp / (2.0 * tp + double(fp_fn));
    return {micro, int(train_m), int(n - train_m)};
}

std::vector<int> cluster_nodes(const DenseMatrix& y, int k) {
    auto n = y.rows();
    if (n < 1)
        throw data_error("clustering needs at least one point");
    if (k < 1 || k > n)
        throw data_error("cluster count " + std::to_string(k) +
                         " out of range for " + std::to_string(n) + " points");

    DenseMatrix dist(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        dist(i, i) = 0.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            double d = (y.row(i) - y.row(j)).norm();
            dist(i, j) = d;
            dist(j, i) = d;
        }
    }

    std::vector<bool> active(n, true);
    std::vector<std::vector<int>> members(n);
    for (Eigen::Index i = 0; i < n; ++i)
        members[i] = {int(i)};

    // single linkage: cluster distance is the min point distance, which the
    // lance-williams min update maintains. ties pick the smallest (i, j).
    for (Eigen::Index alive = n; alive > k; --alive) {
        double best = std::numeric_limits<double>::infinity();
        Eigen::Index bi = -1, bj = -1;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!active[i])
                continue;
            for (Eigen::Index j = i + 1; j < n; ++j) {
                if (!active[j])
                    continue;
                if (dist(i, j) < best) {
                    best = dist(i, j);
                    bi = i;
                    bj = j;
                }
            }
        }
        for (Eigen::Index l = 0; l < n; ++l) {
            if (!active[l] || l == bi || l == bj)
                continue;
            double d = std::min(dist(bi, l), dist(bj, l));
            dist(bi, l) = d;
            dist(l, bi) = d;
        }
        active[bj] = false;
        members[bi].insert(members[bi].end(), members[bj].begin(),
                           members[bj].end());
        members[bj].clear();
    }

    // label clusters 0..k-1 in order of their smallest member
    std::vector<std::pair<int, Eigen::Index>> order;
    for (Eigen::Index i = 0; i < n; ++i)
        if (active[i])
            order.emplace_back(*std::min_element(members[i].begin(),
                                                 members[i].end()),
                               i);
    std::sort(order.begin(), order.end());
    std::vector<int> labels(n, -1);
    for (std::size_t c = 0; c < order.size(); ++c)
        for (int node : members[order[c].second])
            labels[node] = int(c);
    return labels;
}

namespace {

double entropy(const std::map<int, int>& counts, double n) {
    double h = 0.0;
    for (const auto& [_, c] : counts)
        if (c > 0)
            h -= (c / n) * std::log(c / n);
    return h;
}

} // namespace

ClusterScores cluster_scores(const std::vector<int>& truth,
                             const std::vector<int>& pred) {
    if (truth.size() != pred.size())
        throw data_error("truth and prediction lengths differ");
    if (truth.empty())
        throw data_error("cluster scores need at least one point");
    double n = double(truth.size());

    std::map<int, int> ct, cp;
    std::map<std::pair<int, int>, int> joint;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++ct[truth[i]];
        ++cp[pred[i]];
        ++joint[{truth[i], pred[i]}];
    }
    double ht = entropy(ct, n), hp = entropy(cp, n);

    double h_t_given_p = 0.0, h_p_given_t = 0.0;
    for (const auto& [tp, c] : joint) {
        double p = c / n;
        h_t_given_p -= p * std::log(double(c) / cp[tp.second]);
        h_p_given_t -= p * std::log(double(c) / ct[tp.first]);
    }
    return {ht == 0.0 ? 1.0 : 1.0 - h_t_given_p / ht,
            hp == 0.0 ? 1.0 : 1.0 - h_p_given_t / hp};
}

double silhouette(const DenseMatrix& y, const std::vector<int>& labels) {
    auto n = y.rows();
    if (std::size_t(n) != labels.size())
        throw data_error("label count does not match row count");
    auto classes = sorted_classes(labels);
    if (classes.size() < 2 || Eigen::Index(classes.size()) > n)
        throw data_error("silhouette needs between 2 and n clusters");

    std::map<int, int> count;
    for (int l : labels)
        ++count[l];

    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (count[labels[i]] == 1)
            continue; // singleton scores 0
        std::map<int, double> sum;
        for (Eigen::Index j = 0; j < n; ++j)
            if (j != i)
                sum[labels[j]] += (y.row(i) - y.row(j)).norm();
        double a = sum[labels[i]] / double(count[labels[i]] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c : classes)
            if (c != labels[i] && count[c] > 0)
                b = std::min(b, sum[c] / double(count[c]));
        double denom = std::max(a, b);
        total += denom == 0.0 ? 0.0 : (b - a) / denom;
    }
    return total / double(n);
}

namespace {

// pegasos-flavoured hinge subgradient descent with the 1/sqrt(lambda) ball
// projection; x carries the trailing ones column, bias skips the penalty
Vector svm_train(const DenseMatrix& x, const Vector& ypm, double c_param) {
    double m = double(x.rows());
    double lambda = 1.0 / (c_param * m);
    Vector w = Vector::Zero(x.cols());
    double radius = 1.0 / std::sqrt(lambda);
    for (int t = 0; t < 300; ++t) {
        Vector margins = ypm.cwiseProduct(x * w);
        Vector mask =
            margins.unaryExpr([](double v) { return v < 1.0 ? 1.0 : 0.0; });
        Vector grad = -(x.transpose() * ypm.cwiseProduct(mask)) / m;
        grad.head(x.cols() - 1) += lambda * w.head(x.cols() - 1);
        w -= (1.0 / (lambda * double(t + 1))) * grad;
        double wn = w.head(x.cols() - 1).norm();
        if (wn > radius)
            w.head(x.cols() - 1) *= radius / wn;
    }
    return w;
}

double svm_accuracy(const DenseMatrix& xtr, const std::vector<int>& ytr,
                    const DenseMatrix& xte, const std::vector<int>& yte,
                    const std::vector<int>& classes, double c_param) {
    if (xte.rows() == 0)
        return 0.0;
    auto st = Standardizer::fit(xtr);
    DenseMatrix a = with_ones(st.apply(xtr));
    DenseMatrix b = with_ones(st.apply(xte));
    DenseMatrix scores(b.rows(), classes.size());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        Vector ypm(a.rows());
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            ypm[i] = ytr[i] == classes[c] ? 1.0 : -1.0;
        scores.col(c) = b * svm_train(a, ypm, c_param);
    }
    long long hits = 0;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
        Eigen::Index best;
        scores.row(i).maxCoeff(&best);
        if (classes[best] == yte[i])
            ++hits;
    }
    return double(hits) / double(b.rows());
}

DenseMatrix take_rows(const DenseMatrix& x, const std::vector<int>& idx) {
    DenseMatrix out(idx.size(), x.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
        out.row(i) = x.row(idx[i]);
    return out;
}

std::vector<int> take(const std::vector<int>& v, const std::vector<int>& idx) {
    std::vector<int> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        out[i] = v[idx[i]];
    return out;
}

} // namespace

CvResult classify_graphs(const DenseMatrix& x, const std::vector<int>& labels,
                         int folds, int trials, std::uint64_t seed) {
    auto m = x.rows();
    if (std::size_t(m) != labels.size())
        throw data_error("label count does not match row count");
    if (folds < 2)
        throw data_error("cross validation needs at least 2 folds");
    if (trials < 1)
        throw data_error("cross validation needs at least 1 trial");
    auto classes = sorted_classes(labels);
    if (classes.size() < 2)
        throw data_error("classification needs at least two classes");
    for (int c : classes) {
        auto cnt = std::count(labels.begin(), labels.end(), c);
        if (cnt < folds)
            throw data_error("stratified " + std::to_string(folds) +
                             "-fold impossible: class " + std::to_string(c) +
                             " has only " + std::to_string(cnt) + " members");
    }
    const double c_grid[] = {0.01, 0.1, 1.0, 10.0};

    CvResult result;
    for (int trial = 0; trial < trials; ++trial) {
        rng gen(seed + std::uint64_t(trial));
        // stratified fold assignment: shuffle within class, round robin
        std::vector<int> fold_of(m, -1);
        for (int c : classes) {
            std::vector<int> mine;
            for (Eigen::Index i = 0; i < m; ++i)
                if (labels[i] == c)
                    mine.push_back(int(i));
            gen.shuffle(mine);
            for (std::size_t p = 0; p < mine.size(); ++p)
                fold_of[mine[p]] = int(p % std::size_t(folds));
        }

        double fold_sum = 0.0;
        for (int f = 0; f < folds; ++f) {
            std::vector<int> train, test;
            for (Eigen::Index i = 0; i < m; ++i)
                (fold_of[i] == f ? test : train).push_back(int(i));

            std::vector<int> inner = train;
            gen.shuffle(inner);
            auto cut = std::clamp(std::llround(0.75 * double(inner.size())),
                                  1LL, (long long)inner.size() - 1);
            std::vector<int> itr(inner.begin(), inner.begin() + cut);
            std::vector<int> ival(inner.begin() + cut, inner.end());

            double best_acc = -1.0, best_c = c_grid[0];
            for (double c_param : c_grid) {
                double acc =
                    svm_accuracy(take_rows(x, itr), take(labels, itr),
                                 take_rows(x, ival), take(labels, ival),
                                 classes, c_param);
                if (acc > best_acc) { // ties keep the smaller c
                    best_acc = acc;
                    best_c = c_param;
                }
            }
            fold_sum += svm_accuracy(take_rows(x, train), take(labels, train),
                                     take_rows(x, test), take(labels, test),
                                     classes, best_c);
        }
        result.trial_means.push_back(fold_sum / double(folds));
    }

    double mean = std::accumulate(result.trial_means.begin(),
                                  result.trial_means.end(), 0.0) /
                  double(trials);
    double var = 0.0;
    for (double t : result.trial_means)
        var += (t - mean) * (t - mean);
    result.mean_accuracy = mean;
    result.std_accuracy = std::sqrt(var / double(trials));
    return result;
}

RowStats row_stats(const DenseMatrix& s) {
    auto n = s.rows();
    RowStats out;
    out.sums.resize(n);
    out.variances.resize(n);
    out.entropies.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.sums[i] = s.row(i).sum();
        double mean = s.row(i).mean();
        out.variances[i] = (s.row(i).array() - mean).square().mean();
        double total = 0.0;
        for (Eigen::Index j = 0; j < s.cols(); ++j)
            total += std::max(s(i, j), 0.0);
        if (total == 0.0) {
            out.near_zero_rows.push_back(int(i));
            out.entropies[i] = 0.0;
            continue;
        }
        double h = 0.0;
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            double p = std::max(s(i, j), 0.0) / total;
            if (p > 0.0)
                h -= p * std::log(p);
        }
        out.entropies[i] = h;
    }
    return out;
}

} // namespace proxemb
