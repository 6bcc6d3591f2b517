#include "proxemb/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "proxemb/csv.hpp"

namespace proxemb {

Filter filter_from_name(const std::string& name) {
    if (name == "identity") return Filter::identity;
    if (name == "log") return Filter::log;
    if (name == "bin") return Filter::bin;
    throw data_error("unknown filter '" + name +
                     "' (expected identity, log or bin)");
}

std::string filter_name(Filter f) {
    switch (f) {
    case Filter::identity: return "identity";
    case Filter::log: return "log";
    case Filter::bin: return "bin";
    }
    throw data_error("unhandled filter");
}

DenseMatrix log_ppmi(const DenseMatrix& s) {
    return s.unaryExpr([](double v) { return v > 1.0 ? std::log(v) : 0.0; });
}

DenseMatrix log_general(const DenseMatrix& s) {
    double min_pos = 0.0;
    for (Eigen::Index j = 0; j < s.cols(); ++j)
        for (Eigen::Index i = 0; i < s.rows(); ++i) {
            double v = s(i, j);
            if (v > 0.0 && (min_pos == 0.0 || v < min_pos))
                min_pos = v;
        }
    if (min_pos == 0.0)
        return DenseMatrix::Zero(s.rows(), s.cols());
    return s.unaryExpr([min_pos](double v) {
        return v > 0.0 ? std::log(v / min_pos) : 0.0;
    });
}

DenseMatrix binarize_percentile(const DenseMatrix& s, double p) {
    if (!(p >= 0.0 && p <= 100.0))
        throw data_error("percentile must lie in [0, 100], got " +
                         format_double(p));
    Eigen::Index total = s.size();
    if (total == 0)
        return s;
    std::vector<double> flat(s.data(), s.data() + total);
    auto rank = (long long)std::ceil(p * double(total) / 100.0);
    rank = std::clamp(rank, 1LL, (long long)total);
    std::nth_element(flat.begin(), flat.begin() + (rank - 1), flat.end());
    double threshold = flat[rank - 1];
    // guard band: entries whose distance to the threshold is at rounding-
    // noise level (relative to the value range) count as ties, so two
    // mathematically equal scores never land on opposite sides of the cut
    double guard = 1e-9 * (s.maxCoeff() - s.minCoeff());
    double cut = threshold + guard;
    return s.unaryExpr([cut](double v) { return v > cut ? 1.0 : 0.0; });
}

ProximityMatrix apply_filter(const ProximityMatrix& s, Filter f, double p) {
    ProximityMatrix out = s;
    switch (f) {
    case Filter::identity:
        break;
    case Filter::log:
        out.m = s.op == ProximityOp::ppmi ? log_ppmi(s.m) : log_general(s.m);
        break;
    case Filter::bin:
        out.m = binarize_percentile(s.m, p);
        break;
    }
    return out;
}

} // namespace proxemb
