#pragma once
#include <string>

#include "proxemb/proximity.hpp"

namespace proxemb {

enum class Filter { identity, log, bin };

Filter filter_from_name(const std::string& name);
std::string filter_name(Filter f);

// elementwise log(max(s, 1)): entries at or below 1 go to 0
DenseMatrix log_ppmi(const DenseMatrix& s);

// 0 where s <= 0, else log(s / min positive entry). invariant under
// positive rescaling of s. an all-nonpositive matrix maps to zero.
DenseMatrix log_general(const DenseMatrix& s);

// 1 where s is strictly above the p-th percentile of all entries
// (nearest-rank, r = max(1, ceil(p * n / 100))), 0 elsewhere. ties with the
// threshold go to 0, so at most (100-p)% of entries survive. "tie" includes
// values within 1e-9 of the range above the threshold, so rounding noise in
// mathematically equal scores cannot flip an entry across the cut.
DenseMatrix binarize_percentile(const DenseMatrix& s, double p);

// identity passes through; log dispatches on the tag (log_ppmi for the ppmi
// operator, log_general otherwise); bin thresholds at percentile p.
ProximityMatrix apply_filter(const ProximityMatrix& s, Filter f, double p = 50.0);

} // namespace proxemb
