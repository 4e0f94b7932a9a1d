#ifndef TENDENCY_METRICS_HPP
#define TENDENCY_METRICS_HPP

#include <vector>

namespace tendency {

/// Adjusted Rand Index between two partitions of the same objects.
/// 1 for identical partitions, ~0 for independent ones.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

/// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tendency

#endif
