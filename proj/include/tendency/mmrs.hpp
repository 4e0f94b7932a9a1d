#ifndef TENDENCY_MMRS_HPP
#define TENDENCY_MMRS_HPP

#include <cstdint>
#include <vector>

#include "tendency/matrix.hpp"

namespace tendency {

/// Maximin random sample: k' mutually-far "distinguished" objects plus a
/// proportional random fill drawn near each of them.
struct MmrsSample {
  std::vector<std::size_t> distinguished;  // in selection order
  std::vector<std::size_t> sample;         // ascending, includes distinguished
  std::vector<std::size_t> group_of;       // object -> position in `distinguished`
};

/// Greedy maximin selection: the first pick is the object farthest from the
/// dataset centroid, each next maximizes the minimum distance to the picks
/// so far. Ties break to the lowest object index.
std::vector<std::size_t> maximin_select(const FeatureMatrix& features, std::size_t k_prime);
std::vector<std::size_t> maximin_select(const ObjectView& objects, std::size_t k_prime,
                                        bool masked = false);

MmrsSample mmrs_sample(const FeatureMatrix& features, std::size_t k_prime, std::size_t n,
                       std::uint64_t seed);
MmrsSample mmrs_sample(const ObjectView& objects, std::size_t k_prime, std::size_t n,
                       std::uint64_t seed, bool masked = false);

}  // namespace tendency

#endif
