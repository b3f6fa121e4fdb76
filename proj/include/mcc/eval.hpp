#pragma once

#include <cstdint>
#include <span>

namespace mcc {

/// Counts over unordered item pairs: TP together in both partitions, FP only
/// in the first, FN only in the second, TN in neither.
struct PairConfusion {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  std::int64_t total() const { return tp + fp + fn + tn; }
};

/// Throws InputError on a length mismatch or fewer than two items.
PairConfusion pair_confusion(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b);

/// TP / sqrt((TP + FP)(TP + FN)); 0 when either factor is 0.
double fowlkes_mallows(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
double fowlkes_mallows(const PairConfusion& pairs);

/// Hubert-Arabie adjusted Rand index. 1 when the expected-index correction
/// has a zero denominator (both partitions trivial and identical).
double adjusted_rand(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
double adjusted_rand(const PairConfusion& pairs);

}  // namespace mcc
