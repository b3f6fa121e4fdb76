#include "mcc/eval.hpp"

#include "mcc/error.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

namespace mcc {

namespace {

std::int64_t pairs_of(std::int64_t k) { return k * (k - 1) / 2; }

}  // namespace

PairConfusion pair_confusion(std::span<const std::int32_t> a,
                             std::span<const std::int32_t> b) {
  if (a.size() != b.size()) throw InputError("pair_confusion: label vectors differ in length");
  if (a.size() < 2) throw InputError("pair_confusion: at least two items are required");

  std::unordered_map<std::int32_t, std::int64_t> size_a;
  std::unordered_map<std::int32_t, std::int64_t> size_b;
  std::map<std::pair<std::int32_t, std::int32_t>, std::int64_t> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++size_a[a[i]];
    ++size_b[b[i]];
    ++joint[{a[i], b[i]}];
  }

  std::int64_t together_both = 0;
  for (const auto& [key, count] : joint) together_both += pairs_of(count);
  std::int64_t together_a = 0;
  for (const auto& [key, count] : size_a) together_a += pairs_of(count);
  std::int64_t together_b = 0;
  for (const auto& [key, count] : size_b) together_b += pairs_of(count);

  PairConfusion pc;
  pc.tp = together_both;
  pc.fp = together_a - together_both;
  pc.fn = together_b - together_both;
  pc.tn = pairs_of(static_cast<std::int64_t>(a.size())) - pc.tp - pc.fp - pc.fn;
  return pc;
}

double fowlkes_mallows(const PairConfusion& pairs) {
  const auto pa = pairs.tp + pairs.fp;
  const auto pb = pairs.tp + pairs.fn;
  if (pa == 0 || pb == 0) return 0.0;
  return static_cast<double>(pairs.tp) /
         std::sqrt(static_cast<double>(pa) * static_cast<double>(pb));
}

double fowlkes_mallows(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  return fowlkes_mallows(pair_confusion(a, b));
}

double adjusted_rand(const PairConfusion& pairs) {
  const double total = static_cast<double>(pairs.total());
  const double pa = static_cast<double>(pairs.tp + pairs.fp);
  const double pb = static_cast<double>(pairs.tp + pairs.fn);
  const double expected = pa * pb / total;
  const double denominator = 0.5 * (pa + pb) - expected;
  if (denominator == 0.0) return 1.0;
  return (static_cast<double>(pairs.tp) - expected) / denominator;
}

double adjusted_rand(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  return adjusted_rand(pair_confusion(a, b));
}

}  // namespace mcc
