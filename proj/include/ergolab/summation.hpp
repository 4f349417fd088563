#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ergolab::sums {

// Neumaier-compensated accumulator.
struct Kahan {
  double sum = 0;
  double comp = 0;

  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

struct KahanC {
  Kahan re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }

  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// Fixed adjacent-pairs reduction tree; the shape depends only on the length,
// so partial sums are identical for every thread count.
inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
  if (v.empty()) return {0.0, 0.0};
  std::vector<std::complex<double>> cur(v.begin(), v.end());
  while (cur.size() > 1) {
    std::vector<std::complex<double>> next;
    next.reserve(cur.size() / 2 + 1);
    std::size_t i = 0;
    for (; i + 1 < cur.size(); i += 2) next.push_back(cur[i] + cur[i + 1]);
    if (i < cur.size()) next.push_back(cur[i]);
    cur = std::move(next);
  }
  return cur[0];
}

inline double pairwise_sum(std::span<const double> v) {
  if (v.empty()) return 0.0;
  std::vector<double> cur(v.begin(), v.end());
  while (cur.size() > 1) {
    std::vector<double> next;
    next.reserve(cur.size() / 2 + 1);
    std::size_t i = 0;
    for (; i + 1 < cur.size(); i += 2) next.push_back(cur[i] + cur[i + 1]);
    if (i < cur.size()) next.push_back(cur[i]);
    cur = std::move(next);
  }
  return cur[0];
}

// Summation block length. Blocks are compensated internally and combined by
// the pairwise tree; index ranges handed to workers are block-aligned, and
// stateful sequence cursors re-seed at block starts, so every value is a
// pure function of its index.
inline constexpr std::uint64_t kBlockLen = 1024;

}  // namespace ergolab::sums
