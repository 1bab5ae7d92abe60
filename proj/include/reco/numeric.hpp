#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace reco {

// Compensated (Neumaier) accumulator; summation error stays O(eps)
// independent of the number of terms.
struct NeumaierSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Compensated sum over fixed-size chunks, chunk results combined in index
// order. Bit-stable for any thread count; threads > 1 parallelizes the
// per-chunk pass.
double chunked_sum(const double* values, size_t n, int threads = 1);

inline double sigmoid(double x) {
  const double p = 1.0 / (1.0 + std::exp(-x));
  // keep the result strictly inside (0, 1) even for saturating inputs
  constexpr double lo = 5e-324;
  const double hi = 1.0 - 0x1.0p-53;
  return p < lo ? lo : (p > hi ? hi : p);
}

// Max-shifted softmax with compensated normalization; entries are strictly
// positive and sum to 1 within a few ulp.
Eigen::VectorXd softmax(const Eigen::VectorXd& scores);

// Linear-interpolation quantile of an ascending-sorted sample, q in [0, 1].
double quantile_sorted(const std::vector<double>& sorted, double q);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(int64_t successes, int64_t trials, double z);

// FNV-1a over raw bytes; used to derive stable stream keys from content.
uint64_t fnv1a64(const void* data, size_t len);
uint64_t fnv1a64(std::string_view s);

}  // namespace reco
