#include "reco/numeric.hpp"

#include "reco/parallel.hpp"

#include <stdexcept>

namespace reco {

namespace {
constexpr size_t kChunk = 4096;
}

double chunked_sum(const double* values, size_t n, int threads) {
  if (n == 0) return 0.0;
  const size_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(n_chunks, 0.0);
  parallel_for(n_chunks, threads, [&](size_t begin, size_t end) {
    for (size_t c = begin; c < end; ++c) {
      NeumaierSum acc;
      const size_t hi = std::min(n, (c + 1) * kChunk);
      for (size_t i = c * kChunk; i < hi; ++i) acc.add(values[i]);
      partial[c] = acc.value();
    }
  });
  NeumaierSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

Eigen::VectorXd softmax(const Eigen::VectorXd& scores) {
  const double shift = scores.maxCoeff();
  Eigen::VectorXd out = (scores.array() - shift).exp();
  NeumaierSum norm;
  for (Eigen::Index i = 0; i < out.size(); ++i) norm.add(out[i]);
  out /= norm.value();
  return out;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (sorted.size() == 1) return sorted[0];
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + (sorted[lo + 1] - sorted[lo]) * frac;
}

std::pair<double, double> wilson_interval(int64_t successes, int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  double lo = center - half;
  double hi = center + half;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

uint64_t fnv1a64(const void* data, size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  uint64_t h = 0xcbf29ce484222325ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

}  // namespace reco
