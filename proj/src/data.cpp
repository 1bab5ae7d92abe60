#include "reco/data.hpp"

namespace reco {

Eigen::VectorXi dense_counts(const ContextCounts& sparse, int num_items) {
  Eigen::VectorXi dense = Eigen::VectorXi::Zero(num_items);
  for (const auto& [item, count] : sparse) dense[item] = count;
  return dense;
}

ContextCounts sparse_counts(const Eigen::VectorXi& dense) {
  ContextCounts sparse;
  for (Eigen::Index i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0) sparse.emplace_back(static_cast<int32_t>(i), dense[i]);
  }
  return sparse;
}

}  // namespace reco
