#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace reco {

struct SvdResult {
  Eigen::MatrixXd user_factors;     // rows x rank, orthonormal columns
  Eigen::VectorXd singular_values;  // non-negative, non-increasing
  Eigen::MatrixXd item_factors;     // cols x rank, orthonormal columns
};

// Rank-limited SVD by randomized block power iteration with a seeded
// Gaussian start. Iterates until the leading singular values move by less
// than tol (relative) or max_iters is hit. The requested rank is clamped to
// min(rows, cols).
SvdResult truncated_svd(const Eigen::MatrixXd& matrix, int rank, int max_iters = 50,
                        double tol = 1e-9, uint64_t seed = 0);

}  // namespace reco
