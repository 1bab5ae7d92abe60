#include "reco/svd.hpp"

#include "reco/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace reco {

namespace {

// Thin orthonormal basis of the columns of m.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
  return q;
}

// Singular values of the small projected matrix b (block x cols), largest
// first, via the symmetric eigenproblem of b b^T.
Eigen::VectorXd block_singular_values(const Eigen::MatrixXd& b, Eigen::MatrixXd* left_out) {
  const Eigen::MatrixXd gram = b * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::Index k = gram.rows();
  Eigen::VectorXd sv(k);
  Eigen::MatrixXd left(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::Index src = k - 1 - j;  // eigenvalues come back ascending
    sv[j] = std::sqrt(std::max(0.0, eig.eigenvalues()[src]));
    left.col(j) = eig.eigenvectors().col(src);
  }
  if (left_out != nullptr) *left_out = left;
  return sv;
}

}  // namespace

SvdResult truncated_svd(const Eigen::MatrixXd& matrix, int rank, int max_iters, double tol,
                        uint64_t seed) {
  const Eigen::Index rows = matrix.rows();
  const Eigen::Index cols = matrix.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("truncated_svd: empty matrix");
  if (rank < 1) throw std::invalid_argument("truncated_svd: rank must be positive");

  const Eigen::Index min_dim = std::min(rows, cols);
  const Eigen::Index r = std::min<Eigen::Index>(rank, min_dim);
  const Eigen::Index block = std::min<Eigen::Index>(r + 8, min_dim);

  Rng rng({seed, kStreamSvdInit});
  Eigen::MatrixXd gauss(cols, block);
  for (Eigen::Index j = 0; j < block; ++j)
    for (Eigen::Index i = 0; i < cols; ++i) gauss(i, j) = rng.normal();

  Eigen::MatrixXd basis = orthonormalize(matrix * gauss);  // rows x block
  Eigen::VectorXd prev_sv;
  for (int iter = 0; iter < max_iters; ++iter) {
    const Eigen::MatrixXd z = orthonormalize(matrix.transpose() * basis);  // cols x block
    basis = orthonormalize(matrix * z);

    const Eigen::MatrixXd projected = basis.transpose() * matrix;  // block x cols
    Eigen::VectorXd sv = block_singular_values(projected, nullptr);
    if (prev_sv.size() == sv.size()) {
      double worst = 0.0;
      for (Eigen::Index j = 0; j < r; ++j) {
        const double scale = std::max(sv[j], 1e-300);
        worst = std::max(worst, std::abs(sv[j] - prev_sv[j]) / scale);
      }
      if (worst < tol) break;
    }
    prev_sv = std::move(sv);
  }

  const Eigen::MatrixXd projected = basis.transpose() * matrix;  // block x cols
  Eigen::MatrixXd core_left;
  const Eigen::VectorXd sv = block_singular_values(projected, &core_left);

  SvdResult result;
  result.singular_values = sv.head(r);
  result.user_factors = basis * core_left.leftCols(r);  // rows x r
  result.item_factors.resize(cols, r);
  for (Eigen::Index j = 0; j < r; ++j) {
    if (result.singular_values[j] > 1e-300) {
      result.item_factors.col(j) = projected.transpose() * core_left.col(j) / result.singular_values[j];
    } else {
      result.item_factors.col(j).setZero();
    }
  }
  return result;
}

}  // namespace reco
