#pragma once

#include "reco/data.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace reco {

enum class PolicyVariant {
  kRandom,
  kPopularity,
  kPersonalizedPopularity,
  kSvd,
  kItemKnn,
  kUserKnn,
};

const char* to_string(PolicyVariant v);
std::optional<PolicyVariant> parse_policy_variant(std::string_view name);

struct PolicyHyperparams {
  int svd_rank = 10;
  int svd_max_iters = 50;
  double svd_tol = 1e-9;
  int knn_k = 20;
  double temperature = 1.0;     // softening of scores for stochastic use; > 0
  double epsilon_floor = 0.0;   // minimum per-action probability, in [0, 1/P]
  uint64_t seed = 0;            // random-variant rankings and svd start
};

struct RandomParams {};
struct PopularityParams {
  Eigen::VectorXd item_counts;  // global organic view counts
};
struct PersonalizedPopularityParams {};  // scores are the query counts themselves
struct SvdParams {
  Eigen::MatrixXd item_factors;     // P x R
  Eigen::VectorXd singular_values;  // R
};
struct ItemKnnParams {
  // per item: (neighbor item, cosine similarity), similarity descending,
  // self excluded, zero similarities dropped
  std::vector<std::vector<std::pair<int32_t, double>>> neighbors;
};
struct UserKnnParams {
  Eigen::MatrixXd user_counts;  // training users x P
  Eigen::VectorXd row_norms;
};

// A fitted recommender. Immutable after construction; score/rank/
// action_distribution are pure and safe to call concurrently.
class PolicyModel {
 public:
  using Params = std::variant<RandomParams, PopularityParams, PersonalizedPopularityParams,
                              SvdParams, ItemKnnParams, UserKnnParams>;

  // Fits a model on organic events only; bandit feedback never enters here.
  static PolicyModel fit(PolicyVariant variant, std::span<const OrganicEvent> organic,
                         int num_items, const PolicyHyperparams& hp);

  PolicyModel(PolicyVariant variant, std::string name, int num_items, PolicyHyperparams hp,
              Params params);

  PolicyVariant variant() const { return variant_; }
  const std::string& name() const { return name_; }
  int num_items() const { return num_items_; }
  const PolicyHyperparams& hyperparams() const { return hp_; }
  const Params& params() const { return params_; }

  PolicyModel with_name(std::string name) const;

  // Raw per-item scores for a context of organic view counts.
  Eigen::VectorXd score(const Eigen::VectorXi& context_views) const;

  // softmax(score / temperature) mixed toward uniform so that every entry is
  // at least epsilon_floor; sums to 1 within 1e-12.
  Eigen::VectorXd action_distribution(const Eigen::VectorXi& context_views) const;

  // Top-n items by descending score, ties broken by ascending item id. The
  // random variant uses a shuffle keyed on (seed, context).
  std::vector<int32_t> rank(const Eigen::VectorXi& context_views, int n) const;

  int32_t top1(const Eigen::VectorXi& context_views) const { return rank(context_views, 1)[0]; }

 private:
  PolicyVariant variant_;
  std::string name_;
  int num_items_;
  PolicyHyperparams hp_;
  Params params_;
};

// Dense user-item organic count matrix; rows indexed by user id.
Eigen::MatrixXd interaction_matrix(std::span<const OrganicEvent> organic, int num_items);

// Column-wise cosine similarity; zero columns yield zero rows/cols, the
// diagonal is 1 for nonzero columns.
Eigen::MatrixXd cosine_similarity_columns(const Eigen::MatrixXd& m);

}  // namespace reco
