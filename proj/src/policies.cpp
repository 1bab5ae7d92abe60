#include "reco/policies.hpp"

#include "reco/errors.hpp"
#include "reco/numeric.hpp"
#include "reco/rng.hpp"
#include "reco/svd.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace reco {

const char* to_string(PolicyVariant v) {
  switch (v) {
    case PolicyVariant::kRandom: return "random";
    case PolicyVariant::kPopularity: return "popularity";
    case PolicyVariant::kPersonalizedPopularity: return "personalized_popularity";
    case PolicyVariant::kSvd: return "svd";
    case PolicyVariant::kItemKnn: return "item_knn";
    case PolicyVariant::kUserKnn: return "user_knn";
  }
  return "unknown";
}

std::optional<PolicyVariant> parse_policy_variant(std::string_view name) {
  for (PolicyVariant v :
       {PolicyVariant::kRandom, PolicyVariant::kPopularity, PolicyVariant::kPersonalizedPopularity,
        PolicyVariant::kSvd, PolicyVariant::kItemKnn, PolicyVariant::kUserKnn}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

Eigen::MatrixXd interaction_matrix(std::span<const OrganicEvent> organic, int num_items) {
  int64_t max_user = -1;
  for (const auto& ev : organic) {
    if (ev.item_id < 0 || ev.item_id >= num_items)
      throw DataError("organic event references item outside the catalog");
    if (ev.user_id < 0) throw DataError("organic event has a negative user id");
    max_user = std::max(max_user, ev.user_id);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(max_user + 1, num_items);
  for (const auto& ev : organic) m(ev.user_id, ev.item_id) += 1.0;
  return m;
}

Eigen::MatrixXd cosine_similarity_columns(const Eigen::MatrixXd& m) {
  const Eigen::Index p = m.cols();
  Eigen::VectorXd norms(p);
  for (Eigen::Index j = 0; j < p; ++j) norms[j] = m.col(j).norm();
  Eigen::MatrixXd sim = m.transpose() * m;
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double d = norms[i] * norms[j];
      sim(i, j) = d > 0.0 ? sim(i, j) / d : 0.0;
    }
    if (norms[i] > 0.0) sim(i, i) = 1.0;
  }
  return sim;
}

namespace {

void check_hyperparams(const PolicyHyperparams& hp, int num_items) {
  if (num_items < 2) throw ConfigError("policies need at least 2 items");
  if (hp.temperature <= 0.0) throw ConfigError("temperature must be positive");
  if (hp.epsilon_floor < 0.0 || hp.epsilon_floor > 1.0 / num_items)
    throw ConfigError("epsilon_floor must lie in [0, 1/num_items]");
  if (hp.svd_rank < 1) throw ConfigError("svd_rank must be positive");
  if (hp.knn_k < 1) throw ConfigError("knn_k must be positive");
}

ItemKnnParams fit_item_knn(const Eigen::MatrixXd& counts, int k) {
  const Eigen::Index p = counts.cols();
  const Eigen::MatrixXd sim = cosine_similarity_columns(counts);
  ItemKnnParams params;
  params.neighbors.resize(p);
  std::vector<std::pair<int32_t, double>> row;
  for (Eigen::Index i = 0; i < p; ++i) {
    row.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      if (j == i || sim(i, j) <= 0.0) continue;
      row.emplace_back(static_cast<int32_t>(j), sim(i, j));
    }
    const size_t keep = std::min<size_t>(k, row.size());
    std::partial_sort(row.begin(), row.begin() + keep, row.end(),
                      [](const auto& a, const auto& b) {
                        if (a.second != b.second) return a.second > b.second;
                        return a.first < b.first;
                      });
    row.resize(keep);
    params.neighbors[i] = row;
  }
  return params;
}

}  // namespace

PolicyModel::PolicyModel(PolicyVariant variant, std::string name, int num_items,
                         PolicyHyperparams hp, Params params)
    : variant_(variant),
      name_(std::move(name)),
      num_items_(num_items),
      hp_(hp),
      params_(std::move(params)) {
  check_hyperparams(hp_, num_items_);
}

PolicyModel PolicyModel::fit(PolicyVariant variant, std::span<const OrganicEvent> organic,
                             int num_items, const PolicyHyperparams& hp) {
  check_hyperparams(hp, num_items);
  const bool needs_data = variant == PolicyVariant::kSvd || variant == PolicyVariant::kItemKnn ||
                          variant == PolicyVariant::kUserKnn;
  if (needs_data && organic.empty())
    throw DataError(std::string(to_string(variant)) + ": cannot fit on empty organic data");

  Params params;
  switch (variant) {
    case PolicyVariant::kRandom:
      params = RandomParams{};
      break;
    case PolicyVariant::kPersonalizedPopularity:
      params = PersonalizedPopularityParams{};
      break;
    case PolicyVariant::kPopularity: {
      PopularityParams p;
      p.item_counts = Eigen::VectorXd::Zero(num_items);
      for (const auto& ev : organic) {
        if (ev.item_id < 0 || ev.item_id >= num_items)
          throw DataError("organic event references item outside the catalog");
        p.item_counts[ev.item_id] += 1.0;
      }
      params = std::move(p);
      break;
    }
    case PolicyVariant::kSvd: {
      const Eigen::MatrixXd counts = interaction_matrix(organic, num_items);
      const SvdResult svd =
          truncated_svd(counts, hp.svd_rank, hp.svd_max_iters, hp.svd_tol, hp.seed);
      params = SvdParams{svd.item_factors, svd.singular_values};
      break;
    }
    case PolicyVariant::kItemKnn: {
      const Eigen::MatrixXd counts = interaction_matrix(organic, num_items);
      params = fit_item_knn(counts, hp.knn_k);
      break;
    }
    case PolicyVariant::kUserKnn: {
      UserKnnParams p;
      p.user_counts = interaction_matrix(organic, num_items);
      p.row_norms.resize(p.user_counts.rows());
      for (Eigen::Index u = 0; u < p.user_counts.rows(); ++u)
        p.row_norms[u] = p.user_counts.row(u).norm();
      params = std::move(p);
      break;
    }
  }
  return PolicyModel(variant, to_string(variant), num_items, hp, std::move(params));
}

PolicyModel PolicyModel::with_name(std::string name) const {
  return PolicyModel(variant_, std::move(name), num_items_, hp_, params_);
}

Eigen::VectorXd PolicyModel::score(const Eigen::VectorXi& context_views) const {
  if (context_views.size() != num_items_)
    throw std::invalid_argument("context length does not match the item catalog");

  switch (variant_) {
    case PolicyVariant::kRandom:
      return Eigen::VectorXd::Zero(num_items_);
    case PolicyVariant::kPopularity:
      return std::get<PopularityParams>(params_).item_counts;
    case PolicyVariant::kPersonalizedPopularity:
      return context_views.cast<double>();
    case PolicyVariant::kSvd: {
      const auto& p = std::get<SvdParams>(params_);
      const Eigen::VectorXd ctx = context_views.cast<double>();
      return p.item_factors * (p.item_factors.transpose() * ctx);
    }
    case PolicyVariant::kItemKnn: {
      const auto& p = std::get<ItemKnnParams>(params_);
      Eigen::VectorXd out = Eigen::VectorXd::Zero(num_items_);
      for (int i = 0; i < num_items_; ++i) {
        const int c = context_views[i];
        if (c == 0) continue;
        for (const auto& [j, sim] : p.neighbors[i]) out[j] += c * sim;
      }
      return out;
    }
    case PolicyVariant::kUserKnn: {
      const auto& p = std::get<UserKnnParams>(params_);
      const Eigen::VectorXd ctx = context_views.cast<double>();
      const double ctx_norm = ctx.norm();
      Eigen::VectorXd out = Eigen::VectorXd::Zero(num_items_);
      if (ctx_norm == 0.0 || p.user_counts.rows() == 0) return out;
      const Eigen::VectorXd dots = p.user_counts * ctx;
      std::vector<std::pair<double, int>> sims;  // (cosine, user)
      sims.reserve(p.user_counts.rows());
      for (Eigen::Index u = 0; u < p.user_counts.rows(); ++u) {
        const double d = p.row_norms[u] * ctx_norm;
        sims.emplace_back(d > 0.0 ? dots[u] / d : 0.0, static_cast<int>(u));
      }
      const size_t keep = std::min<size_t>(hp_.knn_k, sims.size());
      std::partial_sort(sims.begin(), sims.begin() + keep, sims.end(),
                        [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                        });
      for (size_t i = 0; i < keep; ++i) {
        const auto& [sim, user] = sims[i];
        if (sim <= 0.0) continue;
        out += sim * p.user_counts.row(user).transpose();
      }
      return out;
    }
  }
  return Eigen::VectorXd::Zero(num_items_);
}

Eigen::VectorXd PolicyModel::action_distribution(const Eigen::VectorXi& context_views) const {
  Eigen::VectorXd dist = softmax(score(context_views) / hp_.temperature);
  if (hp_.epsilon_floor > 0.0) {
    const double mix = hp_.epsilon_floor * num_items_;
    dist = (1.0 - mix) * dist;
    dist.array() += hp_.epsilon_floor;
  }
  return dist;
}

std::vector<int32_t> PolicyModel::rank(const Eigen::VectorXi& context_views, int n) const {
  if (n < 1 || n > num_items_) throw std::invalid_argument("rank: n out of range");
  if (context_views.size() != num_items_)
    throw std::invalid_argument("context length does not match the item catalog");

  std::vector<int32_t> items(num_items_);
  std::iota(items.begin(), items.end(), 0);

  if (variant_ == PolicyVariant::kRandom) {
    // partial Fisher-Yates keyed on (seed, context) so every context gets its
    // own deterministic permutation
    const uint64_t ctx_hash =
        fnv1a64(context_views.data(), sizeof(int32_t) * context_views.size());
    Rng rng({hp_.seed, kStreamPolicyRank, ctx_hash});
    for (int i = 0; i < n; ++i) {
      const auto j = i + static_cast<int>(rng.uniform_int(items.size() - i));
      std::swap(items[i], items[j]);
    }
    items.resize(n);
    return items;
  }

  const Eigen::VectorXd scores = score(context_views);
  const auto better = [&scores](int32_t a, int32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  };
  std::partial_sort(items.begin(), items.begin() + n, items.end(), better);
  items.resize(n);
  return items;
}

}  // namespace reco
