#include "reco/env.hpp"

#include "reco/errors.hpp"
#include "reco/numeric.hpp"
#include "reco/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace reco {

void validate(const EnvConfig& cfg) {
  if (cfg.num_items < 2) throw ConfigError("num_items must be at least 2");
  if (cfg.latent_dim < 1) throw ConfigError("latent_dim must be at least 1");
  if (cfg.user_drift_sigma < 0.0) throw ConfigError("user_drift_sigma must be non-negative");
  if (!(cfg.organic_events_mean > 0.0)) throw ConfigError("organic_events_mean must be positive");
  if (!(cfg.bandit_events_mean > 0.0)) throw ConfigError("bandit_events_mean must be positive");
  if (!std::isfinite(cfg.click_scale) || !std::isfinite(cfg.click_offset))
    throw ConfigError("click model parameters must be finite");
}

const char* to_string(Phase phase) { return phase == Phase::kTrain ? "train" : "test"; }

Environment::Environment(EnvConfig cfg) : cfg_(cfg) {
  validate(cfg_);
  Rng rng({cfg_.seed, kStreamEmbeddings});
  embeddings_.resize(cfg_.num_items, cfg_.latent_dim);
  for (int i = 0; i < cfg_.num_items; ++i)
    for (int k = 0; k < cfg_.latent_dim; ++k) embeddings_(i, k) = rng.normal();
}

UserState Environment::spawn_user(uint64_t population, uint64_t index) const {
  UserState state;
  state.user_id = index;
  state.step = 0;
  state.rng = Rng({cfg_.seed, kStreamUser, population, index});
  state.omega.resize(cfg_.latent_dim);
  for (int k = 0; k < cfg_.latent_dim; ++k) state.omega[k] = state.rng.normal();
  return state;
}

void Environment::drift(UserState& state) const {
  for (int k = 0; k < cfg_.latent_dim; ++k)
    state.omega[k] += cfg_.user_drift_sigma * state.rng.normal();
  ++state.step;
}

Eigen::VectorXd Environment::organic_distribution(const UserState& state) const {
  return softmax(embeddings_ * state.omega);
}

double Environment::click_probability(const UserState& state, int32_t action) const {
  if (action < 0 || action >= cfg_.num_items)
    throw std::invalid_argument("click_probability: action outside the catalog");
  const double affinity = embeddings_.row(action).dot(state.omega);
  return sigmoid(cfg_.click_scale * affinity + cfg_.click_offset);
}

namespace {

struct UserBlock {
  std::vector<OrganicEvent> organic;
  std::vector<BanditLog> bandit;
  double click_prob_sum = 0.0;
};

}  // namespace

Dataset Environment::generate_dataset(int num_users, const PolicyModel& logging_policy,
                                      Phase phase, int threads) const {
  if (num_users < 0) throw ConfigError("num_users must be non-negative");
  if (logging_policy.num_items() != cfg_.num_items)
    throw ConfigError("logging policy was built for a different item catalog");

  const int p = cfg_.num_items;
  std::vector<UserBlock> blocks(num_users);
  std::atomic<bool> support_violation{false};

  parallel_for(num_users, threads, [&](size_t begin, size_t end) {
    for (size_t u = begin; u < end; ++u) {
      UserBlock& block = blocks[u];
      UserState state = spawn_user(static_cast<uint64_t>(phase), u);
      Eigen::VectorXi counts = Eigen::VectorXi::Zero(p);
      int32_t seq = 0;

      const int64_t n_organic = state.rng.poisson(cfg_.organic_events_mean);
      for (int64_t e = 0; e < n_organic; ++e) {
        const Eigen::VectorXd dist = organic_distribution(state);
        const auto item = static_cast<int32_t>(state.rng.categorical(dist.data(), p));
        block.organic.push_back({static_cast<int64_t>(u), seq++, item});
        counts[item] += 1;
        drift(state);
      }

      const int64_t n_bandit = state.rng.poisson(cfg_.bandit_events_mean);
      if (n_bandit > 0) {
        const Eigen::VectorXd log_dist = logging_policy.action_distribution(counts);
        if (log_dist.minCoeff() <= 0.0) {
          support_violation.store(true);
          return;
        }
        const auto context = std::make_shared<const ContextCounts>(sparse_counts(counts));
        for (int64_t e = 0; e < n_bandit; ++e) {
          const auto action = static_cast<int32_t>(state.rng.categorical(log_dist.data(), p));
          const double q = click_probability(state, action);
          const int8_t click = state.rng.bernoulli(q) ? 1 : 0;
          block.bandit.push_back(
              {static_cast<int64_t>(u), seq++, context, action, log_dist[action], click});
          block.click_prob_sum += q;
          drift(state);
        }
      }
    }
  });

  if (support_violation.load())
    throw DataError("logging policy assigns zero probability to some action (support violation)");

  Dataset ds;
  ds.num_items = p;
  ds.seed = cfg_.seed;
  NeumaierSum qsum;
  for (auto& block : blocks) {
    ds.organic.insert(ds.organic.end(), block.organic.begin(), block.organic.end());
    ds.bandit.insert(ds.bandit.end(), block.bandit.begin(), block.bandit.end());
    qsum.add(block.click_prob_sum);
  }
  ds.stats.click_prob_sum = qsum.value();
  return ds;
}

double calibrate_click_offset(const EnvConfig& cfg, double target_rate, int samples) {
  validate(cfg);
  if (!(target_rate > 0.0 && target_rate < 1.0))
    throw ConfigError("calibration target rate must lie in (0, 1)");
  if (samples < 1) throw ConfigError("calibration needs at least one sample");

  const Environment env(cfg);
  // fixed MC sample of affinities; the mean click rate is then exactly
  // monotone in the offset
  Rng rng({cfg.seed, kStreamCalibration});
  std::vector<double> affinities(samples);
  for (int i = 0; i < samples; ++i) {
    Eigen::VectorXd omega(cfg.latent_dim);
    for (int k = 0; k < cfg.latent_dim; ++k) omega[k] = rng.normal();
    const auto action = static_cast<int32_t>(rng.uniform_int(cfg.num_items));
    affinities[i] = cfg.click_scale * env.embeddings().row(action).dot(omega);
  }
  const auto mean_rate = [&](double offset) {
    NeumaierSum acc;
    for (double a : affinities) acc.add(sigmoid(a + offset));
    return acc.value() / samples;
  };

  double lo = -60.0, hi = 60.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mean_rate(mid) < target_rate) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace reco
