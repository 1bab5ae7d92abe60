#pragma once

#include "reco/data.hpp"
#include "reco/policies.hpp"
#include "reco/rng.hpp"

#include <Eigen/Dense>
#include <cstdint>

namespace reco {

struct EnvConfig {
  int num_items = 50;        // P
  int latent_dim = 16;       // K
  double user_drift_sigma = 0.05;
  double click_scale = 1.0;
  double click_offset = -6.0;
  double organic_events_mean = 20.0;
  double bandit_events_mean = 80.0;
  uint64_t seed = 0;

  bool operator==(const EnvConfig&) const = default;
};

// Throws ConfigError when a field is out of range.
void validate(const EnvConfig& cfg);

// A simulated user: latent interest vector plus the private random stream
// that drives their events.
struct UserState {
  uint64_t user_id = 0;
  Eigen::VectorXd omega;
  uint64_t step = 0;
  Rng rng{{0}};
};

enum class Phase : uint64_t { kTrain = 0, kTest = 1 };
const char* to_string(Phase phase);

// Stochastic environment: a fixed item catalog, users whose interests drift
// over time, organic views drawn from a softmax over item-user affinity and
// clicks from a sigmoid of the same affinity. Immutable after construction
// and safe to share across threads.
class Environment {
 public:
  explicit Environment(EnvConfig cfg);

  const EnvConfig& config() const { return cfg_; }
  const Eigen::MatrixXd& embeddings() const { return embeddings_; }  // P x K

  UserState spawn_user(uint64_t user_id) const { return spawn_user(0, user_id); }
  // Populations keep train/test/ab user streams disjoint.
  UserState spawn_user(uint64_t population, uint64_t index) const;

  // omega += user_drift_sigma * N(0, I); consumes from the state's stream.
  void drift(UserState& state) const;

  // softmax(embeddings * omega); strictly positive, sums to 1 within 1e-12.
  Eigen::VectorXd organic_distribution(const UserState& state) const;

  // sigmoid(click_scale * <embedding_action, omega> + click_offset).
  double click_probability(const UserState& state, int32_t action) const;

  // Per user: an organic block (sampled views with drift between events)
  // followed by a bandit block where actions come from the logging policy
  // conditioned on the realized organic counts. Block lengths are Poisson
  // with the configured means. Bit-reproducible for a fixed (seed,
  // num_users, phase) at any thread count.
  Dataset generate_dataset(int num_users, const PolicyModel& logging_policy, Phase phase,
                           int threads = 1) const;

 private:
  EnvConfig cfg_;
  Eigen::MatrixXd embeddings_;
};

// Bisects click_offset until the Monte-Carlo mean click probability over
// (fresh user, uniform action) draws hits target_rate. The MC sample is
// fixed per call, so the objective is exactly monotone in the offset.
double calibrate_click_offset(const EnvConfig& cfg, double target_rate, int samples = 10000);

}  // namespace reco
