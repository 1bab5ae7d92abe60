#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace reco {

// One natural (non-recommended) user-item view.
struct OrganicEvent {
  int64_t user_id = 0;
  int32_t seq_index = 0;  // strictly increasing within a user's session
  int32_t item_id = 0;
};

// Sparse organic view counts: (item, count) pairs, ascending by item.
using ContextCounts = std::vector<std::pair<int32_t, int32_t>>;

// One logged recommendation: the user context at log time, the shown
// action, the logging policy's exact probability of it, and the click.
struct BanditLog {
  int64_t user_id = 0;
  int32_t seq_index = 0;
  std::shared_ptr<const ContextCounts> context_views;  // shared across a user's block
  int32_t action = 0;
  double propensity = 0.0;  // in (0, 1)
  int8_t click = 0;
};

// Generation-time diagnostics kept alongside a dataset; not serialized.
struct DatasetStats {
  double click_prob_sum = 0.0;  // sum of true click probabilities over bandit events
};

struct Dataset {
  std::vector<OrganicEvent> organic;
  std::vector<BanditLog> bandit;
  int num_items = 0;
  uint64_t seed = 0;
  DatasetStats stats;
};

Eigen::VectorXi dense_counts(const ContextCounts& sparse, int num_items);
ContextCounts sparse_counts(const Eigen::VectorXi& dense);

}  // namespace reco
