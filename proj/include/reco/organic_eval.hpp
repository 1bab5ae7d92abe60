#pragma once

#include "reco/data.hpp"
#include "reco/policies.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace reco {

// One leave-one-out split: exactly one held-out event per user with at
// least two organic events; everything else is training data.
struct LoocvSplit {
  uint64_t fold_seed = 0;
  std::vector<OrganicEvent> training;       // original events minus held-out
  std::vector<int64_t> eval_users;          // ascending user id
  std::vector<int32_t> held_out_items;      // parallel to eval_users
  std::vector<ContextCounts> eval_contexts; // training-portion counts per eval user
  int64_t excluded_users = 0;               // users with fewer than 2 events
};

LoocvSplit make_split(std::span<const OrganicEvent> organic, int num_items, uint64_t fold_seed);

// Fraction of eval users whose held-out item appears in the model's top-k
// for their training-context counts.
double hit_rate_at_k(const PolicyModel& model, const LoocvSplit& split, int num_items, int k = 1);

struct HitRateReport {
  std::string policy;
  int k_folds = 0;
  std::vector<double> per_fold_hr;  // HR@1 per fold
  double mean = 0.0;
  double stddev = 0.0;  // sample std across folds (0 when k_folds < 2)
  int64_t excluded_users = 0;
  int64_t users_evaluated = 0;  // per fold; eligibility depends only on the data
  bool defined = false;         // false when no user could be evaluated
};

// k_folds independent splits (fold seed = root_seed + fold), refitting every
// variant on each fold's training portion.
std::vector<HitRateReport> run_loocv(std::span<const OrganicEvent> organic,
                                     std::span<const PolicyVariant> variants, int num_items,
                                     const PolicyHyperparams& hp, int k_folds, uint64_t root_seed,
                                     int threads = 1);

}  // namespace reco
