#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treebo/acquisition.hpp"
#include "treebo/domain.hpp"
#include "treebo/gp.hpp"

namespace treebo {

using ObjectiveFn = std::function<double(const Vec&)>;

// Two views of one objective: observe() is what the optimizer is allowed to
// see (typically noisy); truth() is the noise-free value kept for reporting.
struct NoisyObjective {
  ObjectiveFn observe;
  ObjectiveFn truth;
};

struct IterationRecord {
  int t = 0;             // 1-based evaluation index
  Vec x;                 // evaluated point
  double y = 0.0;        // observed value
  double f_true = 0.0;   // noise-free value at x
  double best_y = 0.0;   // running max of observed values
  long cum_cost = 0;     // cumulative acquisition evaluations so far
  double wall_time_s = 0.0;  // seconds since run start (not reproducible)
  bool relearn = false;  // structure + hyperparameters were refreshed this step
};

struct StructureSnapshot {
  int t = 0;  // snapshot taken before selecting the point of step t (t=0: start)
  AdjacencyMatrix adjacency;
};

struct RunTrace {
  std::vector<IterationRecord> records;
  std::vector<StructureSnapshot> structure_snapshots;
  DependencyForest final_forest{0};
  HyperParams final_params;
  bool aborted = false;       // an exception cut the run short
  std::string abort_reason;
  int best_index = -1;  // record index of the highest observed value (-1: none)
};

// Ground-truth model for the oracle baseline: structure and hyperparameters
// are pinned to these and never relearned.
struct OracleTruth {
  DependencyForest forest{0};
  HyperParams params;
};

// Full method: random initial design, then UCB maximization over the learned
// additive structure, relearning structure + hyperparameters every
// relearn_interval steps.
RunTrace run_tree_gp_ucb(const NoisyObjective& obj, const BoxDomain& domain,
                         const RunConfig& cfg);

// Uniform random search. Draws from the same stream as the initial design, so
// its first n_init points coincide with run_tree_gp_ucb's under the same seed.
RunTrace run_random(const NoisyObjective& obj, const BoxDomain& domain, const RunConfig& cfg);

// UCB with the true structure and hyperparameters held fixed.
RunTrace run_oracle(const NoisyObjective& obj, const BoxDomain& domain, const RunConfig& cfg,
                    const OracleTruth& truth);

}  // namespace treebo
