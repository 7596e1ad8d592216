#pragma once

#include <optional>
#include <vector>

#include "treebo/domain.hpp"
#include "treebo/optimizer.hpp"

namespace treebo {

// Harmonic mean of edge precision and recall between two graphs on the same
// vertex set: 2·|E ∩ E_ref| / (|E| + |E_ref|). Both edge sets empty -> 1;
// exactly one empty -> 0.
double f1_score(const AdjacencyMatrix& G, const AdjacencyMatrix& G_ref);

// Per-iteration curves of one run.
struct MetricSeries {
  std::vector<double> regret;  // best regret; running best value when f_max is unknown
  std::vector<double> f1;      // structure F1 active at each iteration (may be empty)
  std::vector<long> cost;      // cumulative acquisition evaluations
  bool regret_is_fallback = false;  // true: `regret` holds best values, larger is better
};

// Regret curve of a trace: f_max minus the running max of noise-free values
// when f_max is known; otherwise the running-best-value curve itself
// (regret_is_fallback set). The cost curve is copied alongside.
MetricSeries best_regret(const RunTrace& trace, std::optional<double> f_max);

// F1 against a reference graph of the structure active at each iteration;
// piecewise-constant between structure snapshots.
std::vector<double> f1_series(const RunTrace& trace, const AdjacencyMatrix& truth);

// Pointwise mean and ±0.25·std band over runs of one metric.
struct AggregateCurve {
  std::vector<double> mean;
  std::vector<double> half_width;  // 0.25 × sample standard deviation (n−1)
};

// Requires at least two equal-length runs.
AggregateCurve aggregate_runs(const std::vector<std::vector<double>>& series);

}  // namespace treebo
