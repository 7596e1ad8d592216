#pragma once

#include <atomic>
#include <random>
#include <vector>

#include "treebo/domain.hpp"
#include "treebo/gp.hpp"

namespace treebo {

// UCB exploration weight at iteration t >= 1: 0.5 * ln(2t) (natural log).
double beta(int t);

// Cumulative count of individual per-component acquisition evaluations (one
// per table entry computed). Monotone non-decreasing; atomic so concurrent
// table builders could share it.
class CostCounter {
 public:
  void add(long n) { count_.fetch_add(n, std::memory_order_relaxed); }
  long count() const { return count_.load(std::memory_order_relaxed); }

 private:
  std::atomic<long> count_{0};
};

// One axis of a product grid: cells partition [axis lo, axis hi] uniformly and
// each cell owns one representative strictly inside it.
struct DiscretizedAxis {
  int var = 0;
  Vec reps;
  Vec cell_lo;
  Vec cell_hi;
};

// Uniform-random representatives (one per cell), drawn in axis-major order;
// draws landing exactly on a cell boundary are rejected and retried.
std::vector<DiscretizedAxis> discretize_uniform(const BoxDomain& box, int cells_per_axis,
                                                std::mt19937_64& rng);
// Deterministic cell-midpoint representatives (the fixed grid of the discrete
// acquisition mode).
std::vector<DiscretizedAxis> discretize_midpoints(const BoxDomain& box, int levels);

// Evaluates the per-component acquisition on batches of sub-coordinate rows.
// UcbField is the instance used by the optimizer; tests drive the maximizer
// with synthetic fields through the same interface.
class ComponentField {
 public:
  virtual ~ComponentField() = default;
  virtual void eval(const VarGroup& G, const Mat& X_sub, Vec& out) const = 0;
};

// Upper confidence bound of one component: posterior mean plus
// sqrt(beta(t)) times posterior standard deviation.
class UcbField : public ComponentField {
 public:
  UcbField(const PosteriorState& state, int t);
  void eval(const VarGroup& G, const Mat& X_sub, Vec& out) const override;

 private:
  const PosteriorState& state_;
  double sqrt_beta_;
};

// Single-point component UCB; counts one acquisition evaluation.
double component_ucb(const PosteriorState& state, const VarGroup& G, const Vec& x_sub, int t,
                     CostCounter& counter);

// Acquisition values of one component tabulated over the grid. Entries are
// filled in row-major order (first axis index major); `evaluated` marks the
// filled prefix, which falls short of size() when the evaluation cap cut the
// table off. Entries past the prefix are zero and must not be read.
struct PhiTable {
  VarGroup group;
  Mat values;  // R_i x R_j for an edge, R x 1 for a singleton
  long evaluated = 0;
  long total() const { return static_cast<long>(values.size()); }
  bool complete() const { return evaluated == total(); }
};

// Tabulates every component of the forest over the grid, in canonical
// component order (edges lexicographic, then isolated vertices), spending at
// most `cap` entries in total (cap < 0 disables the cap). The counter grows
// once per entry computed.
std::vector<PhiTable> build_phi_tables(const ComponentField& field,
                                       const DependencyForest& forest,
                                       const std::vector<DiscretizedAxis>& axes,
                                       CostCounter& counter, long cap);

struct MsgPassingResult {
  std::vector<int> idx;  // chosen representative index per axis
  Vec x;                 // chosen representative coordinates
  double value = 0.0;    // attained sum over the tables that were used
};

// Maximizes the sum of the tabulated component functions over the product
// grid. Completely tabulated components are solved exactly by max-sum message
// passing on each tree (root: lowest vertex index; argmax ties break toward
// the lowest grid index). Partially tabulated components contribute their
// best evaluated entry, assigning only coordinates the exact pass left free;
// axes no table touches default to grid index 0.
MsgPassingResult msg_passing_discrete(const std::vector<DiscretizedAxis>& axes,
                                      const DependencyForest& forest,
                                      const std::vector<PhiTable>& tables);

struct ZoomStep {
  BoxDomain bounds;                  // the cell owning the selection, per axis
  std::vector<DiscretizedAxis> axes;  // that cell re-partitioned with fresh reps
};

// Zoom move: shrink to the cell of the selected representative on each axis,
// then re-discretize with fresh uniform representatives.
ZoomStep zoom_strategy(const Vec& selected_x, const BoxDomain& current_bounds, int R,
                       std::mt19937_64& rng);

// Recursive zooming maximizer for continuous domains: L levels of discretize /
// maximize / shrink, no evaluation cap, returning the last level's selection.
MsgPassingResult msg_passing_continuous(const BoxDomain& domain, const DependencyForest& forest,
                                        const PosteriorState& state, int t, int R, int L,
                                        std::mt19937_64& rng, CostCounter& counter);
// Same machinery over an arbitrary component field.
MsgPassingResult msg_passing_continuous_field(const BoxDomain& domain,
                                              const DependencyForest& forest,
                                              const ComponentField& field, int R, int L,
                                              std::mt19937_64& rng, CostCounter& counter);

}  // namespace treebo
