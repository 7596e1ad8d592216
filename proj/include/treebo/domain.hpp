#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "treebo/types.hpp"

namespace treebo {

// Axis-aligned box, the search domain: one closed interval per dimension.
struct BoxDomain {
  Vec lower;
  Vec upper;

  Eigen::Index dim() const { return lower.size(); }
  bool contains(const Vec& x) const;
  void validate() const;  // throws std::invalid_argument

  static BoxDomain unit(Eigen::Index d);                        // [0,1]^d
  static BoxDomain cube(Eigen::Index d, double lo, double hi);  // [lo,hi]^d
};

// A variable group: the indices of one additive component, either a single
// variable or an edge pair, always sorted ascending.
using VarGroup = std::vector<int>;

// Symmetric binary adjacency over D variables, constrained to be acyclic.
// Edges are the two-variable components of the additive decomposition,
// isolated vertices the one-variable components.
class DependencyForest {
 public:
  DependencyForest() = default;
  explicit DependencyForest(int dim);
  DependencyForest(int dim, const std::vector<std::pair<int, int>>& edge_list);
  // Validates symmetry, zero diagonal, 0/1 entries, and acyclicity.
  static DependencyForest from_adjacency(const AdjacencyMatrix& Z);

  int dim() const { return static_cast<int>(adj_.rows()); }
  int edge_count() const { return edge_count_; }
  bool has_edge(int i, int j) const;
  // Keeps the adjacency symmetric. Does not re-check acyclicity; samplers
  // guarantee it structurally and validate() is available for audits.
  void set_edge(int i, int j, bool present);
  int degree(int v) const;
  std::vector<std::pair<int, int>> edges() const;  // lexicographic, i < j
  const AdjacencyMatrix& adjacency() const { return adj_; }
  void validate() const;  // throws std::invalid_argument
  bool same_adjacency(const DependencyForest& other) const;

 private:
  AdjacencyMatrix adj_;
  int edge_count_ = 0;
};

// The additive decomposition induced by a forest: one group per edge in
// lexicographic (i, j) order, then one singleton per isolated vertex in
// ascending order. Validates the forest first.
std::vector<VarGroup> components_of(const DependencyForest& forest);

// Same decomposition rule for a general symmetric graph (cycles allowed);
// used for benchmark objectives whose true structure need not be a forest.
std::vector<VarGroup> groups_of_adjacency(const AdjacencyMatrix& A);

// Per-dimension kernel parameters. Lengthscales and scale components must be
// strictly positive; optimization happens in log-space, which enforces that.
struct HyperParams {
  Vec lengthscales;
  Vec scale_components;
  double noise_std = 0.1;  // observation noise std; held fixed by the fitter

  Eigen::Index dim() const { return lengthscales.size(); }
  void validate() const;
  Vec log_params() const;  // [log lengthscales; log scale_components]
  static HyperParams from_log(const Vec& theta, double noise_std);
  static HyperParams constant(Eigen::Index dim, double lengthscale, double scale,
                              double noise_std);
};

// Ordered observations; one point per row of X.
struct Dataset {
  Mat X;
  Vec y;

  Eigen::Index size() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
  void append(const Vec& x, double value);
  void validate_in(const BoxDomain& box) const;  // bounds + length agreement
};

enum class AcqMode { continuous, discrete };

// One optimization run's knobs. The default member values are the standard
// configuration; validate_config checks the invariants and reports the first
// violated one by field name.
struct RunConfig {
  int n_init = 10;                   // initial uniform samples
  int n_iter = 1000;                 // total evaluation budget
  int relearn_interval = 15;         // structure/parameter relearn period
  int structure_samples = 250;       // structure samples per relearn
  double gibbs_prior = 0.5;          // Bernoulli prior on each edge
  int discrete_levels = 50;          // grid points per axis (discrete mode)
  int zoom_grid = 4;                 // cells per axis per zoom level
  int zoom_levels = 4;               // zoom refinement depth
  long acquisition_eval_cap = 1000;  // per-call table-entry cap (discrete mode)
  std::uint64_t seed = 0;
  AcqMode mode = AcqMode::continuous;
  double noise_std = 0.1;        // model eta
  double init_lengthscale = 0.1; // initial per-dimension lengthscale
  double init_scale = 0.5;       // initial per-dimension scale component
};

RunConfig validate_config(const RunConfig& cfg, const BoxDomain& domain);

const char* to_string(AcqMode mode);
AcqMode acq_mode_from_string(const std::string& s);

}  // namespace treebo
