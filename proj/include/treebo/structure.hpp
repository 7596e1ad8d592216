#pragma once

#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "treebo/domain.hpp"
#include "treebo/gp.hpp"

namespace treebo {

// Disjoint sets with path compression and union by size; tracks the connected
// components of the forest being sampled.
class UnionFind {
 public:
  explicit UnionFind(int n);
  int find(int v);
  bool unite(int a, int b);  // false when already in the same set
  bool same(int a, int b);
  int component_size(int v);
  void reset(int n);
  void reset_from(const DependencyForest& forest);
  // Components as sorted vertex lists, ordered by smallest member.
  std::vector<std::vector<int>> components();

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

// True when adding edge (i, j) would close a cycle, i.e. the endpoints are
// already connected. Throws on i == j.
bool cycle_check(UnionFind& uf, int i, int j);

struct ScoredStructure {
  DependencyForest Z;
  double score;
};

// Structures visited during learning, with their likelihood scores. Every
// added structure is re-validated (symmetry, acyclicity) and scores must be
// finite.
class StructureSampleSet {
 public:
  void add(const DependencyForest& Z, double score);
  const std::vector<ScoredStructure>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  // Highest score; the earliest insertion wins ties.
  const ScoredStructure& best() const;

 private:
  std::vector<ScoredStructure> items_;
};

// Log-posteriors of the two states of edge (i, j) under a Bernoulli(gamma)
// prior: first = log(gamma) + rho(edge present), second = log(1 - gamma) +
// rho(edge absent), with rho the log marginal likelihood. Both variants must
// be valid forests.
std::pair<double, double> edge_posterior_logits(const DependencyForest& Z, int i, int j,
                                                const HyperParams& params, const Dataset& data,
                                                double gamma);

// p(edge present) from its two logits.
double edge_probability(double logit1, double logit0);

// Called after each sampled pair with the updated forest and union-find;
// lets audits verify invariants at per-step granularity.
using StructureAuditHook = std::function<void(const DependencyForest&, UnionFind&)>;

// One Gibbs growth sweep over pairs (i, j), j ascending outer and i < j inner.
// Each pair's own edge is first removed (so existing edges can be resampled
// off); pairs whose activation would close a cycle are skipped. Every sampled
// state is appended to `samples` with its score. The consumed count k grows
// once per pair considered, skipped ones included, and the sweep stops when k
// reaches sample_budget. Returns k. Precondition: Z has fewer than D-1 edges.
int gibbs_sweep(DependencyForest& Z, const HyperParams& params, const Dataset& data,
                double gamma, UnionFind& uf, int sample_budget, StructureSampleSet& samples,
                std::mt19937_64& rng, const StructureAuditHook& audit = {});

// Diversity move for a spanning state: removes a uniformly random existing
// edge, draws one endpoint uniformly from each resulting component, and
// samples that candidate edge from its posterior. Acceptance restores a
// spanning tree; rejection leaves a forest with one edge fewer. The resulting
// state is appended to `samples`. Returns the consumed count (1).
int mutate(DependencyForest& Z, const HyperParams& params, const Dataset& data, double gamma,
           StructureSampleSet& samples, std::mt19937_64& rng);

// Structure search driver: Gibbs growth while below D-1 edges, mutation at a
// spanning tree, until structure_samples samples are consumed; returns the
// visited structure with the highest likelihood score (Z_current when no
// samples were taken). Optionally exposes the visited set.
DependencyForest tree_learning(const DependencyForest& Z_current, const HyperParams& params,
                               const Dataset& data, int structure_samples, double gamma,
                               std::mt19937_64& rng, StructureSampleSet* visited = nullptr);

// Plain-text edge list, one "i j" pair per line, 0-based.
std::string to_edge_list(const DependencyForest& Z);
DependencyForest forest_from_edge_list(const std::string& text, int dim);

}  // namespace treebo
