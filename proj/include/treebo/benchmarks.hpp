#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "treebo/domain.hpp"
#include "treebo/optimizer.hpp"

namespace treebo {

// Named dependency-graph shapes for synthetic objectives.
struct StructureSpec {
  std::string kind;        // "star" | "grid" | "partition"
  int size = 0;            // star / partition: total vertex count
  int rows = 0, cols = 0;  // grid shape
};

// star: hub 0 joined to every other vertex. grid: rows x cols lattice.
// partition: disjoint triangles over consecutive vertex triples. Grids and
// partitions contain cycles; they define objectives, not model structures.
AdjacencyMatrix make_structure(const StructureSpec& spec);

// One draw from an additive GP prior over the given dependency graph,
// realized lazily: each fresh query point is sampled conditional on every
// point seen before, then cached, so repeated queries are consistent and the
// whole function is defined on the continuous domain.
class GpSampleFunction {
 public:
  GpSampleFunction(AdjacencyMatrix adjacency, HyperParams params, std::uint64_t seed);

  double operator()(const Vec& x);  // samples on first visit, cached afterwards

  Eigen::Index dim() const { return adjacency_.rows(); }
  Eigen::Index cache_size() const { return n_; }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  const HyperParams& params() const { return params_; }

  // Text serialization: cached points, values, and generator state. Loading
  // rebuilds the conditioning factors by replaying the cache in order, so
  // subsequent draws continue bit-identically.
  void save(std::ostream& os) const;
  static GpSampleFunction load(std::istream& is);

 private:
  struct Predict {
    Vec w;        // back-solved cross-covariance against the cache
    double mean = 0.0;
    double sd = 0.0;
  };
  Predict predict(const Vec& x) const;
  void append(const Vec& x, double value, const Predict& p);
  void reserve(Eigen::Index cap);

  AdjacencyMatrix adjacency_;
  std::vector<VarGroup> groups_;
  HyperParams params_;
  std::mt19937_64 rng_;
  double k_self_ = 0.0;  // prior variance at any point
  double nugget_ = 0.0;
  double sd_floor_ = 0.0;
  Eigen::Index n_ = 0;
  Mat X_;  // cached points (first n_ rows)
  Vec f_;
  Mat L_;  // Cholesky of the cached gram + nugget, grown one row per point
  Vec u_;  // L^{-1} f over the cache
  std::map<std::string, Eigen::Index> index_;  // bitwise coordinate key -> row
};

// Shared-ownership factory; the returned object is meant to back the
// observe/truth closures of a single run.
std::shared_ptr<GpSampleFunction> sample_gp_function(const AdjacencyMatrix& adjacency,
                                                     const HyperParams& params,
                                                     std::uint64_t seed);

// Negated Styblinski-Tang on [-5,5]^D: fully separable, maximized at the same
// coordinate in every dimension.
double stybtang(const Vec& x);
double stybtang_argmax_1d();            // per-dimension maximizer
double stybtang_max_value(int dim);     // global maximum value

// Standard 6-D Hartmann in maximization form on [0,1]^6.
double hartmann6(const Vec& x);
Vec hartmann6_argmax();
double hartmann6_max_value();

// Pads an objective with inert trailing dimensions: the wrapper reads only
// the leading coordinates.
ObjectiveFn augment_aux(ObjectiveFn f, int aux_dims);

// Adds independent Gaussian observation noise per call; std = 0 returns f
// unchanged and never touches the generator.
ObjectiveFn with_noise(ObjectiveFn f, double noise_std, std::shared_ptr<std::mt19937_64> rng);

}  // namespace treebo
