#pragma once

#include <utility>
#include <vector>

#include "treebo/kernel.hpp"
#include "treebo/linalg.hpp"

namespace treebo {

// Posterior of the additive model at a fixed (data, forest, params) triple.
// The single Cholesky factorization of K + eta^2 I happens at construction;
// the object is immutable afterwards, so rebuild it whenever the dataset,
// forest, or parameters change. Safe for concurrent read-only queries.
class PosteriorState {
 public:
  PosteriorState(Dataset data, DependencyForest forest, HyperParams params);
  // As above but reusing a caller-maintained gram matrix, which must equal
  // additive_gram(data.X, forest, params).
  PosteriorState(Dataset data, DependencyForest forest, HyperParams params, const Mat& gram);

  Eigen::Index size() const { return data_.size(); }
  const Dataset& data() const { return data_; }
  const DependencyForest& forest() const { return forest_; }
  const HyperParams& params() const { return params_; }
  const std::vector<VarGroup>& groups() const { return groups_; }

  // Posterior mean and variance of one component at one point. With no
  // observations this is the prior (0, component scale). The variance is
  // clamped at zero against floating-point cancellation.
  std::pair<double, double> component_posterior(const VarGroup& G, const Vec& x_star) const;
  std::pair<double, double> component_posterior_sub(const VarGroup& G, const Vec& x_sub) const;
  // Batched variant over the rows of X_sub (m x |G|).
  void component_posterior_sub_batch(const VarGroup& G, const Mat& X_sub, Vec& mean,
                                     Vec& var) const;

 private:
  void factorize(const Mat& gram);

  Dataset data_;
  DependencyForest forest_;
  HyperParams params_;
  std::vector<VarGroup> groups_;
  Eigen::LLT<Mat> llt_;  // of K + eta^2 I; untouched when size() == 0
  Vec alpha_;            // (K + eta^2 I)^{-1} y
};

// Log marginal likelihood of the data under the additive model:
//   -1/2 y' (K + eta^2 I)^{-1} y - 1/2 log |K + eta^2 I| - n/2 log(2 pi).
double log_marginal_likelihood(const DependencyForest& Z, const HyperParams& params,
                               const Dataset& data);
// Same value with a caller-supplied gram matrix for K.
double log_marginal_likelihood_gram(const Mat& gram, const HyperParams& params, const Vec& y);

// Gradient of the log marginal likelihood over [log lengthscales; log scale
// components]; the observation noise is a fixed constant, not a parameter.
Vec lml_gradient(const DependencyForest& Z, const HyperParams& params, const Dataset& data);

struct FitInfo {
  int iterations = 0;
  double rho = 0.0;                 // objective at the returned parameters
  double grad_norm = 0.0;           // at the returned parameters
  bool converged = false;           // gradient-norm tolerance reached
  bool line_search_failed = false;  // no ascent step was ever found
};

// Maximizes the log marginal likelihood over log-parameters with an L-BFGS
// ascent (Armijo backtracking, at most 100 iterations, gradient tolerance
// 1e-5, parameters clamped to [1e-3, 1e3]). Deterministic; returns params
// whose likelihood is never below the initial one, and the unchanged init if
// no ascent step succeeds.
HyperParams fit_hyperparameters(const Dataset& data, const DependencyForest& forest,
                                const HyperParams& init, FitInfo* info = nullptr);

}  // namespace treebo
