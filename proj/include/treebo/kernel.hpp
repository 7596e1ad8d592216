#pragma once

#include <map>
#include <vector>

#include "treebo/domain.hpp"

namespace treebo {

// Amplitude of one component: sqrt of the sum of squared per-dimension scale
// components over the group. Enters the kernel linearly (not squared).
double component_scale(const VarGroup& G, const Vec& scale_components);

// RBF over the sub-coordinates of one group with per-dimension lengthscales:
//   k(a, b) = component_scale(G) * exp(-1/2 sum_i (a_i - b_i)^2 / l_i^2),
// where the sums index the global dimensions listed in G and a, b hold just
// those |G| coordinates. Symmetric in (a, b); equals the component scale at
// zero distance.
double kernel_eval(const VarGroup& G, const Vec& a_sub, const Vec& b_sub,
                   const HyperParams& params);

// Coordinate extraction helpers (points are rows).
Vec subvector(const Vec& x, const VarGroup& G);
Mat subcolumns(const Mat& X, const VarGroup& G);

// Gram matrix of the additive kernel: K[a,b] = sum over components of the
// component kernel. additive_gram validates the forest; the _groups variant
// accepts any group list (used for general-graph benchmark objectives).
Mat additive_gram(const Mat& X, const DependencyForest& forest, const HyperParams& params);
Mat additive_gram_groups(const Mat& X, const std::vector<VarGroup>& groups,
                         const HyperParams& params);

// Cross-covariance of one component between two row-point sets, either in
// full coordinates (m x D) or already restricted to the group (m x |G|).
Mat component_cross(const VarGroup& G, const Mat& A, const Mat& B, const HyperParams& params);
Mat component_cross_sub(const VarGroup& G, const Mat& A_sub, const Mat& B_sub,
                        const HyperParams& params);

// Partial derivatives of the gram matrix with respect to each log-lengthscale
// (entries 0..D-1) and each log-scale-component (entries D..2D-1). Scale
// components reach the kernel through the component amplitude, so the chain
// rule through the square root is applied.
std::vector<Mat> kernel_grad(const Mat& X, const DependencyForest& forest,
                             const HyperParams& params);

// Per-dimension RBF factors exp(-1/2 (x_di - x_dj)^2 / l_d^2) over a fixed
// point set, computed lazily and cached. Lets structure search assemble the
// gram of a candidate forest, or the delta from toggling one edge, in O(n^2)
// per component instead of re-deriving every distance. Valid only while the
// points and parameters it was built from stay fixed.
class KernelFactorCache {
 public:
  KernelFactorCache(Mat X, HyperParams params);

  const Mat& factor(int d) const;
  Mat group_gram(const VarGroup& G) const;
  Mat gram(const std::vector<VarGroup>& groups) const;
  Eigen::Index n() const { return X_.rows(); }
  const HyperParams& params() const { return params_; }

 private:
  Mat X_;
  HyperParams params_;
  mutable std::map<int, Mat> factors_;
};

}  // namespace treebo
