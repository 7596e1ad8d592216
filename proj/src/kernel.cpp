#include "treebo/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace treebo {

namespace {

void check_group(const VarGroup& G, Eigen::Index dim) {
  if (G.empty()) throw std::invalid_argument("variable group must be non-empty");
  if (G.size() > 2) throw std::invalid_argument("variable groups have at most two members");
  for (const int d : G)
    if (d < 0 || d >= dim) throw std::invalid_argument("group index out of range");
  if (G.size() == 2 && !(G[0] < G[1]))
    throw std::invalid_argument("group indices must be ascending");
}

// Scaled squared-distance matrix along one dimension between two coordinate
// columns: out[a,b] = (u[a] - v[b])^2 / l^2.
Mat scaled_sqdist(const Vec& u, const Vec& v, double lengthscale) {
  const double inv = 1.0 / (lengthscale * lengthscale);
  Mat out(u.size(), v.size());
  for (Eigen::Index b = 0; b < v.size(); ++b)
    out.col(b) = (u.array() - v[b]).square() * inv;
  return out;
}

}  // namespace

double component_scale(const VarGroup& G, const Vec& scale_components) {
  check_group(G, scale_components.size());
  double ss = 0.0;
  for (const int d : G) {
    const double s = scale_components[d];
    if (!(s > 0.0)) throw std::invalid_argument("scale_components must be strictly positive");
    ss += s * s;
  }
  return std::sqrt(ss);
}

double kernel_eval(const VarGroup& G, const Vec& a_sub, const Vec& b_sub,
                   const HyperParams& params) {
  check_group(G, params.dim());
  if (a_sub.size() != static_cast<Eigen::Index>(G.size()) ||
      b_sub.size() != static_cast<Eigen::Index>(G.size()))
    throw std::invalid_argument("sub-vector length must match the group size");
  double e = 0.0;
  for (std::size_t k = 0; k < G.size(); ++k) {
    const double l = params.lengthscales[G[k]];
    const double d = a_sub[static_cast<Eigen::Index>(k)] - b_sub[static_cast<Eigen::Index>(k)];
    e += (d * d) / (l * l);
  }
  return component_scale(G, params.scale_components) * std::exp(-0.5 * e);
}

Vec subvector(const Vec& x, const VarGroup& G) {
  Vec out(static_cast<Eigen::Index>(G.size()));
  for (std::size_t k = 0; k < G.size(); ++k) out[static_cast<Eigen::Index>(k)] = x[G[k]];
  return out;
}

Mat subcolumns(const Mat& X, const VarGroup& G) {
  Mat out(X.rows(), static_cast<Eigen::Index>(G.size()));
  for (std::size_t k = 0; k < G.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = X.col(G[k]);
  return out;
}

Mat additive_gram(const Mat& X, const DependencyForest& forest, const HyperParams& params) {
  return additive_gram_groups(X, components_of(forest), params);
}

Mat additive_gram_groups(const Mat& X, const std::vector<VarGroup>& groups,
                         const HyperParams& params) {
  if (X.rows() < 1) throw std::invalid_argument("gram matrix needs at least one point");
  if (X.cols() != params.dim())
    throw std::invalid_argument("points and hyperparameters disagree on dimension");
  const Eigen::Index n = X.rows();
  Mat K = Mat::Zero(n, n);
  // Scaled distances along one dimension are shared by every group containing
  // it (the hub of a star appears in many), so cache them per call.
  std::map<int, Mat> dist;
  auto dist_of = [&](int d) -> const Mat& {
    auto it = dist.find(d);
    if (it == dist.end())
      it = dist.emplace(d, scaled_sqdist(X.col(d), X.col(d), params.lengthscales[d])).first;
    return it->second;
  };
  for (const VarGroup& G : groups) {
    check_group(G, params.dim());
    const double sg = component_scale(G, params.scale_components);
    Mat e = dist_of(G[0]);
    if (G.size() == 2) e += dist_of(G[1]);
    K.noalias() += sg * (-0.5 * e).array().exp().matrix();
  }
  return K;
}

Mat component_cross(const VarGroup& G, const Mat& A, const Mat& B, const HyperParams& params) {
  return component_cross_sub(G, subcolumns(A, G), subcolumns(B, G), params);
}

Mat component_cross_sub(const VarGroup& G, const Mat& A_sub, const Mat& B_sub,
                        const HyperParams& params) {
  check_group(G, params.dim());
  if (A_sub.cols() != static_cast<Eigen::Index>(G.size()) ||
      B_sub.cols() != static_cast<Eigen::Index>(G.size()))
    throw std::invalid_argument("sub-coordinate column count must match the group size");
  const double sg = component_scale(G, params.scale_components);
  Mat e = scaled_sqdist(A_sub.col(0), B_sub.col(0), params.lengthscales[G[0]]);
  if (G.size() == 2)
    e += scaled_sqdist(A_sub.col(1), B_sub.col(1), params.lengthscales[G[1]]);
  return sg * (-0.5 * e).array().exp().matrix();
}

std::vector<Mat> kernel_grad(const Mat& X, const DependencyForest& forest,
                             const HyperParams& params) {
  const auto groups = components_of(forest);
  if (X.rows() < 1) throw std::invalid_argument("gradient needs at least one point");
  if (X.cols() != params.dim())
    throw std::invalid_argument("points and hyperparameters disagree on dimension");
  const Eigen::Index n = X.rows();
  const Eigen::Index D = params.dim();
  std::vector<Mat> grads(static_cast<std::size_t>(2 * D), Mat::Zero(n, n));

  std::map<int, Mat> dist;
  auto dist_of = [&](int d) -> const Mat& {
    auto it = dist.find(d);
    if (it == dist.end())
      it = dist.emplace(d, scaled_sqdist(X.col(d), X.col(d), params.lengthscales[d])).first;
    return it->second;
  };

  for (const VarGroup& G : groups) {
    const double sg = component_scale(G, params.scale_components);
    Mat e = dist_of(G[0]);
    if (G.size() == 2) e += dist_of(G[1]);
    const Mat P = sg * (-0.5 * e).array().exp().matrix();  // this component's gram block
    for (const int d : G) {
      // d/dlog l_d: the exponent contributes +dist_d (the -1/2 and the -2 from
      // differentiating l^-2 in log-space cancel to +1).
      grads[static_cast<std::size_t>(d)].noalias() += P.cwiseProduct(dist_of(d));
      // d/dlog s_d: through the amplitude, s_d^2 / sg^2 of the block.
      const double s = params.scale_components[d];
      grads[static_cast<std::size_t>(D + d)].noalias() += (s * s / (sg * sg)) * P;
    }
  }
  return grads;
}

KernelFactorCache::KernelFactorCache(Mat X, HyperParams params)
    : X_(std::move(X)), params_(std::move(params)) {
  if (X_.cols() != params_.dim())
    throw std::invalid_argument("points and hyperparameters disagree on dimension");
}

const Mat& KernelFactorCache::factor(int d) const {
  if (d < 0 || d >= params_.dim()) throw std::invalid_argument("dimension out of range");
  auto it = factors_.find(d);
  if (it == factors_.end()) {
    const Mat e = scaled_sqdist(X_.col(d), X_.col(d), params_.lengthscales[d]);
    it = factors_.emplace(d, (-0.5 * e).array().exp().matrix()).first;
  }
  return it->second;
}

Mat KernelFactorCache::group_gram(const VarGroup& G) const {
  check_group(G, params_.dim());
  const double sg = component_scale(G, params_.scale_components);
  if (G.size() == 1) return sg * factor(G[0]);
  return sg * factor(G[0]).cwiseProduct(factor(G[1]));
}

Mat KernelFactorCache::gram(const std::vector<VarGroup>& groups) const {
  Mat K = Mat::Zero(n(), n());
  for (const VarGroup& G : groups) K.noalias() += group_gram(G);
  return K;
}

}  // namespace treebo
