#include "treebo/gp.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace treebo {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
constexpr double kLogBoxLo = -6.907755278982137;  // log 1e-3
constexpr double kLogBoxHi = 6.907755278982137;   // log 1e3

Mat shifted(const Mat& gram, double eta) {
  return gram + (eta * eta) * Mat::Identity(gram.rows(), gram.cols());
}

}  // namespace

// ---- PosteriorState ----

PosteriorState::PosteriorState(Dataset data, DependencyForest forest, HyperParams params)
    : data_(std::move(data)), forest_(std::move(forest)), params_(std::move(params)),
      groups_(components_of(forest_)) {
  params_.validate();
  if (data_.size() > 0) factorize(additive_gram(data_.X, forest_, params_));
}

PosteriorState::PosteriorState(Dataset data, DependencyForest forest, HyperParams params,
                               const Mat& gram)
    : data_(std::move(data)), forest_(std::move(forest)), params_(std::move(params)),
      groups_(components_of(forest_)) {
  params_.validate();
  if (gram.rows() != data_.size() || gram.cols() != data_.size())
    throw std::invalid_argument("prebuilt gram matrix has the wrong shape");
  if (data_.size() > 0) factorize(gram);
}

void PosteriorState::factorize(const Mat& gram) {
  llt_ = chol_with_jitter(shifted(gram, params_.noise_std));
  alpha_ = llt_.solve(data_.y);
}

std::pair<double, double> PosteriorState::component_posterior(const VarGroup& G,
                                                              const Vec& x_star) const {
  return component_posterior_sub(G, subvector(x_star, G));
}

std::pair<double, double> PosteriorState::component_posterior_sub(const VarGroup& G,
                                                                  const Vec& x_sub) const {
  Vec mean(1), var(1);
  component_posterior_sub_batch(G, x_sub.transpose(), mean, var);
  return {mean[0], var[0]};
}

void PosteriorState::component_posterior_sub_batch(const VarGroup& G, const Mat& X_sub,
                                                   Vec& mean, Vec& var) const {
  const double prior = component_scale(G, params_.scale_components);
  const Eigen::Index m = X_sub.rows();
  if (size() == 0) {
    mean = Vec::Zero(m);
    var = Vec::Constant(m, prior);
    return;
  }
  const Mat Ks = component_cross_sub(G, X_sub, subcolumns(data_.X, G), params_);  // m x n
  mean.noalias() = Ks * alpha_;
  const Mat V = llt_.matrixL().solve(Ks.transpose());  // n x m
  var = (prior - V.colwise().squaredNorm().transpose().array()).cwiseMax(0.0);
}

// ---- marginal likelihood ----

double log_marginal_likelihood(const DependencyForest& Z, const HyperParams& params,
                               const Dataset& data) {
  if (data.size() < 1) throw std::invalid_argument("likelihood needs at least one observation");
  return log_marginal_likelihood_gram(additive_gram(data.X, Z, params), params, data.y);
}

double log_marginal_likelihood_gram(const Mat& gram, const HyperParams& params, const Vec& y) {
  const Eigen::Index n = y.size();
  if (n < 1) throw std::invalid_argument("likelihood needs at least one observation");
  if (gram.rows() != n || gram.cols() != n)
    throw std::invalid_argument("gram matrix and observations disagree on size");
  const Eigen::LLT<Mat> llt = chol_with_jitter(shifted(gram, params.noise_std));
  const Vec alpha = llt.solve(y);
  const double quad = y.dot(alpha);
  const double logdet = 2.0 * Mat(llt.matrixL()).diagonal().array().log().sum();
  return -0.5 * quad - 0.5 * logdet - 0.5 * static_cast<double>(n) * kLogTwoPi;
}

Vec lml_gradient(const DependencyForest& Z, const HyperParams& params, const Dataset& data) {
  if (data.size() < 1) throw std::invalid_argument("gradient needs at least one observation");
  const auto groups = components_of(Z);
  const Eigen::Index n = data.size();
  const Eigen::Index D = params.dim();

  std::map<int, Mat> dist_cache;
  auto dist_of = [&](int d) -> const Mat& {
    auto it = dist_cache.find(d);
    if (it == dist_cache.end()) {
      const double inv = 1.0 / (params.lengthscales[d] * params.lengthscales[d]);
      Mat out(n, n);
      for (Eigen::Index b = 0; b < n; ++b)
        out.col(b) = (data.X.col(d).array() - data.X(b, d)).square() * inv;
      it = dist_cache.emplace(d, std::move(out)).first;
    }
    return it->second;
  };

  const KernelFactorCache cache(data.X, params);
  const Mat K = cache.gram(groups);
  const Eigen::LLT<Mat> llt = chol_with_jitter(shifted(K, params.noise_std));
  const Vec alpha = llt.solve(data.y);
  // d rho / d theta = 1/2 tr((alpha alpha' - Delta^{-1}) dK/dtheta); W is that
  // symmetric weight matrix.
  Mat W = -llt.solve(Mat::Identity(n, n));
  W.noalias() += alpha * alpha.transpose();

  Vec grad = Vec::Zero(2 * D);
  for (const VarGroup& G : groups) {
    const double sg = component_scale(G, params.scale_components);
    const Mat P = cache.group_gram(G);  // sg * exp(-1/2 e)
    const Mat Q = W.cwiseProduct(P);
    const double qsum = 0.5 * Q.sum();
    for (const int d : G) {
      const double s = params.scale_components[d];
      grad[D + d] += qsum * (s * s) / (sg * sg);
      // d/dlog l_d multiplies each entry by its scaled squared distance.
      grad[d] += 0.5 * Q.cwiseProduct(dist_of(d)).sum();
    }
  }
  return grad;
}

// ---- hyperparameter fitting ----

namespace {

Vec clamp_box(Vec theta) {
  return theta.cwiseMax(kLogBoxLo).cwiseMin(kLogBoxHi);
}

struct Evaluation {
  double rho;
  Vec grad;
};

Evaluation evaluate(const Dataset& data, const DependencyForest& forest, const Vec& theta,
                    double eta) {
  const HyperParams p = HyperParams::from_log(theta, eta);
  Evaluation ev;
  ev.rho = log_marginal_likelihood(forest, p, data);
  ev.grad = lml_gradient(forest, p, data);
  return ev;
}

}  // namespace

HyperParams fit_hyperparameters(const Dataset& data, const DependencyForest& forest,
                                const HyperParams& init, FitInfo* info) {
  if (data.size() < 2) throw std::invalid_argument("fitting needs at least two observations");
  init.validate();
  constexpr int kMaxIter = 100;
  constexpr double kGradTol = 1e-5;
  constexpr int kMemory = 8;
  constexpr double kArmijo = 1e-4;

  Vec theta = clamp_box(init.log_params());
  Evaluation cur = evaluate(data, forest, theta, init.noise_std);
  const double rho_init = cur.rho;

  std::deque<Vec> s_hist, y_hist;
  FitInfo fi;
  bool ever_stepped = false;

  int it = 0;
  for (; it < kMaxIter; ++it) {
    if (cur.grad.norm() <= kGradTol) {
      fi.converged = true;
      break;
    }
    // L-BFGS two-loop recursion on the ascent direction.
    Vec dir = cur.grad;
    std::vector<double> alpha_coef(s_hist.size());
    for (int k = static_cast<int>(s_hist.size()) - 1; k >= 0; --k) {
      const double rho_k = 1.0 / y_hist[k].dot(s_hist[k]);
      alpha_coef[k] = rho_k * s_hist[k].dot(dir);
      dir -= alpha_coef[k] * y_hist[k];
    }
    if (!s_hist.empty()) {
      const double gamma =
          s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
      dir *= gamma;
    }
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double rho_k = 1.0 / y_hist[k].dot(s_hist[k]);
      const double beta_k = rho_k * y_hist[k].dot(dir);
      dir += (alpha_coef[k] - beta_k) * s_hist[k];
    }
    if (dir.dot(cur.grad) <= 0.0) dir = cur.grad;  // fall back to steepest ascent

    // Armijo backtracking on rho (maximization).
    double step = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      const Vec cand = clamp_box(theta + step * dir);
      if ((cand - theta).norm() == 0.0) break;
      Evaluation ev;
      try {
        ev = evaluate(data, forest, cand, init.noise_std);
      } catch (const DegeneracyError&) {
        step *= 0.5;
        continue;
      }
      if (std::isfinite(ev.rho) &&
          ev.rho >= cur.rho + kArmijo * step * cur.grad.dot(dir)) {
        const Vec s = cand - theta;
        const Vec yv = ev.grad - cur.grad;
        // Projection onto the box can break the curvature condition; only keep
        // well-formed pairs.
        if (s.dot(yv) < 0.0) {
          s_hist.push_back(s);
          y_hist.push_back(-yv);  // store ascent as descent-convention pairs
        } else {
          s_hist.clear();
          y_hist.clear();
        }
        while (static_cast<int>(s_hist.size()) > kMemory) {
          s_hist.pop_front();
          y_hist.pop_front();
        }
        theta = cand;
        cur = ev;
        accepted = true;
        ever_stepped = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!ever_stepped) fi.line_search_failed = true;
      break;
    }
  }

  fi.iterations = it;
  fi.rho = cur.rho;
  fi.grad_norm = cur.grad.norm();
  if (info) *info = fi;

  if (fi.line_search_failed || cur.rho < rho_init) {
    if (info) info->rho = rho_init;
    return init;
  }
  return HyperParams::from_log(theta, init.noise_std);
}

}  // namespace treebo
