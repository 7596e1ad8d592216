#pragma once

// Shared helpers for the test suites: naive reference implementations kept
// deliberately independent of the library code paths they check, plus small
// deterministic generators for randomized cases.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "treebo/domain.hpp"
#include "treebo/rng.hpp"

namespace tu {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// --- naive kernel / gram oracles -------------------------------------------

// Direct transcription of the component kernel: amplitude is the root of the
// summed squared per-dimension scales, decay is a product of per-dimension
// squared-exponential factors.
inline double naive_component_kernel(const std::vector<int>& group, const Vec& a,
                                     const Vec& b, const treebo::HyperParams& p) {
  double s2 = 0.0;
  for (int d : group) s2 += p.scale_components(d) * p.scale_components(d);
  double amp = std::sqrt(s2);
  double expo = 0.0;
  for (int d : group) {
    const double dx = a(d) - b(d);
    expo += dx * dx / (p.lengthscales(d) * p.lengthscales(d));
  }
  return amp * std::exp(-0.5 * expo);
}

inline Mat naive_additive_gram(const Mat& X, const std::vector<std::vector<int>>& groups,
                               const treebo::HyperParams& p) {
  const Eigen::Index n = X.rows();
  Mat K = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (const auto& g : groups)
        K(i, j) += naive_component_kernel(g, X.row(i).transpose(), X.row(j).transpose(), p);
  return K;
}

// Dense log marginal likelihood via an explicit LU determinant and a full
// solve; shares no code with the Cholesky-based implementation.
inline double naive_lml(const Mat& K, double noise_std, const Vec& y) {
  const Eigen::Index n = y.size();
  Mat M = K + noise_std * noise_std * Mat::Identity(n, n);
  Eigen::PartialPivLU<Mat> lu(M);
  const Vec alpha = lu.solve(y);
  double logdet = 0.0;
  {
    const Mat& u = lu.matrixLU();
    for (Eigen::Index i = 0; i < n; ++i) logdet += std::log(std::abs(u(i, i)));
  }
  return -0.5 * y.dot(alpha) - 0.5 * logdet -
         0.5 * static_cast<double>(n) * std::log(2.0 * M_PI);
}

// --- finite differences -----------------------------------------------------

// Central finite differences of a scalar function of the stacked log
// parameters [log lengthscales; log scales].
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& at,
                       double h = 1e-5) {
  Vec g(at.size());
  for (Eigen::Index k = 0; k < at.size(); ++k) {
    Vec hi = at, lo = at;
    hi(k) += h;
    lo(k) -= h;
    g(k) = (f(hi) - f(lo)) / (2.0 * h);
  }
  return g;
}

// --- graph oracles (plain DFS, no union-find) -------------------------------

inline bool dfs_acyclic(const Eigen::MatrixXi& adj) {
  const int n = static_cast<int>(adj.rows());
  std::vector<int> color(n, 0);
  std::vector<std::pair<int, int>> stack;  // (vertex, parent)
  for (int s = 0; s < n; ++s) {
    if (color[s]) continue;
    stack.push_back({s, -1});
    color[s] = 1;
    while (!stack.empty()) {
      auto [v, parent] = stack.back();
      stack.pop_back();
      bool skipped_parent_once = false;
      for (int w = 0; w < n; ++w) {
        if (!adj(v, w)) continue;
        if (w == parent && !skipped_parent_once) {
          skipped_parent_once = true;  // one tree edge back to the parent is fine
          continue;
        }
        if (color[w]) return false;
        color[w] = 1;
        stack.push_back({w, v});
      }
    }
  }
  return true;
}

// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<int>> dfs_components(const Eigen::MatrixXi& adj) {
  const int n = static_cast<int>(adj.rows());
  std::vector<int> seen(n, 0);
  std::vector<std::vector<int>> comps;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp, stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (int w = 0; w < n; ++w)
        if (adj(v, w) && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

inline bool dfs_connected(const Eigen::MatrixXi& adj, int i, int j) {
  for (const auto& c : dfs_components(adj))
    if (std::find(c.begin(), c.end(), i) != c.end())
      return std::find(c.begin(), c.end(), j) != c.end();
  return false;
}

// --- random generators ------------------------------------------------------

// Random forest on `dim` vertices with roughly `target_edges` edges; every
// candidate insertion is vetted with the DFS oracle, never with union-find.
inline treebo::DependencyForest random_forest(std::mt19937_64& rng, int dim,
                                             int target_edges) {
  treebo::DependencyForest f(dim);
  Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(dim, dim);
  int added = 0, attempts = 0;
  while (added < target_edges && attempts < 50 * std::max(1, target_edges)) {
    ++attempts;
    int i = static_cast<int>(treebo::uniform_below(rng, static_cast<std::uint64_t>(dim)));
    int j = static_cast<int>(treebo::uniform_below(rng, static_cast<std::uint64_t>(dim)));
    if (i == j || adj(i, j)) continue;
    if (dfs_connected(adj, i, j)) continue;
    adj(i, j) = adj(j, i) = 1;
    f.set_edge(i, j, true);
    ++added;
  }
  return f;
}

inline treebo::HyperParams random_params(std::mt19937_64& rng, int dim,
                                        double noise_std = 0.1) {
  treebo::HyperParams p;
  p.lengthscales.resize(dim);
  p.scale_components.resize(dim);
  for (int d = 0; d < dim; ++d) {
    p.lengthscales(d) = 0.1 + 0.9 * treebo::uniform01(rng);
    p.scale_components(d) = 0.3 + 1.2 * treebo::uniform01(rng);
  }
  p.noise_std = noise_std;
  return p;
}

inline Mat random_points(std::mt19937_64& rng, int n, int dim, double lo = 0.0,
                         double hi = 1.0) {
  Mat X(n, dim);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d) X(i, d) = lo + (hi - lo) * treebo::uniform01(rng);
  return X;
}

inline Vec random_values(std::mt19937_64& rng, int n, double sd = 1.0) {
  Vec y(n);
  for (int i = 0; i < n; ++i) y(i) = sd * treebo::normal01(rng);
  return y;
}

// --- exhaustive grid enumeration --------------------------------------------

// Walks every index tuple of a product grid (odometer order) and returns the
// best total under `score`, which receives the full index vector.
struct GridBest {
  std::vector<int> idx;
  double value = -std::numeric_limits<double>::infinity();
};

inline GridBest enumerate_grid_max(const std::vector<int>& sizes,
                                   const std::function<double(const std::vector<int>&)>& score) {
  GridBest best;
  std::vector<int> idx(sizes.size(), 0);
  for (int s : sizes)
    if (s < 1) throw std::invalid_argument("grid axis must have at least one point");
  while (true) {
    double v = score(idx);
    if (v > best.value) {
      best.value = v;
      best.idx = idx;
    }
    int k = static_cast<int>(sizes.size()) - 1;
    while (k >= 0) {
      if (++idx[k] < sizes[k]) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return best;
}

// --- misc -------------------------------------------------------------------

inline double rel_err(double got, double want, double floor_ = 1e-12) {
  return std::abs(got - want) / std::max(std::abs(want), floor_);
}

inline double vec_rel_err(const Vec& got, const Vec& want, double floor_ = 1e-10) {
  return (got - want).norm() / std::max(want.norm(), floor_);
}

}  // namespace tu
