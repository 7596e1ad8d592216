#include "treebo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace treebo {

namespace {

// Minimal disjoint-set used only for the acyclicity audit, to keep this
// translation unit free of the structure-learning machinery.
struct MiniDsu {
  std::vector<int> parent;
  explicit MiniDsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

// ---- BoxDomain ----

bool BoxDomain::contains(const Vec& x) const {
  if (x.size() != dim()) return false;
  for (Eigen::Index d = 0; d < dim(); ++d)
    if (x[d] < lower[d] || x[d] > upper[d]) return false;
  return true;
}

void BoxDomain::validate() const {
  if (lower.size() != upper.size())
    throw std::invalid_argument("domain bounds have mismatched lengths");
  if (lower.size() < 1) throw std::invalid_argument("domain must have dimension >= 1");
  for (Eigen::Index d = 0; d < lower.size(); ++d) {
    if (!std::isfinite(lower[d]) || !std::isfinite(upper[d]))
      throw std::invalid_argument("domain bounds must be finite");
    if (!(lower[d] < upper[d]))
      throw std::invalid_argument("domain lower bound must be strictly below upper bound");
  }
}

BoxDomain BoxDomain::unit(Eigen::Index d) { return cube(d, 0.0, 1.0); }

BoxDomain BoxDomain::cube(Eigen::Index d, double lo, double hi) {
  BoxDomain box;
  box.lower = Vec::Constant(d, lo);
  box.upper = Vec::Constant(d, hi);
  box.validate();
  return box;
}

// ---- DependencyForest ----

DependencyForest::DependencyForest(int dim) {
  if (dim < 0) throw std::invalid_argument("forest dimension must be >= 0");
  adj_ = AdjacencyMatrix::Zero(dim, dim);
}

DependencyForest::DependencyForest(int dim, const std::vector<std::pair<int, int>>& edge_list)
    : DependencyForest(dim) {
  for (const auto& [i, j] : edge_list) set_edge(i, j, true);
  validate();
}

DependencyForest DependencyForest::from_adjacency(const AdjacencyMatrix& Z) {
  DependencyForest f;
  f.adj_ = Z;
  f.edge_count_ = 0;
  if (Z.rows() != Z.cols() || Z.rows() < 1)
    throw std::invalid_argument("adjacency must be square and non-empty");
  for (int i = 0; i < Z.rows(); ++i)
    for (int j = i + 1; j < Z.cols(); ++j)
      if (Z(i, j) != 0) ++f.edge_count_;
  f.validate();
  return f;
}

bool DependencyForest::has_edge(int i, int j) const {
  if (i < 0 || j < 0 || i >= dim() || j >= dim())
    throw std::invalid_argument("edge index out of range");
  return adj_(i, j) != 0;
}

void DependencyForest::set_edge(int i, int j, bool present) {
  if (i < 0 || j < 0 || i >= dim() || j >= dim())
    throw std::invalid_argument("edge index out of range");
  if (i == j) throw std::invalid_argument("self-edges are not allowed");
  const int v = present ? 1 : 0;
  if (adj_(i, j) != v) edge_count_ += present ? 1 : -1;
  adj_(i, j) = v;
  adj_(j, i) = v;
}

int DependencyForest::degree(int v) const {
  if (v < 0 || v >= dim()) throw std::invalid_argument("vertex index out of range");
  return adj_.row(v).sum();
}

std::vector<std::pair<int, int>> DependencyForest::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (adj_(i, j) != 0) out.emplace_back(i, j);
  return out;
}

void DependencyForest::validate() const {
  const int D = dim();
  if (D < 1 || adj_.cols() != D)
    throw std::invalid_argument("adjacency must be square and non-empty");
  for (int i = 0; i < D; ++i) {
    if (adj_(i, i) != 0) throw std::invalid_argument("adjacency diagonal must be zero");
    for (int j = 0; j < D; ++j) {
      if (adj_(i, j) != adj_(j, i))
        throw std::invalid_argument("adjacency must be symmetric");
      if (adj_(i, j) != 0 && adj_(i, j) != 1)
        throw std::invalid_argument("adjacency entries must be 0 or 1");
    }
  }
  MiniDsu dsu(D);
  int count = 0;
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j)
      if (adj_(i, j) != 0) {
        ++count;
        if (!dsu.unite(i, j))
          throw std::invalid_argument("adjacency contains a cycle");
      }
  if (count != edge_count_)
    throw std::invalid_argument("edge count out of sync with adjacency");
  if (count > D - 1) throw std::invalid_argument("forest cannot have more than D-1 edges");
}

bool DependencyForest::same_adjacency(const DependencyForest& other) const {
  return dim() == other.dim() && (adj_.array() == other.adj_.array()).all();
}

// ---- decompositions ----

std::vector<VarGroup> components_of(const DependencyForest& forest) {
  forest.validate();
  return groups_of_adjacency(forest.adjacency());
}

std::vector<VarGroup> groups_of_adjacency(const AdjacencyMatrix& A) {
  const int D = static_cast<int>(A.rows());
  if (D < 1 || A.cols() != D)
    throw std::invalid_argument("adjacency must be square and non-empty");
  for (int i = 0; i < D; ++i) {
    if (A(i, i) != 0) throw std::invalid_argument("adjacency diagonal must be zero");
    for (int j = 0; j < D; ++j)
      if (A(i, j) != A(j, i)) throw std::invalid_argument("adjacency must be symmetric");
  }
  std::vector<VarGroup> groups;
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j)
      if (A(i, j) != 0) groups.push_back({i, j});
  for (int v = 0; v < D; ++v)
    if (A.row(v).cwiseAbs().sum() == 0) groups.push_back({v});
  return groups;
}

// ---- HyperParams ----

void HyperParams::validate() const {
  if (lengthscales.size() != scale_components.size())
    throw std::invalid_argument("lengthscales and scale_components must have equal length");
  if (lengthscales.size() < 1)
    throw std::invalid_argument("hyperparameters must cover at least one dimension");
  for (Eigen::Index d = 0; d < lengthscales.size(); ++d) {
    if (!(lengthscales[d] > 0.0) || !std::isfinite(lengthscales[d]))
      throw std::invalid_argument("lengthscales must be strictly positive");
    if (!(scale_components[d] > 0.0) || !std::isfinite(scale_components[d]))
      throw std::invalid_argument("scale_components must be strictly positive");
  }
  if (noise_std < 0.0 || !std::isfinite(noise_std))
    throw std::invalid_argument("noise_std must be >= 0");
}

Vec HyperParams::log_params() const {
  Vec theta(2 * dim());
  theta.head(dim()) = lengthscales.array().log();
  theta.tail(dim()) = scale_components.array().log();
  return theta;
}

HyperParams HyperParams::from_log(const Vec& theta, double noise_std) {
  if (theta.size() % 2 != 0 || theta.size() == 0)
    throw std::invalid_argument("log-parameter vector must have even positive length");
  const Eigen::Index d = theta.size() / 2;
  HyperParams p;
  p.lengthscales = theta.head(d).array().exp();
  p.scale_components = theta.tail(d).array().exp();
  p.noise_std = noise_std;
  p.validate();
  return p;
}

HyperParams HyperParams::constant(Eigen::Index dim, double lengthscale, double scale,
                                  double noise_std) {
  HyperParams p;
  p.lengthscales = Vec::Constant(dim, lengthscale);
  p.scale_components = Vec::Constant(dim, scale);
  p.noise_std = noise_std;
  p.validate();
  return p;
}

// ---- Dataset ----

void Dataset::append(const Vec& x, double value) {
  if (size() == 0 && X.cols() == 0) X.resize(0, x.size());
  if (x.size() != X.cols())
    throw std::invalid_argument("observation dimension mismatch");
  const Eigen::Index n = X.rows();
  X.conservativeResize(n + 1, Eigen::NoChange);
  X.row(n) = x.transpose();
  y.conservativeResize(n + 1);
  y[n] = value;
}

void Dataset::validate_in(const BoxDomain& box) const {
  if (X.rows() != y.size())
    throw std::invalid_argument("points and values must have equal length");
  if (size() > 0 && X.cols() != box.dim())
    throw std::invalid_argument("observation dimension mismatch");
  for (Eigen::Index i = 0; i < size(); ++i)
    if (!box.contains(X.row(i).transpose()))
      throw std::invalid_argument("observation outside the domain box");
}

// ---- RunConfig ----

RunConfig validate_config(const RunConfig& cfg, const BoxDomain& domain) {
  domain.validate();
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (cfg.n_init < 0) fail("n_init must be >= 0");
  if (cfg.n_iter < 1) fail("n_iter must be >= 1");
  if (!(cfg.n_init < cfg.n_iter)) fail("n_init must be < n_iter");
  if (cfg.relearn_interval < 1) fail("relearn_interval must be >= 1");
  if (cfg.structure_samples < 1) fail("structure_samples must be >= 1");
  if (!(cfg.gibbs_prior > 0.0 && cfg.gibbs_prior < 1.0))
    fail("gibbs_prior must lie strictly between 0 and 1");
  if (cfg.discrete_levels < 1) fail("discrete_levels must be >= 1");
  if (cfg.zoom_grid < 2) fail("zoom_grid must be >= 2");
  if (cfg.zoom_levels < 1) fail("zoom_levels must be >= 1");
  if (cfg.acquisition_eval_cap < 1) fail("acquisition_eval_cap must be >= 1");
  if (!(cfg.noise_std >= 0.0)) fail("noise_std must be >= 0");
  if (!(cfg.init_lengthscale > 0.0)) fail("init_lengthscale must be > 0");
  if (!(cfg.init_scale > 0.0)) fail("init_scale must be > 0");
  return cfg;
}

const char* to_string(AcqMode mode) {
  return mode == AcqMode::continuous ? "continuous" : "discrete";
}

AcqMode acq_mode_from_string(const std::string& s) {
  if (s == "continuous") return AcqMode::continuous;
  if (s == "discrete") return AcqMode::discrete;
  throw ConfigError("mode must be 'continuous' or 'discrete'");
}

}  // namespace treebo
