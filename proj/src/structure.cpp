#include "treebo/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "treebo/rng.hpp"

namespace treebo {

// ---- UnionFind ----

UnionFind::UnionFind(int n) { reset(n); }

void UnionFind::reset(int n) {
  if (n < 1) throw std::invalid_argument("union-find needs at least one element");
  parent_.resize(static_cast<std::size_t>(n));
  std::iota(parent_.begin(), parent_.end(), 0);
  size_.assign(static_cast<std::size_t>(n), 1);
}

void UnionFind::reset_from(const DependencyForest& forest) {
  reset(forest.dim());
  for (const auto& [i, j] : forest.edges()) unite(i, j);
}

int UnionFind::find(int v) {
  if (v < 0 || v >= static_cast<int>(parent_.size()))
    throw std::invalid_argument("union-find index out of range");
  while (parent_[static_cast<std::size_t>(v)] != v) {
    // path halving: point every other node at its grandparent
    auto& p = parent_[static_cast<std::size_t>(v)];
    p = parent_[static_cast<std::size_t>(p)];
    v = p;
  }
  return v;
}

bool UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
  parent_[static_cast<std::size_t>(b)] = a;
  size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
  return true;
}

bool UnionFind::same(int a, int b) { return find(a) == find(b); }

int UnionFind::component_size(int v) { return size_[static_cast<std::size_t>(find(v))]; }

std::vector<std::vector<int>> UnionFind::components() {
  std::map<int, std::vector<int>> by_root;
  for (int v = 0; v < static_cast<int>(parent_.size()); ++v) by_root[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(by_root.size());
  for (auto& [root, members] : by_root) out.push_back(std::move(members));
  // roots are not ordered by smallest member in general; sort explicitly
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

bool cycle_check(UnionFind& uf, int i, int j) {
  if (i == j) throw std::invalid_argument("cycle check requires two distinct vertices");
  return uf.same(i, j);
}

// ---- StructureSampleSet ----

void StructureSampleSet::add(const DependencyForest& Z, double score) {
  Z.validate();
  if (!std::isfinite(score)) throw std::invalid_argument("structure score must be finite");
  items_.push_back({Z, score});
}

const ScoredStructure& StructureSampleSet::best() const {
  if (items_.empty()) throw std::logic_error("no structures stored");
  std::size_t arg = 0;
  for (std::size_t k = 1; k < items_.size(); ++k)
    if (items_[k].score > items_[arg].score) arg = k;
  return items_[arg];
}

// ---- edge posterior ----

std::pair<double, double> edge_posterior_logits(const DependencyForest& Z, int i, int j,
                                                const HyperParams& params, const Dataset& data,
                                                double gamma) {
  if (i == j) throw std::invalid_argument("edge endpoints must differ");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("gamma must lie strictly between 0 and 1");
  DependencyForest with = Z;
  with.set_edge(i, j, true);
  with.validate();  // the present variant must still be a forest
  DependencyForest without = Z;
  without.set_edge(i, j, false);
  const double rho1 = log_marginal_likelihood(with, params, data);
  const double rho0 = log_marginal_likelihood(without, params, data);
  return {std::log(gamma) + rho1, std::log(1.0 - gamma) + rho0};
}

double edge_probability(double logit1, double logit0) {
  return 1.0 / (1.0 + std::exp(logit0 - logit1));
}

// ---- sampling machinery ----

namespace {

// Maintains the gram matrix and likelihood score of the structure being
// walked, so that each considered pair costs one fresh factorization (the
// other variant's score is the cached current one) and gram updates are
// single-component deltas via the per-dimension factor cache.
class Sampler {
 public:
  Sampler(const Dataset& data, const HyperParams& params, double gamma)
      : data_(data), params_(params), gamma_(gamma), cache_(data.X, params) {
    if (!(gamma > 0.0 && gamma < 1.0))
      throw std::invalid_argument("gamma must lie strictly between 0 and 1");
    if (data.size() < 1)
      throw std::invalid_argument("structure learning needs at least one observation");
    log_g1_ = std::log(gamma_);
    log_g0_ = std::log(1.0 - gamma_);
  }

  int sweep(DependencyForest& Z, UnionFind& uf, int budget, StructureSampleSet& samples,
            std::mt19937_64& rng, const StructureAuditHook& audit) {
    const int D = Z.dim();
    if (Z.edge_count() >= D - 1)
      throw std::invalid_argument("gibbs sweep requires a forest with fewer than D-1 edges");
    sync(Z);
    int k = 0;
    for (int j = 0; j < D && k < budget; ++j) {
      for (int i = 0; i < j && k < budget; ++i) {
        const bool had = Z.has_edge(i, j);
        if (had) {
          // Remove the pair's own edge before the cycle check so that present
          // edges can be resampled off; in a forest the endpoints then lie in
          // different components, so the check always passes.
          Z.set_edge(i, j, false);
          uf.reset_from(Z);
        }
        if (cycle_check(uf, i, j)) {
          ++k;
          continue;
        }
        const Mat delta = toggle_delta(Z, i, j);
        Mat gram1, gram0;
        double rho1, rho0;
        if (had) {
          gram1 = gram_;
          rho1 = rho_;
          gram0 = gram_ - delta;
          rho0 = log_marginal_likelihood_gram(gram0, params_, data_.y);
        } else {
          gram0 = gram_;
          rho0 = rho_;
          gram1 = gram_ + delta;
          rho1 = log_marginal_likelihood_gram(gram1, params_, data_.y);
        }
        const bool present =
            uniform01(rng) < edge_probability(log_g1_ + rho1, log_g0_ + rho0);
        if (present) {
          Z.set_edge(i, j, true);
          uf.unite(i, j);
          gram_ = std::move(gram1);
          rho_ = rho1;
        } else {
          gram_ = std::move(gram0);
          rho_ = rho0;
        }
        tracked_ = Z;
        samples.add(Z, rho_);
        ++k;
        if (audit) audit(Z, uf);
      }
    }
    return k;
  }

  int mutate_once(DependencyForest& Z, StructureSampleSet& samples, std::mt19937_64& rng) {
    if (Z.edge_count() < 1)
      throw std::invalid_argument("mutation requires at least one edge");
    sync(Z);
    const auto es = Z.edges();
    const auto [ri, rj] = es[uniform_below(rng, es.size())];
    Z.set_edge(ri, rj, false);
    const Mat delta_rm = toggle_delta(Z, ri, rj);
    Mat gram0 = gram_ - delta_rm;
    const double rho0 = log_marginal_likelihood_gram(gram0, params_, data_.y);

    UnionFind uf(Z.dim());
    uf.reset_from(Z);
    std::vector<int> side_a, side_b;
    for (int v = 0; v < Z.dim(); ++v) {
      if (uf.same(v, ri))
        side_a.push_back(v);
      else if (uf.same(v, rj))
        side_b.push_back(v);
    }
    const int a = side_a[uniform_below(rng, side_a.size())];
    const int b = side_b[uniform_below(rng, side_b.size())];
    const int ci = std::min(a, b);
    const int cj = std::max(a, b);

    const Mat delta_add = toggle_delta(Z, ci, cj);
    Mat gram1 = gram0 + delta_add;
    const double rho1 = log_marginal_likelihood_gram(gram1, params_, data_.y);

    const bool present =
        uniform01(rng) < edge_probability(log_g1_ + rho1, log_g0_ + rho0);
    if (present) {
      Z.set_edge(ci, cj, true);
      gram_ = std::move(gram1);
      rho_ = rho1;
    } else {
      gram_ = std::move(gram0);
      rho_ = rho0;
    }
    tracked_ = Z;
    samples.add(Z, rho_);
    return 1;
  }

 private:
  void sync(const DependencyForest& Z) {
    if (has_state_ && tracked_.dim() == Z.dim() && tracked_.same_adjacency(Z)) return;
    gram_ = cache_.gram(components_of(Z));
    rho_ = log_marginal_likelihood_gram(gram_, params_, data_.y);
    tracked_ = Z;
    has_state_ = true;
  }

  // Gram delta for adding edge (i, j) to Z, which must currently lack it:
  // the pair component appears, and endpoints that were isolated lose their
  // singleton component.
  Mat toggle_delta(const DependencyForest& Z, int i, int j) const {
    Mat delta = cache_.group_gram({i, j});
    if (Z.degree(i) == 0) delta -= cache_.group_gram({i});
    if (Z.degree(j) == 0) delta -= cache_.group_gram({j});
    return delta;
  }

  const Dataset& data_;
  const HyperParams& params_;
  double gamma_;
  double log_g1_ = 0.0;
  double log_g0_ = 0.0;
  KernelFactorCache cache_;
  Mat gram_;
  double rho_ = 0.0;
  DependencyForest tracked_;
  bool has_state_ = false;
};

}  // namespace

int gibbs_sweep(DependencyForest& Z, const HyperParams& params, const Dataset& data,
                double gamma, UnionFind& uf, int sample_budget, StructureSampleSet& samples,
                std::mt19937_64& rng, const StructureAuditHook& audit) {
  Sampler sampler(data, params, gamma);
  return sampler.sweep(Z, uf, sample_budget, samples, rng, audit);
}

int mutate(DependencyForest& Z, const HyperParams& params, const Dataset& data, double gamma,
           StructureSampleSet& samples, std::mt19937_64& rng) {
  Sampler sampler(data, params, gamma);
  return sampler.mutate_once(Z, samples, rng);
}

DependencyForest tree_learning(const DependencyForest& Z_current, const HyperParams& params,
                               const Dataset& data, int structure_samples, double gamma,
                               std::mt19937_64& rng, StructureSampleSet* visited) {
  Z_current.validate();
  StructureSampleSet local;
  StructureSampleSet& samples = visited ? *visited : local;
  const int D = Z_current.dim();
  if (structure_samples <= 0 || D < 2 || data.size() < 1) return Z_current;

  Sampler sampler(data, params, gamma);
  DependencyForest Z = Z_current;
  UnionFind uf(D);
  uf.reset_from(Z);
  int k = 0;
  while (k < structure_samples) {
    if (Z.edge_count() < D - 1) {
      k += sampler.sweep(Z, uf, structure_samples - k, samples, rng, {});
    } else {
      k += sampler.mutate_once(Z, samples, rng);
      uf.reset_from(Z);
    }
  }
  return samples.empty() ? Z_current : samples.best().Z;
}

// ---- serialization ----

std::string to_edge_list(const DependencyForest& Z) {
  std::ostringstream os;
  for (const auto& [i, j] : Z.edges()) os << i << " " << j << "\n";
  return os.str();
}

DependencyForest forest_from_edge_list(const std::string& text, int dim) {
  DependencyForest Z(dim);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    int i = -1, j = -1;
    if (!(ls >> i >> j)) throw std::invalid_argument("malformed edge list line: " + line);
    Z.set_edge(i, j, true);
  }
  Z.validate();
  return Z;
}

}  // namespace treebo
