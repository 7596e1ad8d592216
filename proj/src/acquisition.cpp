#include "treebo/acquisition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "treebo/rng.hpp"

namespace treebo {

double beta(int t) {
  if (t < 1) throw std::invalid_argument("beta requires t >= 1");
  return 0.5 * std::log(2.0 * static_cast<double>(t));
}

namespace {

DiscretizedAxis make_axis(int var, double lo, double hi, int cells) {
  DiscretizedAxis ax;
  ax.var = var;
  ax.reps.resize(cells);
  ax.cell_lo.resize(cells);
  ax.cell_hi.resize(cells);
  const double w = (hi - lo) / cells;
  for (int c = 0; c < cells; ++c) {
    ax.cell_lo(c) = lo + c * w;
    ax.cell_hi(c) = (c + 1 == cells) ? hi : lo + (c + 1) * w;
  }
  return ax;
}

}  // namespace

std::vector<DiscretizedAxis> discretize_uniform(const BoxDomain& box, int cells_per_axis,
                                                std::mt19937_64& rng) {
  if (cells_per_axis < 2) throw std::invalid_argument("cells_per_axis must be >= 2");
  std::vector<DiscretizedAxis> axes;
  axes.reserve(box.dim());
  for (int d = 0; d < box.dim(); ++d) {
    DiscretizedAxis ax = make_axis(d, box.lower(d), box.upper(d), cells_per_axis);
    for (int c = 0; c < cells_per_axis; ++c) {
      // representative strictly inside its cell
      double r;
      do {
        r = ax.cell_lo(c) + uniform01(rng) * (ax.cell_hi(c) - ax.cell_lo(c));
      } while (!(r > ax.cell_lo(c) && r < ax.cell_hi(c)));
      ax.reps(c) = r;
    }
    axes.push_back(std::move(ax));
  }
  return axes;
}

std::vector<DiscretizedAxis> discretize_midpoints(const BoxDomain& box, int levels) {
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  std::vector<DiscretizedAxis> axes;
  axes.reserve(box.dim());
  for (int d = 0; d < box.dim(); ++d) {
    DiscretizedAxis ax = make_axis(d, box.lower(d), box.upper(d), levels);
    for (int c = 0; c < levels; ++c) ax.reps(c) = 0.5 * (ax.cell_lo(c) + ax.cell_hi(c));
    axes.push_back(std::move(ax));
  }
  return axes;
}

UcbField::UcbField(const PosteriorState& state, int t)
    : state_(state), sqrt_beta_(std::sqrt(beta(t))) {}

void UcbField::eval(const VarGroup& G, const Mat& X_sub, Vec& out) const {
  Vec mean, var;
  state_.component_posterior_sub_batch(G, X_sub, mean, var);
  out = mean + sqrt_beta_ * var.cwiseSqrt();
}

double component_ucb(const PosteriorState& state, const VarGroup& G, const Vec& x_sub, int t,
                     CostCounter& counter) {
  const auto [m, v] = state.component_posterior_sub(G, x_sub);
  counter.add(1);
  return m + std::sqrt(beta(t)) * std::sqrt(v);
}

std::vector<PhiTable> build_phi_tables(const ComponentField& field,
                                       const DependencyForest& forest,
                                       const std::vector<DiscretizedAxis>& axes,
                                       CostCounter& counter, long cap) {
  if (static_cast<int>(axes.size()) != forest.dim())
    throw std::invalid_argument("axis count does not match dimension");
  for (const auto& ax : axes)
    if (ax.reps.size() < 1) throw std::invalid_argument("axis has no representatives");
  const auto groups = components_of(forest);
  std::vector<PhiTable> tables;
  tables.reserve(groups.size());
  long spent = 0;
  Vec out;
  for (const auto& G : groups) {
    PhiTable tab;
    tab.group = G;
    if (G.size() == 2)
      tab.values = Mat::Zero(axes[G[0]].reps.size(), axes[G[1]].reps.size());
    else
      tab.values = Mat::Zero(axes[G[0]].reps.size(), 1);
    const long total = tab.total();
    long budget = total;
    if (cap >= 0) budget = std::min(budget, cap - spent);
    if (budget > 0) {
      Mat X_sub(budget, static_cast<int>(G.size()));
      if (G.size() == 2) {
        const auto& ri = axes[G[0]].reps;
        const auto& rj = axes[G[1]].reps;
        const long cols = rj.size();
        for (long k = 0; k < budget; ++k) {
          X_sub(k, 0) = ri(k / cols);
          X_sub(k, 1) = rj(k % cols);
        }
      } else {
        for (long k = 0; k < budget; ++k) X_sub(k, 0) = axes[G[0]].reps(k);
      }
      field.eval(G, X_sub, out);
      if (G.size() == 2) {
        const long cols = tab.values.cols();
        for (long k = 0; k < budget; ++k) tab.values(k / cols, k % cols) = out(k);
      } else {
        tab.values.col(0).head(budget) = out;
      }
      counter.add(budget);
      spent += budget;
      tab.evaluated = budget;
    }
    tables.push_back(std::move(tab));
  }
  return tables;
}

namespace {

// Highest entry of the row-major evaluated prefix; ties break toward the
// earliest entry.
std::pair<long, double> best_prefix_entry(const PhiTable& tab) {
  const long cols = tab.values.cols();
  long best_k = 0;
  double best_v = tab.values(0, 0);
  for (long k = 1; k < tab.evaluated; ++k) {
    const double v = tab.values(k / cols, k % cols);
    if (v > best_v) {
      best_v = v;
      best_k = k;
    }
  }
  return {best_k, best_v};
}

// Exact max-sum over one tree fragment whose edges all carry complete tables.
// Root is the fragment's lowest vertex; argmax ties break toward the lowest
// grid index.
double solve_fragment(const std::vector<int>& fragment,
                      const std::vector<std::vector<std::pair<int, const PhiTable*>>>& adj,
                      const std::vector<DiscretizedAxis>& axes, std::vector<int>& idx) {
  const int root = fragment.front();
  const int dim = static_cast<int>(adj.size());
  std::vector<int> parent(dim, -1), order;
  std::vector<const PhiTable*> up_table(dim, nullptr);
  order.reserve(fragment.size());
  std::vector<int> stack{root};
  parent[root] = root;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& [u, tab] : adj[v])
      if (parent[u] < 0) {
        parent[u] = v;
        up_table[u] = tab;
        stack.push_back(u);
      }
  }
  // child -> parent messages, processed leaves first
  std::vector<Vec> msg(dim);
  std::vector<std::vector<int>> argm(dim);
  std::vector<Vec> base(dim);
  for (int v : order) base[v] = Vec::Zero(axes[v].reps.size());
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    if (v == root) continue;
    const int p = parent[v];
    const PhiTable& tab = *up_table[v];
    const bool v_is_row = tab.group[0] == v;
    const long nv = axes[v].reps.size();
    const long np = axes[p].reps.size();
    msg[v].resize(np);
    argm[v].assign(np, 0);
    for (long ap = 0; ap < np; ++ap) {
      double best = -std::numeric_limits<double>::infinity();
      long best_a = 0;
      for (long av = 0; av < nv; ++av) {
        const double phi = v_is_row ? tab.values(av, ap) : tab.values(ap, av);
        const double cand = phi + base[v](av);
        if (cand > best) {
          best = cand;
          best_a = av;
        }
      }
      msg[v](ap) = best;
      argm[v][ap] = static_cast<int>(best_a);
    }
    base[p] += msg[v];
  }
  long best_root = 0;
  for (long a = 1; a < base[root].size(); ++a)
    if (base[root](a) > base[root](best_root)) best_root = a;
  idx[root] = static_cast<int>(best_root);
  for (int v : order) {
    if (v == root) continue;
    idx[v] = argm[v][idx[parent[v]]];
  }
  return base[root](best_root);
}

}  // namespace

MsgPassingResult msg_passing_discrete(const std::vector<DiscretizedAxis>& axes,
                                      const DependencyForest& forest,
                                      const std::vector<PhiTable>& tables) {
  const int dim = forest.dim();
  if (static_cast<int>(axes.size()) != dim)
    throw std::invalid_argument("axis count does not match dimension");
  for (const auto& ax : axes)
    if (ax.reps.size() < 1) throw std::invalid_argument("axis has no representatives");
  MsgPassingResult res;
  res.idx.assign(dim, -1);
  res.value = 0.0;

  // adjacency restricted to completely tabulated edges
  std::vector<std::vector<std::pair<int, const PhiTable*>>> adj(dim);
  for (const auto& tab : tables)
    if (tab.group.size() == 2 && tab.complete()) {
      adj[tab.group[0]].emplace_back(tab.group[1], &tab);
      adj[tab.group[1]].emplace_back(tab.group[0], &tab);
    }
  std::vector<char> seen(dim, 0);
  for (int v = 0; v < dim; ++v) {
    if (seen[v] || adj[v].empty()) continue;
    std::vector<int> fragment;
    std::vector<int> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      fragment.push_back(u);
      for (const auto& [w, tab] : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(fragment.begin(), fragment.end());
    res.value += solve_fragment(fragment, adj, axes, res.idx);
  }

  // complete singleton tables, then capped leftovers, in table order
  for (const auto& tab : tables) {
    if (tab.evaluated == 0) continue;
    if (tab.group.size() == 2 && tab.complete()) continue;
    const auto [k, v] = best_prefix_entry(tab);
    res.value += v;
    if (tab.group.size() == 2) {
      const long cols = tab.values.cols();
      if (res.idx[tab.group[0]] < 0) res.idx[tab.group[0]] = static_cast<int>(k / cols);
      if (res.idx[tab.group[1]] < 0) res.idx[tab.group[1]] = static_cast<int>(k % cols);
    } else {
      if (res.idx[tab.group[0]] < 0) res.idx[tab.group[0]] = static_cast<int>(k);
    }
  }

  res.x.resize(dim);
  for (int d = 0; d < dim; ++d) {
    if (res.idx[d] < 0) res.idx[d] = 0;
    res.x(d) = axes[d].reps(res.idx[d]);
  }
  return res;
}

ZoomStep zoom_strategy(const Vec& selected_x, const BoxDomain& current_bounds, int R,
                       std::mt19937_64& rng) {
  const int dim = current_bounds.dim();
  if (selected_x.size() != dim)
    throw std::invalid_argument("selected point does not match domain dimension");
  Vec lo(dim), hi(dim);
  for (int d = 0; d < dim; ++d) {
    const double a = current_bounds.lower(d);
    const double w = (current_bounds.upper(d) - a) / R;
    long c = static_cast<long>(std::floor((selected_x(d) - a) / w));
    c = std::clamp(c, 0L, static_cast<long>(R - 1));
    lo(d) = a + c * w;
    hi(d) = (c + 1 == R) ? current_bounds.upper(d) : a + (c + 1) * w;
  }
  ZoomStep step;
  step.bounds = BoxDomain{std::move(lo), std::move(hi)};
  step.axes = discretize_uniform(step.bounds, R, rng);
  return step;
}

MsgPassingResult msg_passing_continuous_field(const BoxDomain& domain,
                                              const DependencyForest& forest,
                                              const ComponentField& field, int R, int L,
                                              std::mt19937_64& rng, CostCounter& counter) {
  if (L < 1) throw std::invalid_argument("zoom level count must be >= 1");
  BoxDomain bounds = domain;
  std::vector<DiscretizedAxis> axes = discretize_uniform(bounds, R, rng);
  MsgPassingResult res;
  for (int level = 0; level < L; ++level) {
    const auto tables = build_phi_tables(field, forest, axes, counter, -1);
    res = msg_passing_discrete(axes, forest, tables);
    if (level + 1 < L) {
      ZoomStep step = zoom_strategy(res.x, bounds, R, rng);
      bounds = step.bounds;
      axes = std::move(step.axes);
    }
  }
  return res;
}

MsgPassingResult msg_passing_continuous(const BoxDomain& domain, const DependencyForest& forest,
                                        const PosteriorState& state, int t, int R, int L,
                                        std::mt19937_64& rng, CostCounter& counter) {
  UcbField field(state, t);
  return msg_passing_continuous_field(domain, forest, field, R, L, rng, counter);
}

}  // namespace treebo
