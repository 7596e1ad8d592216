#include "treebo/optimizer.hpp"

#include <chrono>
#include <limits>
#include <stdexcept>

#include "treebo/kernel.hpp"
#include "treebo/rng.hpp"
#include "treebo/structure.hpp"

namespace treebo {

namespace {

enum class Algo { tree, random_search, oracle };

// Appends one observation and grows the cached additive gram by one
// row/column under the current decomposition.
void append_with_gram(Dataset& data, Mat& K, const Vec& x, double y,
                      const std::vector<VarGroup>& groups, const HyperParams& params) {
  const Eigen::Index n_old = data.size();
  Vec cross = Vec::Zero(n_old);
  double diag = 0.0;
  Mat x_row = x.transpose();
  for (const auto& G : groups) {
    if (n_old > 0) cross += component_cross(G, data.X, x_row, params).col(0);
    diag += component_scale(G, params.scale_components);
  }
  data.append(x, y);
  K.conservativeResize(n_old + 1, n_old + 1);
  K.row(n_old).head(n_old) = cross.transpose();
  K.col(n_old).head(n_old) = cross;
  K(n_old, n_old) = diag;
}

RunTrace run_core(const NoisyObjective& obj, const BoxDomain& domain, const RunConfig& cfg,
                  Algo algo, const OracleTruth* truth) {
  domain.validate();
  if (cfg.n_iter < 1) throw ConfigError("n_iter must be >= 1");
  if (cfg.n_init < 0) throw ConfigError("n_init must be >= 0");
  const int D = static_cast<int>(domain.dim());

  SeedStreams streams(cfg.seed);
  RunTrace trace;
  DependencyForest Z(D);
  HyperParams params =
      HyperParams::constant(D, cfg.init_lengthscale, cfg.init_scale, cfg.noise_std);
  if (algo == Algo::oracle) {
    if (truth->forest.dim() != D)
      throw std::invalid_argument("oracle structure does not match domain dimension");
    Z = truth->forest;
    params = truth->params;
    params.validate();
  }
  trace.structure_snapshots.push_back({0, Z.adjacency()});

  Dataset data;
  Mat K;  // gram of observed points under (Z, params); unused by random search
  std::vector<VarGroup> groups = components_of(Z);
  CostCounter counter;
  std::vector<DiscretizedAxis> fixed_axes;
  if (cfg.mode == AcqMode::discrete && algo != Algo::random_search)
    fixed_axes = discretize_midpoints(domain, cfg.discrete_levels);

  const auto start = std::chrono::steady_clock::now();
  double best_y = -std::numeric_limits<double>::infinity();

  for (int t = 1; t <= cfg.n_iter; ++t) {
    bool relearned = false;
    Vec x(D);
    try {
      if (algo == Algo::random_search || t <= cfg.n_init) {
        for (int d = 0; d < D; ++d)
          x(d) = domain.lower(d) +
                 uniform01(streams.init) * (domain.upper(d) - domain.lower(d));
      } else {
        if (algo == Algo::tree && t % cfg.relearn_interval == 0 && data.size() >= 2) {
          Z = tree_learning(Z, params, data, cfg.structure_samples, cfg.gibbs_prior,
                            streams.structure);
          params = fit_hyperparameters(data, Z, params);
          groups = components_of(Z);
          K = additive_gram(data.X, Z, params);
          relearned = true;
          trace.structure_snapshots.push_back({t, Z.adjacency()});
        }
        PosteriorState state(data, Z, params, K);
        if (cfg.mode == AcqMode::continuous) {
          x = msg_passing_continuous(domain, Z, state, t, cfg.zoom_grid, cfg.zoom_levels,
                                     streams.zoom, counter)
                  .x;
        } else {
          UcbField field(state, t);
          const auto tables =
              build_phi_tables(field, Z, fixed_axes, counter, cfg.acquisition_eval_cap);
          x = msg_passing_discrete(fixed_axes, Z, tables).x;
        }
      }

      const double y = obj.observe(x);
      const double f_true = obj.truth(x);
      if (algo == Algo::random_search)
        data.append(x, y);
      else
        append_with_gram(data, K, x, y, groups, params);

      if (y > best_y) best_y = y;
      IterationRecord rec;
      rec.t = t;
      rec.x = x;
      rec.y = y;
      rec.f_true = f_true;
      rec.best_y = best_y;
      rec.cum_cost = counter.count();
      rec.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rec.relearn = relearned;
      trace.records.push_back(std::move(rec));
    } catch (const std::exception& e) {
      trace.aborted = true;
      trace.abort_reason = e.what();
      break;
    }
  }

  trace.final_forest = Z;
  trace.final_params = params;
  for (std::size_t i = 0; i < trace.records.size(); ++i)
    if (trace.best_index < 0 || trace.records[i].y > trace.records[trace.best_index].y)
      trace.best_index = static_cast<int>(i);
  return trace;
}

}  // namespace

RunTrace run_tree_gp_ucb(const NoisyObjective& obj, const BoxDomain& domain,
                         const RunConfig& cfg) {
  return run_core(obj, domain, cfg, Algo::tree, nullptr);
}

RunTrace run_random(const NoisyObjective& obj, const BoxDomain& domain, const RunConfig& cfg) {
  return run_core(obj, domain, cfg, Algo::random_search, nullptr);
}

RunTrace run_oracle(const NoisyObjective& obj, const BoxDomain& domain, const RunConfig& cfg,
                    const OracleTruth& truth) {
  return run_core(obj, domain, cfg, Algo::oracle, &truth);
}

}  // namespace treebo
