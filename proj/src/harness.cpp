#include "treebo/harness.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "treebo/rng.hpp"

namespace treebo {

namespace fs = std::filesystem;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// shortest exact decimal rendering, for config echoing and the manifest
std::string format_shortest(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

std::string join_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ",";
    out += items[i];
  }
  return out;
}

const std::vector<std::string>& experiment_only_keys() {
  static const std::vector<std::string> keys = {
      "objective", "structure", "size",     "rows",    "cols",      "sigma_opt",
      "ell_opt",   "obs_noise", "dim",      "aux_dims", "algorithms", "n_seeds",
      "base_seed", "out_dir"};
  return keys;
}

void check_algorithms(const std::vector<std::string>& algos) {
  if (algos.empty()) throw ConfigError("algorithms must not be empty");
  std::set<std::string> seen;
  for (const auto& a : algos) {
    if (a != "tree" && a != "random" && a != "oracle")
      throw ConfigError("unknown algorithm '" + a + "'");
    if (!seen.insert(a).second) throw ConfigError("duplicate algorithm '" + a + "'");
  }
}

}  // namespace

const std::vector<std::string>& experiment_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> all = run_config_keys();
    const auto& extra = experiment_only_keys();
    all.insert(all.end(), extra.begin(), extra.end());
    std::sort(all.begin(), all.end());
    return all;
  }();
  return keys;
}

ExperimentConfig experiment_from_kv(const KvMap& kv, const ExperimentConfig& base) {
  const auto& known = experiment_keys();
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!std::binary_search(known.begin(), known.end(), key))
      throw ConfigError("unknown config key '" + key + "'");
  }
  ExperimentConfig cfg = base;
  cfg.run = run_config_from_kv(kv, base.run);
  cfg.objective = kv_string(kv, "objective", base.objective);
  cfg.structure = kv_string(kv, "structure", base.structure);
  cfg.size = kv_int(kv, "size", base.size);
  cfg.rows = kv_int(kv, "rows", base.rows);
  cfg.cols = kv_int(kv, "cols", base.cols);
  cfg.sigma_opt = kv_double(kv, "sigma_opt", base.sigma_opt);
  cfg.ell_opt = kv_double(kv, "ell_opt", base.ell_opt);
  cfg.obs_noise = kv_double(kv, "obs_noise", base.obs_noise);
  cfg.dim = kv_int(kv, "dim", base.dim);
  cfg.aux_dims = kv_int(kv, "aux_dims", base.aux_dims);
  if (kv.count("algorithms")) cfg.algorithms = split_list(kv.at("algorithms"));
  cfg.n_seeds = kv_int(kv, "n_seeds", base.n_seeds);
  cfg.base_seed = kv_uint64(kv, "base_seed", base.base_seed);
  cfg.out_dir = kv_string(kv, "out_dir", base.out_dir);
  check_algorithms(cfg.algorithms);
  if (cfg.n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  if (cfg.sigma_opt <= 0) throw ConfigError("sigma_opt must be > 0");
  if (cfg.ell_opt <= 0) throw ConfigError("ell_opt must be > 0");
  if (cfg.obs_noise < 0) throw ConfigError("obs_noise must be >= 0");
  if (cfg.aux_dims < 0) throw ConfigError("aux_dims must be >= 0");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
  return cfg;
}

KvMap experiment_to_kv(const ExperimentConfig& cfg) {
  KvMap kv;
  kv["n_init"] = std::to_string(cfg.run.n_init);
  kv["n_iter"] = std::to_string(cfg.run.n_iter);
  kv["relearn_interval"] = std::to_string(cfg.run.relearn_interval);
  kv["structure_samples"] = std::to_string(cfg.run.structure_samples);
  kv["gibbs_prior"] = format_shortest(cfg.run.gibbs_prior);
  kv["discrete_levels"] = std::to_string(cfg.run.discrete_levels);
  kv["zoom_grid"] = std::to_string(cfg.run.zoom_grid);
  kv["zoom_levels"] = std::to_string(cfg.run.zoom_levels);
  kv["acquisition_eval_cap"] = std::to_string(cfg.run.acquisition_eval_cap);
  kv["seed"] = std::to_string(cfg.run.seed);
  kv["mode"] = to_string(cfg.run.mode);
  kv["noise_std"] = format_shortest(cfg.run.noise_std);
  kv["init_lengthscale"] = format_shortest(cfg.run.init_lengthscale);
  kv["init_scale"] = format_shortest(cfg.run.init_scale);
  kv["objective"] = cfg.objective;
  kv["structure"] = cfg.structure;
  kv["size"] = std::to_string(cfg.size);
  kv["rows"] = std::to_string(cfg.rows);
  kv["cols"] = std::to_string(cfg.cols);
  kv["sigma_opt"] = format_shortest(cfg.sigma_opt);
  kv["ell_opt"] = format_shortest(cfg.ell_opt);
  kv["obs_noise"] = format_shortest(cfg.obs_noise);
  kv["dim"] = std::to_string(cfg.dim);
  kv["aux_dims"] = std::to_string(cfg.aux_dims);
  kv["algorithms"] = join_list(cfg.algorithms);
  kv["n_seeds"] = std::to_string(cfg.n_seeds);
  kv["base_seed"] = std::to_string(cfg.base_seed);
  kv["out_dir"] = cfg.out_dir;
  return kv;
}

std::string config_hash(const ExperimentConfig& cfg) {
  std::string text;
  for (const auto& [key, value] : experiment_to_kv(cfg)) {
    text += key;
    text += "=";
    text += value;
    text += "\n";
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BuiltObjective build_objective(const ExperimentConfig& cfg, std::uint64_t master_seed) {
  if (cfg.aux_dims < 0) throw ConfigError("aux_dims must be >= 0");
  SeedStreams streams(master_seed);
  auto noise_rng = std::make_shared<std::mt19937_64>(streams.noise);
  BuiltObjective built;

  if (cfg.objective == "gp_sample") {
    StructureSpec spec;
    spec.kind = cfg.structure;
    spec.size = cfg.size;
    spec.rows = cfg.rows;
    spec.cols = cfg.cols;
    AdjacencyMatrix A = make_structure(spec);
    const int base_dim = static_cast<int>(A.rows());
    const int total = base_dim + cfg.aux_dims;
    HyperParams gen =
        HyperParams::constant(base_dim, cfg.ell_opt, cfg.sigma_opt, cfg.obs_noise);
    auto fn = sample_gp_function(A, gen, streams.objective());
    ObjectiveFn base_truth = [fn](const Vec& x) { return (*fn)(x); };
    ObjectiveFn truth = augment_aux(std::move(base_truth), cfg.aux_dims);
    built.objective = {with_noise(truth, cfg.obs_noise, noise_rng), truth};
    built.domain = BoxDomain::unit(total);
    AdjacencyMatrix padded = AdjacencyMatrix::Zero(total, total);
    padded.topLeftCorner(base_dim, base_dim) = A;
    built.truth_adjacency = padded;
    if (cfg.aux_dims == 0) {
      try {
        OracleTruth oracle;
        oracle.forest = DependencyForest::from_adjacency(A);
        oracle.params = gen;
        built.oracle = std::move(oracle);
      } catch (const std::exception&) {
        // cyclic ground truth: no tree-structured oracle exists
      }
    }
    return built;
  }

  if (cfg.objective == "stybtang") {
    if (cfg.dim < 1) throw ConfigError("dim must be >= 1");
    const int total = cfg.dim + cfg.aux_dims;
    ObjectiveFn truth = augment_aux([](const Vec& x) { return stybtang(x); }, cfg.aux_dims);
    built.objective = {with_noise(truth, cfg.obs_noise, noise_rng), truth};
    built.domain = BoxDomain::cube(total, -5.0, 5.0);
    built.truth_adjacency = AdjacencyMatrix::Zero(total, total);
    built.f_max = stybtang_max_value(cfg.dim);
    return built;
  }

  if (cfg.objective == "hartmann6") {
    const int total = 6 + cfg.aux_dims;
    ObjectiveFn truth = augment_aux([](const Vec& x) { return hartmann6(x); }, cfg.aux_dims);
    built.objective = {with_noise(truth, cfg.obs_noise, noise_rng), truth};
    built.domain = BoxDomain::unit(total);
    built.f_max = hartmann6_max_value();
    return built;
  }

  throw ConfigError("unknown objective '" + cfg.objective + "'");
}

void atomic_write(const fs::path& path, const std::string& content) {
  fs::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) throw std::runtime_error("failed writing " + tmp.string());
  }
  fs::rename(tmp, path);
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double last_finite(const std::vector<double>& v) {
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    if (std::isfinite(*it)) return *it;
  return -std::numeric_limits<double>::infinity();
}

}  // namespace

void write_svg_plot(const fs::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    std::vector<PlotSeries> series) {
  const double W = 780, H = 480;
  const double ml = 76, mr = 170, mt = 46, mb = 56;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      const double b = (i < s.band.size() && std::isfinite(s.band[i])) ? s.band[i] : 0.0;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i] - b);
      ymax = std::max(ymax, s.y[i] + b);
    }
  if (!std::isfinite(xmin)) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }
  const double ypad = 0.04 * (ymax - ymin);
  ymin -= ypad;
  ymax += ypad;

  auto sx = [&](double v) { return ml + (v - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double v) { return mt + ph - (v - ymin) / (ymax - ymin) * ph; };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#ff7f0e", "#8c564b"};
  const int n_colors = 6;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << px(ml + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(title) << "</text>\n";

  // axes
  os << "<line x1=\"" << px(ml) << "\" y1=\"" << px(mt + ph) << "\" x2=\"" << px(ml + pw)
     << "\" y2=\"" << px(mt + ph) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << px(ml) << "\" y1=\"" << px(mt) << "\" x2=\"" << px(ml) << "\" y2=\""
     << px(mt + ph) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin + (xmax - xmin) * i / 4.0;
    const double fy = ymin + (ymax - ymin) * i / 4.0;
    os << "<line x1=\"" << px(sx(fx)) << "\" y1=\"" << px(mt + ph) << "\" x2=\"" << px(sx(fx))
       << "\" y2=\"" << px(mt + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(sx(fx)) << "\" y=\"" << px(mt + ph + 20)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(fx) << "</text>\n";
    os << "<line x1=\"" << px(ml - 5) << "\" y1=\"" << px(sy(fy)) << "\" x2=\"" << px(ml)
       << "\" y2=\"" << px(sy(fy)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(ml - 8) << "\" y=\"" << px(sy(fy) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
       << tick_label(fy) << "</text>\n";
  }
  os << "<text x=\"" << px(ml + pw / 2) << "\" y=\"" << px(H - 14)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
     << xml_escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << px(mt + ph / 2)
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << px(mt + ph / 2) << ")\">" << xml_escape(y_label)
     << "</text>\n";

  // bands then lines, in input order (color follows input order)
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.band.empty()) continue;
    std::string up, down;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size() && i < s.band.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]) || !std::isfinite(s.band[i]))
        continue;
      up += px(sx(s.x[i])) + "," + px(sy(s.y[i] + s.band[i])) + " ";
      down = px(sx(s.x[i])) + "," + px(sy(s.y[i] - s.band[i])) + " " + down;
    }
    if (up.empty()) continue;
    os << "<polygon points=\"" << up << down << "\" fill=\""
       << kPalette[si % n_colors] << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
  }
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::string pts;
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      pts += px(sx(s.x[i])) + "," + px(sy(s.y[i])) + " ";
    }
    if (pts.empty()) continue;
    os << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\""
       << kPalette[si % n_colors] << "\" stroke-width=\"1.8\"/>\n";
  }

  // legend ordered by final y-value, highest first
  std::vector<std::size_t> order(series.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return last_finite(series[a].y) > last_finite(series[b].y);
  });
  double ly = mt + 10;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t si = order[oi];
    os << "<line x1=\"" << px(ml + pw + 14) << "\" y1=\"" << px(ly) << "\" x2=\""
       << px(ml + pw + 40) << "\" y2=\"" << px(ly) << "\" stroke=\"" << kPalette[si % n_colors]
       << "\" stroke-width=\"2.5\"/>\n";
    os << "<text x=\"" << px(ml + pw + 46) << "\" y=\"" << px(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(series[si].label)
       << "</text>\n";
    ly += 20;
  }
  os << "</svg>\n";
  atomic_write(path, os.str());
}

namespace {

struct AlgoRuns {
  std::vector<std::vector<double>> regret;
  std::vector<std::vector<double>> f1;
  std::vector<std::vector<double>> cost;
};

std::string trace_csv(const RunTrace& trace, const BuiltObjective& built, int dim) {
  std::ostringstream os;
  os << "t";
  for (int d = 1; d <= dim; ++d) os << ",x" << d;
  os << ",y,f_star,cum_cost,f1,regret\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> f1col;
  if (built.truth_adjacency)
    f1col = f1_series(trace, *built.truth_adjacency);
  else
    f1col.assign(trace.records.size(), nan);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const auto& rec = trace.records[i];
    best = std::max(best, rec.f_true);
    const double regret = built.f_max ? *built.f_max - best : nan;
    os << rec.t;
    for (int d = 0; d < dim; ++d) os << "," << format_g17(rec.x(d));
    os << "," << format_g17(rec.y) << "," << format_g17(best) << "," << rec.cum_cost << ","
       << format_g17(f1col[i]) << "," << format_g17(regret) << "\n";
  }
  return os.str();
}

std::string seed_tag(int k, int n_seeds) {
  int width = 2;
  for (int v = n_seeds - 1; v >= 100; v /= 10) ++width;
  if (width > 9) width = 9;
  char buf[16];
  std::snprintf(buf, sizeof buf, "%0*d", width, k);
  return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  check_algorithms(cfg.algorithms);
  if (cfg.n_seeds < 1) throw ConfigError("n_seeds must be >= 1");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
  const BuiltObjective probe = build_objective(cfg, cfg.base_seed);
  validate_config(cfg.run, probe.domain);
  const int dim = static_cast<int>(probe.domain.dim());

  fs::create_directories(cfg.out_dir);
  const fs::path out(cfg.out_dir);

  ExperimentResult result;
  std::map<std::string, AlgoRuns> runs;
  for (const auto& algo : cfg.algorithms) {
    for (int k = 0; k < cfg.n_seeds; ++k) {
      const std::uint64_t master = cfg.base_seed + static_cast<std::uint64_t>(k);
      CellStatus st;
      st.algorithm = algo;
      st.seed_index = k;
      ++result.total_cells;
      try {
        BuiltObjective built = build_objective(cfg, master);
        RunConfig rc = cfg.run;
        rc.seed = master;
        RunTrace trace;
        if (algo == "tree") {
          trace = run_tree_gp_ucb(built.objective, built.domain, rc);
        } else if (algo == "random") {
          trace = run_random(built.objective, built.domain, rc);
        } else {
          if (!built.oracle)
            throw std::runtime_error("no tree-structured ground truth for this objective");
          trace = run_oracle(built.objective, built.domain, rc, *built.oracle);
        }
        const std::string name = "run_" + algo + "_seed" + seed_tag(k, cfg.n_seeds) + ".csv";
        atomic_write(out / name, trace_csv(trace, built, dim));
        result.files.push_back(name);
        if (trace.aborted) {
          st.reason = "aborted: " + trace.abort_reason;
        } else {
          st.ok = true;
          MetricSeries ms = best_regret(trace, built.f_max);
          auto& ar = runs[algo];
          ar.regret.push_back(std::move(ms.regret));
          std::vector<double> cost(ms.cost.begin(), ms.cost.end());
          ar.cost.push_back(std::move(cost));
          if (built.truth_adjacency)
            ar.f1.push_back(f1_series(trace, *built.truth_adjacency));
          else
            ar.f1.push_back(std::vector<double>(
                trace.records.size(), std::numeric_limits<double>::quiet_NaN()));
        }
      } catch (const std::exception& e) {
        st.reason = e.what();
      }
      if (!st.ok) ++result.failed_cells;
      result.cells.push_back(std::move(st));
    }
  }

  // aggregate curves per algorithm (those with at least two complete runs)
  struct AlgoAgg {
    std::string algo;
    AggregateCurve regret, f1, cost;
  };
  std::vector<AlgoAgg> aggs;
  for (const auto& algo : cfg.algorithms) {
    const auto it = runs.find(algo);
    if (it == runs.end() || it->second.regret.size() < 2) continue;
    AlgoAgg a;
    a.algo = algo;
    a.regret = aggregate_runs(it->second.regret);
    a.f1 = aggregate_runs(it->second.f1);
    a.cost = aggregate_runs(it->second.cost);
    aggs.push_back(std::move(a));
  }

  const int n_rows = cfg.run.n_iter;
  auto write_agg = [&](const std::string& name,
                       const std::function<const AggregateCurve&(const AlgoAgg&)>& pick) {
    std::ostringstream os;
    os << "t";
    for (const auto& a : aggs) os << "," << a.algo << "_mean," << a.algo << "_band";
    os << "\n";
    for (int t = 1; t <= n_rows; ++t) {
      os << t;
      for (const auto& a : aggs) {
        const AggregateCurve& c = pick(a);
        os << "," << format_g17(c.mean[t - 1]) << "," << format_g17(c.half_width[t - 1]);
      }
      os << "\n";
    }
    atomic_write(out / name, os.str());
    result.files.push_back(name);
  };
  write_agg("agg_regret.csv", [](const AlgoAgg& a) -> const AggregateCurve& { return a.regret; });
  write_agg("agg_cost.csv", [](const AlgoAgg& a) -> const AggregateCurve& { return a.cost; });
  write_agg("agg_f1.csv", [](const AlgoAgg& a) -> const AggregateCurve& { return a.f1; });

  // plots
  const bool fallback = !probe.f_max.has_value();
  const std::string value_label = fallback ? "best value" : "best regret";
  std::vector<double> iters(n_rows);
  for (int t = 0; t < n_rows; ++t) iters[t] = t + 1;
  std::vector<PlotSeries> vs_iter, vs_cost, f1_iter;
  for (const auto& a : aggs) {
    vs_iter.push_back({a.algo, iters, a.regret.mean, a.regret.half_width});
    vs_cost.push_back({a.algo, a.cost.mean, a.regret.mean, a.regret.half_width});
    if (std::isfinite(last_finite(a.f1.mean)))
      f1_iter.push_back({a.algo, iters, a.f1.mean, a.f1.half_width});
  }
  write_svg_plot(out / "regret_vs_iter.svg", value_label + " vs iteration", "iteration",
                 value_label, vs_iter);
  result.files.push_back("regret_vs_iter.svg");
  write_svg_plot(out / "regret_vs_cost.svg", value_label + " vs acquisition cost",
                 "cumulative acquisition evaluations", value_label, vs_cost);
  result.files.push_back("regret_vs_cost.svg");
  write_svg_plot(out / "f1_vs_iter.svg", "structure F1 vs iteration", "iteration", "F1",
                 f1_iter);
  result.files.push_back("f1_vs_iter.svg");

  // manifest: configuration, seeds, per-cell status, artifact list
  nlohmann::json manifest;
  manifest["config"] = experiment_to_kv(cfg);
  manifest["config_hash"] = config_hash(cfg);
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < cfg.n_seeds; ++k)
    seeds.push_back(cfg.base_seed + static_cast<std::uint64_t>(k));
  manifest["seeds"] = seeds;
  manifest["algorithms"] = cfg.algorithms;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : result.cells)
    cells.push_back({{"algorithm", c.algorithm},
                     {"seed_index", c.seed_index},
                     {"status", c.ok ? "ok" : "failed"},
                     {"reason", c.reason}});
  manifest["cells"] = cells;
  std::sort(result.files.begin(), result.files.end());
  manifest["files"] = result.files;
  atomic_write(out / "manifest.json", manifest.dump(2) + "\n");
  result.files.push_back("manifest.json");
  std::sort(result.files.begin(), result.files.end());
  return result;
}

}  // namespace treebo
