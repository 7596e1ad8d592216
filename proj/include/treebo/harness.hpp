#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "treebo/benchmarks.hpp"
#include "treebo/config.hpp"
#include "treebo/domain.hpp"
#include "treebo/metrics.hpp"
#include "treebo/optimizer.hpp"

namespace treebo {

// One experiment: the per-run knobs plus objective selection and the
// (algorithm × seed) sweep. Every field is addressable by its own name both
// in the key-value config file and as a command-line flag.
struct ExperimentConfig {
  RunConfig run;
  std::string objective = "gp_sample";  // gp_sample | stybtang | hartmann6
  std::string structure = "star";       // gp_sample graph kind (see make_structure)
  int size = 25;                        // star / partition vertex count
  int rows = 0, cols = 0;               // grid shape
  double sigma_opt = 1.0;               // generative per-dimension scale
  double ell_opt = 0.2;                 // generative lengthscale
  double obs_noise = 0.15;              // observation noise std
  int dim = 10;                         // stybtang base dimension
  int aux_dims = 0;                     // inert padding dimensions
  std::vector<std::string> algorithms = {"tree", "random"};  // also: "oracle"
  int n_seeds = 25;
  std::uint64_t base_seed = 0;          // seed of cell k is base_seed + k
  std::string out_dir = "results";
};

// Applies known keys on top of `base`; rejects unknown keys and malformed
// values with ConfigError.
ExperimentConfig experiment_from_kv(const KvMap& kv, const ExperimentConfig& base);
KvMap experiment_to_kv(const ExperimentConfig& cfg);
const std::vector<std::string>& experiment_keys();

// Objective instantiated for one cell (one master seed).
struct BuiltObjective {
  NoisyObjective objective;
  BoxDomain domain;
  std::optional<AdjacencyMatrix> truth_adjacency;  // absent: structure F1 undefined
  std::optional<double> f_max;                     // absent: best-value fallback
  std::optional<OracleTruth> oracle;  // absent: oracle baseline unavailable
};

BuiltObjective build_objective(const ExperimentConfig& cfg, std::uint64_t master_seed);

struct CellStatus {
  std::string algorithm;
  int seed_index = 0;
  bool ok = false;
  std::string reason;  // empty when ok
};

struct ExperimentResult {
  int total_cells = 0;
  int failed_cells = 0;
  std::vector<CellStatus> cells;
  std::vector<std::string> files;  // artifact names relative to out_dir, sorted
};

// Runs every (algorithm × seed) cell sequentially, writing one CSV trace per
// cell, one aggregate CSV per metric, SVG plots, and a manifest. A failing
// cell is recorded and the experiment continues.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// One curve of a line chart; `band` (same length as y, may be empty) draws a
// shaded y ± band region.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> band;
};

// Minimal static SVG line chart; legend entries ordered by final y-value,
// highest first.
void write_svg_plot(const std::filesystem::path& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    std::vector<PlotSeries> series);

// Writes content to a temporary file in the target directory, then renames it
// over the destination.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// %.17g rendering used in every CSV cell so reruns are byte-identical.
std::string format_g17(double v);

// FNV-1a over the canonical key=value rendering of the config.
std::string config_hash(const ExperimentConfig& cfg);

}  // namespace treebo
