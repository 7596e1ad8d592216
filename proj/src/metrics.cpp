#include "treebo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace treebo {

double f1_score(const AdjacencyMatrix& G, const AdjacencyMatrix& G_ref) {
  if (G.rows() != G.cols() || G_ref.rows() != G_ref.cols())
    throw std::invalid_argument("adjacency matrices must be square");
  if (G.rows() != G_ref.rows())
    throw std::invalid_argument("graphs must share one vertex set");
  long e = 0, e_ref = 0, both = 0;
  for (Eigen::Index i = 0; i < G.rows(); ++i)
    for (Eigen::Index j = i + 1; j < G.cols(); ++j) {
      const bool a = G(i, j) != 0;
      const bool b = G_ref(i, j) != 0;
      e += a;
      e_ref += b;
      both += a && b;
    }
  if (e + e_ref == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(e + e_ref);
}

MetricSeries best_regret(const RunTrace& trace, std::optional<double> f_max) {
  if (trace.records.empty()) throw std::invalid_argument("trace has no records");
  MetricSeries s;
  s.regret.reserve(trace.records.size());
  s.cost.reserve(trace.records.size());
  s.regret_is_fallback = !f_max.has_value();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& rec : trace.records) {
    best = std::max(best, rec.f_true);
    s.regret.push_back(f_max ? *f_max - best : best);
    s.cost.push_back(rec.cum_cost);
  }
  return s;
}

std::vector<double> f1_series(const RunTrace& trace, const AdjacencyMatrix& truth) {
  std::vector<double> out;
  out.reserve(trace.records.size());
  // snapshots are stored in increasing t; the one with largest t <= record.t
  // is the structure that chose that record's point
  std::size_t si = 0;
  double current = f1_score(AdjacencyMatrix::Zero(truth.rows(), truth.cols()), truth);
  for (const auto& rec : trace.records) {
    while (si < trace.structure_snapshots.size() &&
           trace.structure_snapshots[si].t <= rec.t) {
      current = f1_score(trace.structure_snapshots[si].adjacency, truth);
      ++si;
    }
    out.push_back(current);
  }
  return out;
}

AggregateCurve aggregate_runs(const std::vector<std::vector<double>>& series) {
  if (series.size() < 2) throw std::invalid_argument("need at least two runs to aggregate");
  const std::size_t len = series.front().size();
  for (const auto& s : series)
    if (s.size() != len) throw std::invalid_argument("runs have mismatched lengths");
  AggregateCurve curve;
  curve.mean.assign(len, 0.0);
  curve.half_width.assign(len, 0.0);
  const double n = static_cast<double>(series.size());
  for (std::size_t i = 0; i < len; ++i) {
    double m = 0.0;
    for (const auto& s : series) m += s[i];
    m /= n;
    double ss = 0.0;
    for (const auto& s : series) ss += (s[i] - m) * (s[i] - m);
    curve.mean[i] = m;
    curve.half_width[i] = 0.25 * std::sqrt(ss / (n - 1.0));
  }
  return curve;
}

}  // namespace treebo
