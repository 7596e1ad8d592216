#include "treebo/benchmarks.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "treebo/kernel.hpp"
#include "treebo/rng.hpp"

namespace treebo {

AdjacencyMatrix make_structure(const StructureSpec& spec) {
  if (spec.kind == "star") {
    if (spec.size < 2) throw std::invalid_argument("star needs at least 2 vertices");
    AdjacencyMatrix A = AdjacencyMatrix::Zero(spec.size, spec.size);
    for (int j = 1; j < spec.size; ++j) A(0, j) = A(j, 0) = 1;
    return A;
  }
  if (spec.kind == "grid") {
    if (spec.rows < 1 || spec.cols < 1 || spec.rows * spec.cols < 2)
      throw std::invalid_argument("grid needs at least 2 vertices");
    const int n = spec.rows * spec.cols;
    AdjacencyMatrix A = AdjacencyMatrix::Zero(n, n);
    auto id = [&](int r, int c) { return r * spec.cols + c; };
    for (int r = 0; r < spec.rows; ++r)
      for (int c = 0; c < spec.cols; ++c) {
        if (c + 1 < spec.cols) A(id(r, c), id(r, c + 1)) = A(id(r, c + 1), id(r, c)) = 1;
        if (r + 1 < spec.rows) A(id(r, c), id(r + 1, c)) = A(id(r + 1, c), id(r, c)) = 1;
      }
    return A;
  }
  if (spec.kind == "partition") {
    if (spec.size < 3 || spec.size % 3 != 0)
      throw std::invalid_argument("partition needs a positive multiple of 3 vertices");
    AdjacencyMatrix A = AdjacencyMatrix::Zero(spec.size, spec.size);
    for (int b = 0; b < spec.size / 3; ++b) {
      const int v = 3 * b;
      A(v, v + 1) = A(v + 1, v) = 1;
      A(v, v + 2) = A(v + 2, v) = 1;
      A(v + 1, v + 2) = A(v + 2, v + 1) = 1;
    }
    return A;
  }
  throw std::invalid_argument("unknown structure kind '" + spec.kind + "'");
}

namespace {

std::string coord_key(const Vec& x) {
  return std::string(reinterpret_cast<const char*>(x.data()),
                     static_cast<std::size_t>(x.size()) * sizeof(double));
}

void write_g17(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

GpSampleFunction::GpSampleFunction(AdjacencyMatrix adjacency, HyperParams params,
                                   std::uint64_t seed)
    : adjacency_(std::move(adjacency)), params_(std::move(params)) {
  if (adjacency_.rows() != adjacency_.cols())
    throw std::invalid_argument("adjacency must be square");
  if (adjacency_.rows() != params_.dim())
    throw std::invalid_argument("adjacency and parameter dimensions differ");
  params_.validate();
  groups_ = groups_of_adjacency(adjacency_);
  rng_.seed(seed);
  k_self_ = 0.0;
  for (const auto& G : groups_) k_self_ += component_scale(G, params_.scale_components);
  nugget_ = 1e-10 * k_self_;
  sd_floor_ = 1e-12 * k_self_;
}

void GpSampleFunction::reserve(Eigen::Index cap) {
  if (X_.rows() >= cap) return;
  Eigen::Index grown = X_.rows() > 0 ? X_.rows() : 8;
  while (grown < cap) grown *= 2;
  X_.conservativeResize(grown, adjacency_.rows());
  f_.conservativeResize(grown);
  L_.conservativeResize(grown, grown);
  u_.conservativeResize(grown);
}

GpSampleFunction::Predict GpSampleFunction::predict(const Vec& x) const {
  Predict p;
  double var = k_self_ + nugget_;
  if (n_ > 0) {
    Vec c = Vec::Zero(n_);
    const Mat x_row = x.transpose();
    const Mat X_cache = X_.topRows(n_);
    for (const auto& G : groups_) c += component_cross(G, X_cache, x_row, params_).col(0);
    p.w = L_.topLeftCorner(n_, n_).triangularView<Eigen::Lower>().solve(c);
    p.mean = p.w.dot(u_.head(n_));
    var -= p.w.squaredNorm();
  }
  if (var < sd_floor_) var = sd_floor_;
  p.sd = std::sqrt(var);
  return p;
}

void GpSampleFunction::append(const Vec& x, double value, const Predict& p) {
  reserve(n_ + 1);
  X_.row(n_) = x.transpose();
  f_(n_) = value;
  if (n_ > 0) L_.row(n_).head(n_) = p.w.transpose();
  L_(n_, n_) = p.sd;
  u_(n_) = (value - p.mean) / p.sd;
  index_.emplace(coord_key(x), n_);
  ++n_;
}

double GpSampleFunction::operator()(const Vec& x) {
  if (x.size() != adjacency_.rows())
    throw std::invalid_argument("query dimension does not match the sampled function");
  const auto it = index_.find(coord_key(x));
  if (it != index_.end()) return f_(it->second);
  const Predict p = predict(x);
  const double value = p.mean + p.sd * normal01(rng_);
  append(x, value, p);
  return value;
}

void GpSampleFunction::save(std::ostream& os) const {
  const Eigen::Index D = adjacency_.rows();
  os << "gp-sample 1\n" << D << "\n";
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j)
      if (adjacency_(i, j) != 0) edges.emplace_back(i, j);
  os << edges.size() << "\n";
  for (const auto& [i, j] : edges) os << i << " " << j << "\n";
  auto write_vec = [&](const Vec& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) os << " ";
      write_g17(os, v(i));
    }
    os << "\n";
  };
  write_vec(params_.lengthscales);
  write_vec(params_.scale_components);
  write_g17(os, params_.noise_std);
  os << "\n" << n_ << "\n";
  for (Eigen::Index r = 0; r < n_; ++r) {
    for (Eigen::Index d = 0; d < D; ++d) {
      write_g17(os, X_(r, d));
      os << " ";
    }
    write_g17(os, f_(r));
    os << "\n";
  }
  os << rng_ << "\n";
}

GpSampleFunction GpSampleFunction::load(std::istream& is) {
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (!is || magic != "gp-sample" || version != 1)
    throw std::runtime_error("unrecognized sampled-function file");
  Eigen::Index D = 0;
  std::size_t m = 0;
  is >> D >> m;
  if (!is || D < 1) throw std::runtime_error("bad sampled-function header");
  AdjacencyMatrix A = AdjacencyMatrix::Zero(D, D);
  for (std::size_t e = 0; e < m; ++e) {
    int i, j;
    is >> i >> j;
    if (!is || i < 0 || j < 0 || i >= D || j >= D)
      throw std::runtime_error("bad edge in sampled-function file");
    A(i, j) = A(j, i) = 1;
  }
  HyperParams params;
  params.lengthscales.resize(D);
  params.scale_components.resize(D);
  for (Eigen::Index d = 0; d < D; ++d) is >> params.lengthscales(d);
  for (Eigen::Index d = 0; d < D; ++d) is >> params.scale_components(d);
  is >> params.noise_std;
  Eigen::Index n = 0;
  is >> n;
  if (!is || n < 0) throw std::runtime_error("bad cache length in sampled-function file");
  GpSampleFunction fn(std::move(A), std::move(params), 0);
  Vec x(D);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index d = 0; d < D; ++d) is >> x(d);
    double value;
    is >> value;
    if (!is) throw std::runtime_error("truncated sampled-function cache");
    const Predict p = fn.predict(x);
    fn.append(x, value, p);
  }
  is >> fn.rng_;
  if (!is) throw std::runtime_error("missing generator state in sampled-function file");
  return fn;
}

std::shared_ptr<GpSampleFunction> sample_gp_function(const AdjacencyMatrix& adjacency,
                                                     const HyperParams& params,
                                                     std::uint64_t seed) {
  return std::make_shared<GpSampleFunction>(adjacency, params, seed);
}

double stybtang(const Vec& x) {
  double s = 0.0;
  for (Eigen::Index d = 0; d < x.size(); ++d) {
    const double v = x(d);
    const double v2 = v * v;
    s += v2 * v2 - 16.0 * v2 + 5.0 * v;
  }
  return -0.5 * s;
}

double stybtang_argmax_1d() {
  // stationary point of -(x^4 - 16 x^2 + 5 x)/2 near -2.9: 4x^3 - 32x + 5 = 0
  double x = -2.9;
  for (int it = 0; it < 64; ++it) {
    const double g = 4.0 * x * x * x - 32.0 * x + 5.0;
    const double h = 12.0 * x * x - 32.0;
    const double step = g / h;
    x -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return x;
}

double stybtang_max_value(int dim) {
  const double x = stybtang_argmax_1d();
  Vec v(1);
  v(0) = x;
  return dim * stybtang(v);
}

namespace {

const double kHartmannAlpha[4] = {1.0, 1.2, 3.0, 3.2};
const double kHartmannA[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                 {0.05, 10, 17, 0.1, 8, 14},
                                 {3, 3.5, 1.7, 10, 17, 8},
                                 {17, 8, 0.05, 10, 0.1, 14}};
const double kHartmannP[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                 {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                 {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                 {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

}  // namespace

double hartmann6(const Vec& x) {
  if (x.size() != 6) throw std::invalid_argument("hartmann6 expects 6 coordinates");
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    double e = 0.0;
    for (int j = 0; j < 6; ++j) {
      const double d = x(j) - kHartmannP[i][j];
      e += kHartmannA[i][j] * d * d;
    }
    s += kHartmannAlpha[i] * std::exp(-e);
  }
  return s;
}

Vec hartmann6_argmax() {
  Vec x(6);
  x << 0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573;
  return x;
}

double hartmann6_max_value() { return hartmann6(hartmann6_argmax()); }

ObjectiveFn augment_aux(ObjectiveFn f, int aux_dims) {
  if (aux_dims < 0) throw std::invalid_argument("aux_dims must be >= 0");
  if (aux_dims == 0) return f;
  return [f = std::move(f), aux_dims](const Vec& x) {
    if (x.size() <= aux_dims)
      throw std::invalid_argument("augmented input has no base coordinates");
    return f(x.head(x.size() - aux_dims));
  };
}

ObjectiveFn with_noise(ObjectiveFn f, double noise_std, std::shared_ptr<std::mt19937_64> rng) {
  if (noise_std < 0) throw std::invalid_argument("noise std must be >= 0");
  if (noise_std == 0.0) return f;
  if (!rng) throw std::invalid_argument("noisy wrapper needs a generator");
  return [f = std::move(f), noise_std, rng](const Vec& x) {
    return f(x) + noise_std * normal01(*rng);
  };
}

}  // namespace treebo
