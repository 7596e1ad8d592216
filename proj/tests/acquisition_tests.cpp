#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>

#include "treebo/acquisition.hpp"
#include "test_util.hpp"

using namespace treebo;

namespace {

Dataset make_data(const Mat& X, const Vec& y) {
  Dataset d;
  d.X = X;
  d.y = y;
  return d;
}

// Deterministic analytic field: smooth, component-dependent, cheap. Lets the
// exhaustive oracle recompute any entry independently.
class AnalyticField : public ComponentField {
 public:
  void eval(const VarGroup& G, const Mat& X_sub, Vec& out) const override {
    out.resize(X_sub.rows());
    for (Eigen::Index r = 0; r < X_sub.rows(); ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < G.size(); ++k)
        v += std::sin(3.0 * X_sub(r, static_cast<Eigen::Index>(k)) + 1.7 * G[k]) +
             0.3 * std::cos(5.0 * X_sub(r, static_cast<Eigen::Index>(k)));
      out(r) = v;
    }
  }

  double at(const VarGroup& G, const Vec& x_sub) const {
    Vec out;
    eval(G, x_sub.transpose(), out);
    return out(0);
  }
};

// Separable concave bumps with known per-axis argmaxes.
class ConcaveField : public ComponentField {
 public:
  explicit ConcaveField(Vec peaks) : peaks_(std::move(peaks)) {}
  void eval(const VarGroup& G, const Mat& X_sub, Vec& out) const override {
    out.resize(X_sub.rows());
    for (Eigen::Index r = 0; r < X_sub.rows(); ++r) {
      double v = 0.0;
      for (std::size_t k = 0; k < G.size(); ++k) {
        const double d = X_sub(r, static_cast<Eigen::Index>(k)) - peaks_(G[k]);
        v -= d * d;
      }
      out(r) = v;
    }
  }

 private:
  Vec peaks_;
};

std::vector<DiscretizedAxis> handmade_axes(std::mt19937_64& rng, const std::vector<int>& sizes) {
  std::vector<DiscretizedAxis> axes(sizes.size());
  for (std::size_t d = 0; d < sizes.size(); ++d) {
    axes[d].var = static_cast<int>(d);
    axes[d].reps = tu::random_points(rng, sizes[d], 1).col(0);
    std::sort(axes[d].reps.data(), axes[d].reps.data() + axes[d].reps.size());
  }
  return axes;
}

double oracle_total(const ComponentField& field, const std::vector<VarGroup>& groups,
                    const std::vector<DiscretizedAxis>& axes, const std::vector<int>& idx) {
  double total = 0.0;
  for (const auto& G : groups) {
    Vec x_sub(static_cast<Eigen::Index>(G.size()));
    for (std::size_t k = 0; k < G.size(); ++k)
      x_sub(static_cast<Eigen::Index>(k)) =
          axes[static_cast<std::size_t>(G[k])].reps(idx[static_cast<std::size_t>(G[k])]);
    Vec out;
    field.eval(G, x_sub.transpose(), out);
    total += out(0);
  }
  return total;
}

}  // namespace

TEST_CASE("exploration weight grows logarithmically") {
  CHECK(beta(1) == doctest::Approx(0.34657359027997264).epsilon(1e-15));
  CHECK(beta(2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(beta(100) == doctest::Approx(0.5 * std::log(200.0)).epsilon(1e-15));
  for (int t = 1; t < 50; ++t) CHECK(beta(t + 1) > beta(t));
  CHECK_THROWS_AS(beta(0), std::invalid_argument);
  CHECK_THROWS_AS(beta(-3), std::invalid_argument);
}

TEST_CASE("cost counter accumulates") {
  CostCounter c;
  CHECK(c.count() == 0);
  c.add(5);
  c.add(12);
  CHECK(c.count() == 17);
}

TEST_CASE("uniform discretization partitions the box with interior reps") {
  std::mt19937_64 rng(71);
  BoxDomain box = BoxDomain::cube(3, -2.0, 4.0);
  auto axes = discretize_uniform(box, 5, rng);
  REQUIRE(axes.size() == 3);
  for (std::size_t d = 0; d < 3; ++d) {
    const auto& ax = axes[d];
    CHECK(ax.var == static_cast<int>(d));
    REQUIRE(ax.reps.size() == 5);
    CHECK(ax.cell_lo(0) == -2.0);
    CHECK(ax.cell_hi(4) == 4.0);
    for (int c = 0; c < 5; ++c) {
      if (c > 0) CHECK(ax.cell_lo(c) == ax.cell_hi(c - 1));  // exact partition
      CHECK(ax.reps(c) > ax.cell_lo(c));   // strictly inside the cell
      CHECK(ax.reps(c) < ax.cell_hi(c));
    }
  }
  CHECK_THROWS_AS(discretize_uniform(box, 0, rng), std::invalid_argument);

  // Deterministic in the seed.
  std::mt19937_64 a(9), b(9);
  auto ax1 = discretize_uniform(box, 4, a);
  auto ax2 = discretize_uniform(box, 4, b);
  for (std::size_t d = 0; d < 3; ++d)
    CHECK((ax1[d].reps - ax2[d].reps).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("midpoint discretization is the fixed centered grid") {
  BoxDomain box = BoxDomain::unit(2);
  auto axes = discretize_midpoints(box, 4);
  REQUIRE(axes.size() == 2);
  for (const auto& ax : axes) {
    REQUIRE(ax.reps.size() == 4);
    CHECK(ax.reps(0) == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(ax.reps(1) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(ax.reps(3) == doctest::Approx(0.875).epsilon(1e-15));
  }
  CHECK_THROWS_AS(discretize_midpoints(box, 0), std::invalid_argument);
}

TEST_CASE("single-point component acquisition follows the mean-plus-bonus rule") {
  std::mt19937_64 rng(72);
  HyperParams p = HyperParams::constant(2, 0.3, 0.8, 0.1);
  DependencyForest f(2, {{0, 1}});

  // Prior: zero mean, bonus = sqrt(beta) * prior standard deviation.
  PosteriorState prior(Dataset{}, f, p);
  CostCounter counter;
  Vec x(2);
  x << 0.4, 0.6;
  const double got = component_ucb(prior, {0, 1}, subvector(x, {0, 1}), 2, counter);
  CHECK(got == doctest::Approx(std::sqrt(std::log(2.0)) *
                               std::sqrt(std::sqrt(2.0) * 0.8)).epsilon(1e-12));
  CHECK(counter.count() == 1);

  // With data: mean + sqrt(beta) * sqrt(variance), for every component.
  PosteriorState st(make_data(tu::random_points(rng, 8, 2), tu::random_values(rng, 8)), f, p);
  for (int t : {1, 3, 17}) {
    auto [m, v] = st.component_posterior({0, 1}, x);
    const double want = m + std::sqrt(beta(t)) * std::sqrt(v);
    CHECK(component_ucb(st, {0, 1}, subvector(x, {0, 1}), t, counter) ==
          doctest::Approx(want).epsilon(1e-12));
  }

  // Larger t never lowers the bound at a fixed point.
  double prev = -1e300;
  for (int t = 1; t <= 64; t *= 2) {
    const double phi = component_ucb(st, {0, 1}, subvector(x, {0, 1}), t, counter);
    CHECK(phi >= prev);
    prev = phi;
  }
}

TEST_CASE("table construction pays the tree-structured cost law") {
  std::mt19937_64 rng(73);
  AnalyticField field;

  // Connected spanning tree on D vertices: (D-1) R^2 entries per pass.
  for (int D : {3, 5, 8}) {
    for (int R : {2, 3, 5}) {
      DependencyForest f(D);
      for (int v = 1; v < D; ++v) f.set_edge(0, v, true);  // star
      auto axes = discretize_midpoints(BoxDomain::unit(D), R);
      CostCounter counter;
      auto tables = build_phi_tables(field, f, axes, counter, -1);
      CHECK(counter.count() == static_cast<long>(D - 1) * R * R);
      REQUIRE(static_cast<int>(tables.size()) == D - 1);
      for (const auto& tab : tables) {
        CHECK(tab.complete());
        CHECK(tab.values.rows() == R);
        CHECK(tab.values.cols() == R);
      }
    }
  }

  // q isolated vertices add q R entries on top of the edge tables.
  DependencyForest f(6, {{0, 3}, {2, 4}});  // q = 2 isolated: 1 and 5
  const int R = 4;
  auto axes = discretize_midpoints(BoxDomain::unit(6), R);
  CostCounter counter;
  auto tables = build_phi_tables(field, f, axes, counter, -1);
  CHECK(counter.count() == 2 * R * R + 2 * R);
  REQUIRE(tables.size() == 4);
  CHECK(tables[0].group == VarGroup{0, 3});
  CHECK(tables[1].group == VarGroup{2, 4});
  CHECK(tables[2].group == VarGroup{1});
  CHECK(tables[3].group == VarGroup{5});
  CHECK(tables[2].values.rows() == R);
  CHECK(tables[2].values.cols() == 1);

  // Entries hold the field at the representatives, in row-major order.
  const auto& t0 = tables[0];
  for (int a = 0; a < R; ++a)
    for (int b = 0; b < R; ++b) {
      Vec x_sub(2);
      x_sub << axes[0].reps(a), axes[3].reps(b);
      CHECK(t0.values(a, b) == doctest::Approx(field.at({0, 3}, x_sub)).epsilon(1e-14));
    }
}

TEST_CASE("evaluation cap truncates tables in canonical order") {
  std::mt19937_64 rng(74);
  AnalyticField field;
  DependencyForest f(3, {{0, 1}, {0, 2}});
  auto axes = discretize_midpoints(BoxDomain::unit(3), 3);  // two 9-entry tables
  CostCounter counter;
  auto tables = build_phi_tables(field, f, axes, counter, 12);
  CHECK(counter.count() == 12);
  REQUIRE(tables.size() == 2);
  CHECK(tables[0].evaluated == 9);
  CHECK(tables[0].complete());
  CHECK(tables[1].evaluated == 3);
  CHECK_FALSE(tables[1].complete());
  // The partial table's prefix is row-major: its first row is filled.
  for (int b = 0; b < 3; ++b) {
    Vec x_sub(2);
    x_sub << axes[0].reps(0), axes[2].reps(b);
    CHECK(tables[1].values(0, b) == doctest::Approx(field.at({0, 2}, x_sub)).epsilon(1e-14));
  }

  CostCounter c2;
  auto t2 = build_phi_tables(field, f, axes, c2, 5);
  CHECK(c2.count() == 5);
  CHECK(t2[0].evaluated == 5);
  CHECK(t2[1].evaluated == 0);
}

TEST_CASE("one-dimensional maximization picks the best entry") {
  DependencyForest f(1);
  std::vector<DiscretizedAxis> axes(1);
  axes[0].var = 0;
  axes[0].reps = Vec(2);
  axes[0].reps << 0.25, 0.75;
  std::vector<PhiTable> tables(1);
  tables[0].group = {0};
  tables[0].values = Mat(2, 1);
  tables[0].values << 1.0, 2.0;
  tables[0].evaluated = 2;
  auto res = msg_passing_discrete(axes, f, tables);
  CHECK(res.idx == std::vector<int>{1});
  CHECK(res.value == 2.0);
  CHECK(res.x(0) == 0.75);
}

TEST_CASE("single-edge maximization scans the full table") {
  DependencyForest f(2, {{0, 1}});
  std::vector<DiscretizedAxis> axes(2);
  for (int d = 0; d < 2; ++d) {
    axes[d].var = d;
    axes[d].reps = Vec(2);
    axes[d].reps << 0.2, 0.8;
  }
  std::vector<PhiTable> tables(1);
  tables[0].group = {0, 1};
  tables[0].values = Mat(2, 2);
  tables[0].values << 1.0, 5.0, 4.0, 3.0;
  tables[0].evaluated = 4;
  auto res = msg_passing_discrete(axes, f, tables);
  CHECK(res.value == 5.0);
  CHECK(res.idx == std::vector<int>{0, 1});
  CHECK(res.x(0) == 0.2);
  CHECK(res.x(1) == 0.8);
}

TEST_CASE("message passing equals exhaustive enumeration") {
  std::mt19937_64 rng(75);
  AnalyticField field;
  for (int rep = 0; rep < 50; ++rep) {
    const int dim = 2 + static_cast<int>(uniform_below(rng, 5));
    auto f = tu::random_forest(rng, dim, static_cast<int>(uniform_below(rng, dim)));
    std::vector<int> sizes(static_cast<std::size_t>(dim));
    for (auto& s : sizes) s = 2 + static_cast<int>(uniform_below(rng, 4));
    auto axes = handmade_axes(rng, sizes);
    CostCounter counter;
    auto tables = build_phi_tables(field, f, axes, counter, -1);
    auto res = msg_passing_discrete(axes, f, tables);

    const auto groups = components_of(f);
    auto best = tu::enumerate_grid_max(sizes, [&](const std::vector<int>& idx) {
      return oracle_total(field, groups, axes, idx);
    });
    CHECK(res.value == doctest::Approx(best.value).epsilon(1e-9));
    // The reported index really attains the reported value.
    CHECK(oracle_total(field, groups, axes, res.idx) ==
          doctest::Approx(res.value).epsilon(1e-9));
    for (int d = 0; d < dim; ++d)
      CHECK(res.x(d) == axes[static_cast<std::size_t>(d)].reps(res.idx[static_cast<std::size_t>(d)]));
  }
}

TEST_CASE("exhaustive check on the six-variable hub-and-chain forest") {
  std::mt19937_64 rng(76);
  AnalyticField field;
  DependencyForest f(6, {{0, 3}, {0, 4}, {0, 5}, {2, 3}});
  auto axes = discretize_midpoints(BoxDomain::unit(6), 3);
  CostCounter counter;
  auto tables = build_phi_tables(field, f, axes, counter, -1);
  CHECK(counter.count() == 4 * 9 + 1 * 3);  // four edge tables plus singleton {1}
  auto res = msg_passing_discrete(axes, f, tables);
  const auto groups = components_of(f);
  auto best = tu::enumerate_grid_max({3, 3, 3, 3, 3, 3}, [&](const std::vector<int>& idx) {
    return oracle_total(field, groups, axes, idx);
  });
  CHECK(res.value == doctest::Approx(best.value).epsilon(1e-10));
}

TEST_CASE("ties break toward the lowest grid index") {
  DependencyForest f(3, {{0, 1}});
  std::vector<DiscretizedAxis> axes(3);
  for (int d = 0; d < 3; ++d) {
    axes[d].var = d;
    axes[d].reps = Vec(2);
    axes[d].reps << 0.3, 0.7;
  }
  std::vector<PhiTable> tables(2);
  tables[0].group = {0, 1};
  tables[0].values = Mat::Constant(2, 2, 4.0);  // all tied
  tables[0].evaluated = 4;
  tables[1].group = {2};
  tables[1].values = Mat::Constant(2, 1, 1.0);  // tied singleton
  tables[1].evaluated = 2;
  auto res = msg_passing_discrete(axes, f, tables);
  CHECK(res.idx == std::vector<int>{0, 0, 0});
  CHECK(res.value == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("partially evaluated tables fall back to their best prefix entry") {
  // Chain 0-1-2: the complete edge (0,1) is solved exactly; the partial edge
  // (1,2) contributes its best evaluated entry but only assigns the still-free
  // axis 2.
  DependencyForest f(3, {{0, 1}, {1, 2}});
  std::vector<DiscretizedAxis> axes(3);
  for (int d = 0; d < 3; ++d) {
    axes[d].var = d;
    axes[d].reps = Vec(2);
    axes[d].reps << 0.25, 0.75;
  }
  std::vector<PhiTable> tables(2);
  tables[0].group = {0, 1};
  tables[0].values = Mat(2, 2);
  tables[0].values << 1.0, 5.0, 4.0, 3.0;  // exact max 5 at (0,1)
  tables[0].evaluated = 4;
  tables[1].group = {1, 2};
  tables[1].values = Mat::Zero(2, 2);
  tables[1].values(0, 0) = 10.0;  // row-major prefix: entries (0,0), (0,1)
  tables[1].values(0, 1) = 2.0;
  tables[1].evaluated = 2;
  auto res = msg_passing_discrete(axes, f, tables);
  CHECK(res.value == doctest::Approx(15.0).epsilon(1e-15));
  CHECK(res.idx == std::vector<int>{0, 1, 0});  // axis 1 kept from the exact pass

  // A fully untouched axis defaults to grid index 0.
  DependencyForest singles(3);
  std::vector<PhiTable> st(3);
  st[0].group = {0};
  st[0].values = Mat::Zero(2, 1);
  st[0].evaluated = 0;  // never built
  st[1].group = {1};
  st[1].values = Mat(2, 1);
  st[1].values << -1.0, 6.0;
  st[1].evaluated = 2;
  st[2].group = {2};
  st[2].values = Mat::Zero(2, 1);
  st[2].evaluated = 0;
  auto res2 = msg_passing_discrete(axes, singles, st);
  CHECK(res2.value == 6.0);
  CHECK(res2.idx == std::vector<int>{0, 1, 0});

  // A partial singleton contributes its prefix best.
  st[2].values << 8.0, 9.0;
  st[2].evaluated = 1;  // only the first entry may be read
  auto res3 = msg_passing_discrete(axes, singles, st);
  CHECK(res3.value == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(res3.idx == std::vector<int>{0, 1, 0});
}

TEST_CASE("maximization rejects malformed inputs") {
  DependencyForest f(2, {{0, 1}});
  std::vector<DiscretizedAxis> axes(1);
  axes[0].var = 0;
  axes[0].reps = Vec::Constant(2, 0.5);
  std::vector<PhiTable> tables;
  CHECK_THROWS_AS(msg_passing_discrete(axes, f, tables), std::invalid_argument);

  std::vector<DiscretizedAxis> empty_axes(2);
  empty_axes[0].var = 0;
  empty_axes[0].reps = Vec(0);
  empty_axes[1].var = 1;
  empty_axes[1].reps = Vec(0);
  CHECK_THROWS_AS(msg_passing_discrete(empty_axes, f, tables), std::invalid_argument);
}

TEST_CASE("zooming shrinks to the selected cell") {
  std::mt19937_64 rng(77);
  BoxDomain box = BoxDomain::cube(1, 0.0, 3.0);
  Vec x(1);
  x << 0.2;  // first of three cells
  auto step = zoom_strategy(x, box, 3, rng);
  CHECK(step.bounds.lower(0) == 0.0);
  CHECK(step.bounds.upper(0) == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(step.axes.size() == 1);
  CHECK(step.axes[0].reps.size() == 3);
  for (int c = 0; c < 3; ++c) {
    CHECK(step.axes[0].reps(c) > step.axes[0].cell_lo(c));
    CHECK(step.axes[0].reps(c) < step.axes[0].cell_hi(c));
  }

  x << 1.7;  // middle cell
  auto mid = zoom_strategy(x, box, 3, rng);
  CHECK(mid.bounds.lower(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mid.bounds.upper(0) == doctest::Approx(2.0).epsilon(1e-15));

  x << 3.0;  // top boundary clamps to the last cell
  auto top = zoom_strategy(x, box, 3, rng);
  CHECK(top.bounds.lower(0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(top.bounds.upper(0) == 3.0);
}

TEST_CASE("repeated zooming shrinks geometrically and stays nested") {
  std::mt19937_64 rng(78);
  BoxDomain box = BoxDomain::cube(2, -1.0, 1.0);
  Vec x(2);
  x << 0.3, -0.6;
  BoxDomain cur = box;
  double width = 2.0;
  for (int level = 0; level < 5; ++level) {
    auto step = zoom_strategy(x, cur, 4, rng);
    width /= 4.0;
    for (int d = 0; d < 2; ++d) {
      CHECK(step.bounds.upper(d) - step.bounds.lower(d) == doctest::Approx(width).epsilon(1e-12));
      CHECK(step.bounds.lower(d) >= cur.lower(d) - 1e-15);
      CHECK(step.bounds.upper(d) <= cur.upper(d) + 1e-15);
      CHECK(step.bounds.lower(d) <= x(d));
      CHECK(x(d) <= step.bounds.upper(d));
    }
    cur = step.bounds;
  }
}

TEST_CASE("one zoom level reproduces the discrete maximizer on its grid") {
  std::mt19937_64 rng_data(79);
  HyperParams p = HyperParams::constant(3, 0.3, 0.8, 0.1);
  DependencyForest f(3, {{1, 2}});
  PosteriorState st(make_data(tu::random_points(rng_data, 9, 3), tu::random_values(rng_data, 9)),
                    f, p);
  BoxDomain box = BoxDomain::unit(3);
  const int t = 7, R = 4;

  std::mt19937_64 rng_a(123);
  CostCounter ca;
  auto res = msg_passing_continuous(box, f, st, t, R, 1, rng_a, ca);

  std::mt19937_64 rng_b(123);
  auto axes = discretize_uniform(box, R, rng_b);
  UcbField field(st, t);
  CostCounter cb;
  auto tables = build_phi_tables(field, f, axes, cb, -1);
  auto want = msg_passing_discrete(axes, f, tables);

  CHECK(res.idx == want.idx);
  CHECK((res.x - want.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(res.value == want.value);
  CHECK(ca.count() == cb.count());
}

TEST_CASE("zooming maximizer stays in bounds and within the cost budget") {
  std::mt19937_64 rng_data(80);
  for (int rep = 0; rep < 10; ++rep) {
    const int dim = 2 + static_cast<int>(uniform_below(rng_data, 4));
    auto f = tu::random_forest(rng_data, dim, static_cast<int>(uniform_below(rng_data, dim)));
    HyperParams p = HyperParams::constant(dim, 0.3, 0.8, 0.1);
    PosteriorState st(make_data(tu::random_points(rng_data, 6, dim),
                                tu::random_values(rng_data, 6)),
                      f, p);
    BoxDomain box = BoxDomain::unit(dim);
    const int R = 3, L = 3;
    std::mt19937_64 rng(500 + rep);
    CostCounter counter;
    auto res = msg_passing_continuous(box, f, st, 5, R, L, rng, counter);
    CHECK(box.contains(res.x));

    const long edges = f.edge_count();
    long isolated = 0;
    for (int v = 0; v < dim; ++v)
      if (f.degree(v) == 0) ++isolated;
    CHECK(counter.count() == L * (edges * R * R + isolated * R));
    CHECK(counter.count() <= static_cast<long>(L) * ((dim - 1) * R * R + dim * R));
  }
}

TEST_CASE("zooming maximizer is deterministic in the seed") {
  std::mt19937_64 rng_data(81);
  DependencyForest f(3, {{0, 2}});
  HyperParams p = HyperParams::constant(3, 0.3, 0.8, 0.1);
  PosteriorState st(make_data(tu::random_points(rng_data, 8, 3), tu::random_values(rng_data, 8)),
                    f, p);
  BoxDomain box = BoxDomain::unit(3);
  CostCounter c1, c2;
  std::mt19937_64 a(42), b(42), c(43);
  auto r1 = msg_passing_continuous(box, f, st, 3, 4, 3, a, c1);
  auto r2 = msg_passing_continuous(box, f, st, 3, 4, 3, b, c2);
  CHECK((r1.x - r2.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r1.value == r2.value);
  auto r3 = msg_passing_continuous(box, f, st, 3, 4, 3, c, c1);
  CHECK((r1.x - r3.x).cwiseAbs().maxCoeff() > 0.0);  // fresh randomness moves the reps
}

TEST_CASE("zooming closes in on the peak of a separable concave field") {
  Vec peaks(2);
  peaks << 0.6, 0.4;
  ConcaveField field(peaks);
  DependencyForest f(2);  // two singleton components
  BoxDomain box = BoxDomain::unit(2);
  int close = 0;
  const int seeds = 25;
  for (int s = 0; s < seeds; ++s) {
    std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(s));
    CostCounter counter;
    auto res = msg_passing_continuous_field(box, f, field, 4, 4, rng, counter);
    if (std::abs(res.x(0) - 0.6) <= 0.05 && std::abs(res.x(1) - 0.4) <= 0.05) ++close;
  }
  CHECK(close >= 20);
}
