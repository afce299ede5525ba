#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gcoreset/evaluation.hpp"
#include "gcoreset/generators.hpp"
#include "gcoreset/parallel.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace gcoreset;

namespace {

std::vector<VertexId> iota_ids(std::size_t n) {
  std::vector<VertexId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST(EmpiricalError, IdentityIsZero) {
  const Graph g = oracle::small_random_graph(30, 20, 1);
  const WeightedPointSet x({1, 5, 9}, {2.0, 0.5, 1.0});
  EXPECT_EQ(empirical_error(g, x, x, CenterSet({0, 7})), 0.0);
}

TEST(EmpiricalError, PathExample) {
  const Graph g = path_graph(3);
  const auto x = WeightedPointSet::unit({0, 1, 2});
  const WeightedPointSet d({0, 2}, {1.5, 1.5});
  EXPECT_DOUBLE_EQ(empirical_error(g, x, d, CenterSet({1})), 0.5);
}

TEST(EmpiricalError, ScalingWeights) {
  const Graph g = oracle::small_random_graph(30, 20, 2);
  const auto d_all = oracle::all_pairs(g);
  const auto x = WeightedPointSet::unit({0, 3, 4, 8, 20});
  const WeightedPointSet d({3, 20}, {2.0, 3.0});
  const CenterSet c({1, 11});
  const double e0 = oracle::cost(d_all, d, {1, 11}) / oracle::cost(d_all, x, {1, 11}) - 1.0;
  const double alpha = 0.3;
  const WeightedPointSet scaled({3, 20}, {2.0 * (1 + alpha), 3.0 * (1 + alpha)});
  EXPECT_NEAR(empirical_error(g, x, scaled, c), std::abs((1 + alpha) * (1 + e0) - 1), 1e-12);
}

TEST(EmpiricalError, ZeroCostIsUndefined) {
  const Graph g = path_graph(3);
  EXPECT_THROW(empirical_error(g, WeightedPointSet::unit({1}), WeightedPointSet::unit({1}), CenterSet({1})),
               UndefinedErrorError);
}

TEST(CenterSetStream, PrefixConsistentAndValid) {
  const Graph g = grid_graph(5, 5, 1);
  const auto a = center_set_stream(g, 3, 50, 9);
  const auto b = center_set_stream(g, 3, 200, 9);
  ASSERT_EQ(a.size(), 50u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(oracle::ids_of(a[i]), oracle::ids_of(b[i]));
  for (const auto& c : b) EXPECT_EQ(c.size(), 3u);
  EXPECT_THROW(center_set_stream(g, 26, 1, 1), std::invalid_argument);
}

TEST(MaxErrorTrial, IdentityZeroAndPrefixMonotone) {
  const Graph g = grid_graph(8, 8, 3);
  const auto x = WeightedPointSet::unit({0, 9, 18, 27, 36, 45, 54, 63});
  ErrorTrialConfig cfg;
  cfg.k = 2;
  cfg.center_sets = 300;
  cfg.seed = 4;
  EXPECT_EQ(max_error_trial(g, x, x, cfg), 0.0);
  const WeightedPointSet d({9, 54}, {4.0, 4.0});
  const double big = max_error_trial(g, x, d, cfg);
  cfg.center_sets = 75;
  EXPECT_GE(big, max_error_trial(g, x, d, cfg));
}

TEST(MaxErrorTrial, PathStreamHittingMiddle) {
  const Graph g = path_graph(3);
  const auto x = WeightedPointSet::unit({0, 1, 2});
  const WeightedPointSet d({0, 2}, {1.5, 1.5});
  ErrorTrialConfig cfg;
  cfg.center_sets = 50;
  cfg.seed = 1;
  const auto stream = center_set_stream(g, 1, 50, 1);
  ASSERT_TRUE(std::any_of(stream.begin(), stream.end(), [](const CenterSet& c) { return c.contains(1); }));
  EXPECT_GE(max_error_trial(g, x, d, cfg), 0.5);
}

TEST(MaxErrors, MatchesOracleLoop) {
  const Graph g = oracle::small_random_graph(40, 30, 5);
  const auto dist = oracle::all_pairs(g);
  Rng rng(1);
  std::vector<VertexId> ids;
  for (auto v : random_subset(rng, 40, 20)) ids.push_back(static_cast<VertexId>(v));
  const auto x = WeightedPointSet::unit(ids);
  const std::vector<WeightedPointSet> cs{uniform_baseline(x, 5, 1), uniform_baseline(x, 10, 2)};
  const auto stream = center_set_stream(g, 2, 40, 3);
  const auto got = max_errors(g, x, cs, stream);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    double worst = 0.0;
    for (const auto& c : stream) {
      const auto cv = oracle::ids_of(c);
      worst = std::max(worst, std::abs(oracle::cost(dist, cs[i], cv) / oracle::cost(dist, x, cv) - 1.0));
    }
    EXPECT_NEAR(got[i], worst, 1e-12);
  }
}

TEST(UniformBaseline, Examples) {
  const auto x = WeightedPointSet::unit({2, 4, 6, 8});
  const auto all = uniform_baseline(x, 4, 3);
  EXPECT_EQ(oracle::ids_of(CenterSet({all.ids().begin(), all.ids().end()})), (std::vector<VertexId>{2, 4, 6, 8}));
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all.weight(i), 1.0);
  const auto one = uniform_baseline(x, 1, 3);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.weight(0), 4.0);
  EXPECT_THROW(uniform_baseline(x, 0, 1), std::invalid_argument);
}

TEST(UniformBaseline, WeightsSumToTotal) {
  Rng rng(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::vector<VertexId> ids;
    std::vector<double> w;
    for (auto v : random_subset(rng, 100, 1 + uniform_below(rng, 60))) {
      ids.push_back(static_cast<VertexId>(v));
      w.push_back(0.5 + uniform01(rng));
    }
    const WeightedPointSet x(ids, w);
    const std::size_t size = 1 + uniform_below(rng, 120);
    const auto d = uniform_baseline(x, size, seed);
    EXPECT_NEAR(d.total_weight(), x.total_weight(), 1e-9 * x.total_weight());
    EXPECT_LE(d.size(), std::min(size, x.size()));
  }
}

TEST(Methods, NamesRoundTrip) {
  for (Method m : {Method::kSensitivity, Method::kUniform, Method::kIdentity}) EXPECT_EQ(parse_method(method_name(m)), m);
  EXPECT_THROW(parse_method("kmeans++"), std::invalid_argument);
}

TEST(Benchmark, IdentityRowsAreZeroAndShapeMatches) {
  const Graph g = grid_graph(6, 6, 2);
  const auto x = WeightedPointSet::unit({0, 5, 7, 14, 21, 28, 30, 35});
  BenchmarkConfig cfg;
  cfg.methods = {Method::kIdentity, Method::kSensitivity, Method::kUniform};
  cfg.trials.center_sets = 40;
  cfg.trials.repetitions = 3;
  cfg.trials.k = 2;
  cfg.trials.seed = 5;
  const std::vector<std::size_t> sizes{3, 8};
  const auto r = run_benchmark(g, x, sizes, 2, cfg);
  ASSERT_EQ(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0].size, 3u);
  EXPECT_EQ(r.rows[3].size, 8u);
  for (std::size_t s : sizes) {
    EXPECT_EQ(r.row(Method::kIdentity, s).mean_max_error, 0.0);
    EXPECT_EQ(r.row(Method::kUniform, s).max_errors.size(), 3u);
    for (const auto& row : r.rows) {
      for (double e : row.max_errors) EXPECT_GE(e, 0.0);
    }
  }
  EXPECT_THROW((void)r.row(Method::kUniform, 99), std::out_of_range);
}

TEST(Benchmark, ReportsAreReproducibleAcrossThreadCounts) {
  const Graph g = grid_graph(10, 10, 4);
  Scenario sc;
  const auto x = gen_dataset(g, sc, 40, 3);
  BenchmarkConfig cfg;
  cfg.trials.center_sets = 60;
  cfg.trials.repetitions = 3;
  cfg.trials.k = 3;
  cfg.trials.seed = 11;
  const std::vector<std::size_t> sizes{5, 15};
  std::string out[2];
  const std::size_t threads[2] = {1, 4};
  for (int i = 0; i < 2; ++i) {
    set_max_threads(threads[i]);
    const auto r = run_benchmark(g, x, sizes, 3, cfg);
    std::ostringstream csv, json;
    write_report_csv(csv, r, false);
    write_report_json(json, r, false);
    out[i] = csv.str() + json.str();
  }
  set_max_threads(0);
  EXPECT_EQ(out[0], out[1]);
  const auto pos = out[0].find('{');
  const auto doc = nlohmann::json::parse(out[0].substr(pos));
  EXPECT_EQ(doc["rows"].size(), 4u);
  EXPECT_EQ(doc["rows"][0]["max_errors"].size(), 3u);
  EXPECT_EQ(out[0].substr(0, out[0].find('\n')), "method,size,mean_max_err,t_construct_ms,t_eval_ms");
}

TEST(GenDataset, Scenarios) {
  const Graph g = grid_graph(40, 50, 1);
  Scenario uniform;
  const auto all = gen_dataset(g, uniform, g.vertex_count(), 2);
  EXPECT_EQ(oracle::ids_of(CenterSet({all.ids().begin(), all.ids().end()})), iota_ids(g.vertex_count()));

  Scenario conc;
  conc.kind = Scenario::Kind::kConcentrated;
  conc.region = grid_block(50, 0, 10, 0, 20);
  ASSERT_EQ(conc.region.size(), 200u);
  conc.fraction = 0.9;
  const auto x = gen_dataset(g, conc, 1000, 3);
  EXPECT_EQ(x.total_weight(), 1000.0);
  double inside = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const bool in = std::binary_search(conc.region.begin(), conc.region.end(), x.id(i));
    if (in) inside += x.weight(i);
    if (!in) EXPECT_EQ(x.weight(i), 1.0);  // 100 outside points fit on distinct vertices
  }
  EXPECT_EQ(inside, 900.0);

  conc.region = grid_block(50, 0, 20, 0, 50);
  const auto distinct = gen_dataset(g, conc, 1000, 3);
  EXPECT_EQ(distinct.size(), 1000u);

  conc.fraction = 1.0;
  const auto only = gen_dataset(g, conc, 150, 4);
  for (VertexId v : only.ids()) EXPECT_TRUE(std::binary_search(conc.region.begin(), conc.region.end(), v));

  Scenario empty;
  empty.kind = Scenario::Kind::kConcentrated;
  EXPECT_THROW(gen_dataset(g, empty, 10, 1), std::invalid_argument);
}
