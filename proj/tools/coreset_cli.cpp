// coreset: build, evaluate and benchmark k-Median coresets on graphs.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or input error.
// Diagnostics go to stderr at the level named by COESET_LOG
// (error | info | debug); data goes to stdout or --out.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "gcoreset/clustering.hpp"
#include "gcoreset/coreset.hpp"
#include "gcoreset/evaluation.hpp"
#include "gcoreset/generators.hpp"
#include "gcoreset/graph.hpp"
#include "gcoreset/kernels.hpp"
#include "gcoreset/parallel.hpp"
#include "gcoreset/random.hpp"
#include "gcoreset/theory_lab.hpp"

namespace {

using namespace gcoreset;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void setup_logging() {
  auto logger = spdlog::stderr_logger_st("coreset");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("COESET_LOG");
  const std::string level = env != nullptr ? env : "info";
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::set_level(spdlog::level::info);
  }
}

struct GraphOptions {
  std::string path;
  std::string format = "edge-list";

  void add(CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("--graph", path, "Graph file");
    if (required) opt->required();
    cmd->add_option("--format", format, "Graph format: edge-list | dimacs-gr")->capture_default_str();
  }

  Graph load() const {
    GraphFormat f;
    try {
      f = parse_graph_format(format);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    spdlog::debug("loading graph {}", path);
    Graph g = load_graph(path, f);
    spdlog::info("graph: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    return g;
  }
};

// Data set: a file, a generated scenario, or all of V.
struct DataOptions {
  std::string path;
  std::string scenario;
  std::size_t count = 0;
  double fraction = 0.9;
  std::string region;
  std::uint64_t scenario_seed = 0;

  void add(CLI::App* cmd) {
    cmd->add_option("--data", path, "Data set CSV (vertex_id[,weight]); default: every vertex, unit weight");
    cmd->add_option("--scenario", scenario, "Generate the data set instead: uniform | concentrated")
        ->check(CLI::IsMember({"uniform", "concentrated"}));
    cmd->add_option("--count", count, "Points in a generated data set");
    cmd->add_option("--fraction", fraction, "Share of points drawn from the region (concentrated)")
        ->capture_default_str();
    cmd->add_option("--region", region, "Region as a half-open vertex id range lo:hi (concentrated)");
    cmd->add_option("--data-seed", scenario_seed, "Seed for a generated data set")->capture_default_str();
  }

  WeightedPointSet load(const Graph& g) const {
    if (!path.empty() && !scenario.empty()) throw UsageError("--data and --scenario are mutually exclusive");
    if (!path.empty()) {
      WeightedPointSet x = load_point_csv(path);
      try {
        x.check_within(g);
      } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
      }
      return x;
    }
    if (!scenario.empty()) return gen_dataset(g, make_scenario(g), count, scenario_seed);
    return WeightedPointSet::unit(all_vertices(g));
  }

  Scenario make_scenario(const Graph& g) const {
    Scenario s;
    if (count == 0) throw UsageError("--count is required with --scenario");
    if (scenario == "uniform") return s;
    s.kind = Scenario::Kind::kConcentrated;
    s.fraction = fraction;
    const auto colon = region.find(':');
    if (colon == std::string::npos) throw UsageError("--region must look like lo:hi");
    std::size_t lo = 0, hi = 0;
    try {
      lo = std::stoul(region.substr(0, colon));
      hi = std::stoul(region.substr(colon + 1));
    } catch (const std::exception&) {
      throw UsageError("--region must look like lo:hi");
    }
    if (hi > g.vertex_count() || lo >= hi) throw UsageError("--region is empty or outside the graph");
    for (std::size_t v = lo; v < hi; ++v) s.region.push_back(static_cast<VertexId>(v));
    return s;
  }
};

struct BuildOptions {
  std::size_t outer = 3;
  std::size_t reps = 5;
  std::size_t rounds = 0;
  std::size_t per_round = 0;
  double rho = 5.0;
  double tau = 1e-3;
  std::size_t max_iter = 10000;

  void add(CLI::App* cmd) {
    cmd->add_option("--outer", outer, "Bicriteria projection iterations")->capture_default_str();
    cmd->add_option("--reps", reps, "Sampler repetitions per iteration")->capture_default_str();
    cmd->add_option("--rounds", rounds, "Oversampling rounds (0: ceil(log2 |X|))")->capture_default_str();
    cmd->add_option("--per-round", per_round, "Points per round (0: k)")->capture_default_str();
    cmd->add_option("--rho", rho, "Approximation factor assumed for the local-search solution")->capture_default_str();
    add_local_search(cmd);
  }

  void add_local_search(CLI::App* cmd) {
    cmd->add_option("--tau", tau, "Local search improvement threshold")->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "Local search iteration cap")->capture_default_str();
  }

  CoresetBuildConfig config() const {
    CoresetBuildConfig c;
    c.bicriteria = {outer, reps, rounds, per_round};
    c.local_search = local_search();
    c.rho = rho;
    c.bicriteria.validate();
    return c;
  }

  LocalSearchConfig local_search() const {
    LocalSearchConfig c{tau, max_iter};
    c.validate();
    return c;
  }
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) throw std::runtime_error("write failed");
    }
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct Common {
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

void add_seed(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Master seed (required)")->required();
}

// build -----------------------------------------------------------------

struct BuildCmd {
  GraphOptions graph;
  DataOptions data;
  BuildOptions build;
  std::size_t k = 0;
  std::size_t size = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::size_t sdim = 1;
  double c0 = 1.0;
  std::string out;

  void add(CLI::App* cmd, Common& common) {
    graph.add(cmd);
    data.add(cmd);
    build.add(cmd);
    add_seed(cmd, common);
    cmd->add_option("--k", k, "Number of centers")->required();
    auto* size_opt = cmd->add_option("--size", size, "Coreset sample count N");
    auto* eps_opt = cmd->add_option("--epsilon", epsilon, "Target error; sizes N from the sensitivity bound");
    auto* delta_opt = cmd->add_option("--delta", delta, "Failure probability for the size bound");
    cmd->add_option("--sdim", sdim, "Shattering-dimension bound for the size bound")->capture_default_str();
    cmd->add_option("--c0", c0, "Constant factor for the size bound")->capture_default_str();
    size_opt->excludes(eps_opt)->excludes(delta_opt);
    eps_opt->needs(delta_opt);
    delta_opt->needs(eps_opt);
    cmd->add_option("--out", out, "Coreset CSV path; metadata goes to <out>.meta");
  }

  int run(const Common& common) const {
    if (size == 0 && epsilon == 0.0) throw UsageError("give either --size or --epsilon/--delta");
    if (k == 0) throw UsageError("--k must be >= 1");
    const Graph g = graph.load();
    const WeightedPointSet x = data.load(g);
    const CoresetBuildConfig cfg = build.config();

    const SamplingPlan plan = plan_sampling(g, x, k, cfg, derive_seed(common.seed, 1));
    std::size_t n = size;
    if (n == 0) {
      n = coreset_size_bound({epsilon, delta, k, sdim, plan.sensitivity.total, c0});
      spdlog::info("size bound: N = {}", n);
    }
    spdlog::info("bicriteria size {}, sigma_X {}", plan.bicriteria_size, plan.sensitivity.total);
    Coreset c;
    c.points = draw_coreset(x, plan.sensitivity, n, derive_seed(common.seed, 2));
    c.meta = {common.seed, n, k, cfg.rho, plan.sensitivity.total};

    Output o(out);
    write_point_csv(o.stream(), c.points);
    o.close();
    if (!out.empty()) {
      Output meta(out + ".meta");
      write_metadata(meta.stream(), c.meta);
      meta.close();
    }
    spdlog::info("coreset: {} distinct points from {} samples", c.points.size(), n);
    return kExitOk;
  }
};

// eval ------------------------------------------------------------------

struct EvalCmd {
  GraphOptions graph;
  DataOptions data;
  std::string coreset;
  std::size_t k = 0;
  std::size_t center_sets = 2000;
  std::vector<VertexId> centers;
  std::string out;

  void add(CLI::App* cmd, Common& common) {
    graph.add(cmd);
    data.add(cmd);
    add_seed(cmd, common);
    cmd->add_option("--coreset", coreset, "Coreset CSV")->required();
    cmd->add_option("--k", k, "Centers per random center set");
    cmd->add_option("--center-sets", center_sets, "Random center sets to draw")->capture_default_str();
    cmd->add_option("--centers", centers, "Evaluate one explicit center set instead")->delimiter(',');
    cmd->add_option("--out", out, "Output path");
  }

  int run(const Common& common) const {
    const Graph g = graph.load();
    const WeightedPointSet x = data.load(g);
    const WeightedPointSet d = load_point_csv(coreset);
    try {
      d.check_within(g);
    } catch (const std::invalid_argument& e) {
      throw ParseError(coreset + ": " + e.what());
    }
    Output o(out);
    if (!centers.empty()) {
      const CenterSet c(centers);
      c.check_within(g);
      const DistanceField f = center_distances(g, c);
      const double cx = cost_from_distances(x, f.distance);
      const double cd = cost_from_distances(d, f.distance);
      o.stream() << "cost_X,cost_D,err\n"
                 << fmt17(cx) << ',' << fmt17(cd) << ',' << fmt17(empirical_error(g, x, d, c)) << '\n';
    } else {
      if (k == 0) throw UsageError("--k is required unless --centers is given");
      ErrorTrialConfig cfg;
      cfg.center_sets = center_sets;
      cfg.k = k;
      cfg.seed = common.seed;
      o.stream() << "center_sets,k,max_err\n"
                 << center_sets << ',' << k << ',' << fmt17(max_error_trial(g, x, d, cfg)) << '\n';
    }
    o.close();
    return kExitOk;
  }
};

// benchmark -------------------------------------------------------------

struct BenchmarkCmd {
  GraphOptions graph;
  DataOptions data;
  BuildOptions build;
  std::size_t k = 0;
  std::size_t eval_k = 0;
  std::vector<std::size_t> sizes;
  std::size_t reps = 10;
  std::size_t center_sets = 2000;
  std::vector<std::string> methods{"coreset", "uniform"};
  bool timings = false;
  std::string out;

  void add(CLI::App* cmd, Common& common) {
    graph.add(cmd);
    data.add(cmd);
    build.add(cmd);
    add_seed(cmd, common);
    cmd->add_option("--k", k, "Centers the coresets are built for")->required();
    cmd->add_option("--eval-k", eval_k, "Centers per random center set (default: --k)");
    cmd->add_option("--sizes", sizes, "Comma-separated coreset sizes")->delimiter(',')->required();
    cmd->add_option("--repetitions", reps, "Constructions per cell")->capture_default_str();
    cmd->add_option("--center-sets", center_sets, "Random center sets")->capture_default_str();
    cmd->add_option("--methods", methods, "coreset, uniform, identity")->delimiter(',')->capture_default_str();
    cmd->add_flag("--timings", timings, "Fill the timing columns (output is then not reproducible)");
    cmd->add_option("--out", out, "Write <out>.csv and <out>.json instead of CSV to stdout");
  }

  int run(const Common& common) const {
    const Graph g = graph.load();
    const WeightedPointSet x = data.load(g);
    BenchmarkConfig cfg;
    cfg.build = build.config();
    cfg.trials.center_sets = center_sets;
    cfg.trials.k = eval_k != 0 ? eval_k : k;
    cfg.trials.repetitions = reps;
    cfg.trials.seed = common.seed;
    cfg.methods.clear();
    for (const auto& m : methods) {
      try {
        cfg.methods.push_back(parse_method(m));
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    const BenchmarkReport report = run_benchmark(g, x, sizes, k, cfg);
    if (out.empty()) {
      write_report_csv(std::cout, report, timings);
      return kExitOk;
    }
    Output csv(out + ".csv");
    write_report_csv(csv.stream(), report, timings);
    csv.close();
    Output json(out + ".json");
    write_report_json(json.stream(), report, timings);
    json.close();
    return kExitOk;
  }
};

// solve -----------------------------------------------------------------

struct SolveCmd {
  GraphOptions graph;
  DataOptions data;
  BuildOptions build;
  std::string coreset;
  std::string mode = "XxV";
  std::size_t k = 0;
  std::string out;

  void add(CLI::App* cmd, Common& common) {
    graph.add(cmd);
    data.add(cmd);
    build.add_local_search(cmd);
    add_seed(cmd, common);
    cmd->add_option("--coreset", coreset, "Coreset CSV (DxV, DxD)");
    cmd->add_option("--mode", mode, "XxV | DxV | DxD")->check(CLI::IsMember({"XxV", "DxV", "DxD"}))->capture_default_str();
    cmd->add_option("--k", k, "Number of centers")->required();
    cmd->add_option("--out", out, "Output path");
  }

  int run(const Common& common) const {
    if (mode != "XxV" && coreset.empty()) throw UsageError("--coreset is required for mode " + mode);
    const Graph g = graph.load();
    const WeightedPointSet x = data.load(g);
    WeightedPointSet search = x;
    if (mode != "XxV") {
      search = load_point_csv(coreset);
      try {
        search.check_within(g);
      } catch (const std::invalid_argument& e) {
        throw ParseError(coreset + ": " + e.what());
      }
    }
    const std::vector<VertexId> pool =
        mode == "DxD" ? std::vector<VertexId>(search.ids().begin(), search.ids().end()) : all_vertices(g);
    const LocalSearchResult r = local_search(g, search, k, pool, build.local_search(), common.seed);
    spdlog::info("local search: {} swaps, converged={}", r.iterations, r.converged);

    Output o(out);
    auto& s = o.stream();
    s << "mode=" << mode << '\n' << "k=" << k << '\n' << "centers=";
    for (std::size_t i = 0; i < r.centers.size(); ++i) s << (i ? " " : "") << r.centers.ids()[i];
    s << '\n' << "cost=" << fmt17(r.cost) << '\n' << "cost_X=" << fmt17(cost(g, x, r.centers)) << '\n';
    o.close();
    return kExitOk;
  }
};

// gen -------------------------------------------------------------------

struct GenCmd {
  CLI::App* lowerbound = nullptr;
  CLI::App* star = nullptr;
  CLI::App* grid = nullptr;
  CLI::App* random = nullptr;
  CLI::App* dataset = nullptr;

  std::size_t k = 1;
  double epsilon = 0.0;
  std::size_t t = 1;
  std::size_t rows = 0, cols = 0;
  std::size_t vertices = 0, edges = 0;
  double min_weight = 1.0, max_weight = 2.0;
  std::string labels;
  std::string out;
  GraphOptions graph;
  DataOptions data;

  void add(CLI::App* cmd, Common& common) {
    cmd->require_subcommand(1);
    lowerbound = cmd->add_subcommand("lowerbound", "Lower-bound instance G(k, eps) of treewidth <= t + 1");
    lowerbound->add_option("--k", k, "k")->required();
    lowerbound->add_option("--epsilon", epsilon, "epsilon in (0, 1)")->required();
    lowerbound->add_option("--t", t, "Subset width t")->required();
    lowerbound->add_option("--labels", labels, "Role sidecar CSV (default: <out>.labels.csv)");
    lowerbound->add_option("--out", out, "Edge-list path");

    star = cmd->add_subcommand("star", "Star with ceil(100 k / eps) leaves");
    star->add_option("--k", k, "k")->required();
    star->add_option("--epsilon", epsilon, "epsilon in (0, 1/3)")->required();
    star->add_option("--out", out, "Edge-list path");

    grid = cmd->add_subcommand("grid", "Road-like grid with random weights");
    grid->add_option("--rows", rows)->required();
    grid->add_option("--cols", cols)->required();
    grid->add_option("--min-weight", min_weight)->capture_default_str();
    grid->add_option("--max-weight", max_weight)->capture_default_str();
    add_seed(grid, common);
    grid->add_option("--out", out, "Edge-list path");

    random = cmd->add_subcommand("random", "Random connected graph");
    random->add_option("--vertices", vertices)->required();
    random->add_option("--edges", edges)->required();
    random->add_option("--min-weight", min_weight)->capture_default_str();
    random->add_option("--max-weight", max_weight)->capture_default_str();
    add_seed(random, common);
    random->add_option("--out", out, "Edge-list path");

    dataset = cmd->add_subcommand("dataset", "Synthetic data set over a graph");
    graph.add(dataset);
    dataset->add_option("--scenario", data.scenario, "uniform | concentrated")
        ->check(CLI::IsMember({"uniform", "concentrated"}))
        ->required();
    dataset->add_option("--count", data.count, "Points")->required();
    dataset->add_option("--fraction", data.fraction)->capture_default_str();
    dataset->add_option("--region", data.region, "Half-open vertex id range lo:hi");
    add_seed(dataset, common);
    dataset->add_option("--out", out, "CSV path");
  }

  int run(const Common& common) const {
    if (lowerbound->parsed()) {
      LowerBoundInstance inst;
      try {
        inst = gen_lowerbound_instance(k, epsilon, t);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_graph(inst.graph);
      const std::string label_path = !labels.empty() ? labels : (out.empty() ? "" : out + ".labels.csv");
      if (!label_path.empty()) {
        Output l(label_path);
        write_labels(l.stream(), inst);
        l.close();
      }
      spdlog::info("lower-bound instance: {} vertices, {} edges", inst.graph.vertex_count(), inst.graph.edge_count());
    } else if (star->parsed()) {
      Graph g;
      try {
        g = gen_star_instance(k, epsilon);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      write_graph(g);
    } else if (grid->parsed()) {
      write_graph(grid_graph(rows, cols, common.seed, min_weight, max_weight));
    } else if (random->parsed()) {
      write_graph(random_connected_graph(vertices, edges, common.seed, min_weight, max_weight));
    } else if (dataset->parsed()) {
      const Graph g = graph.load();
      const WeightedPointSet x = gen_dataset(g, data.make_scenario(g), data.count, common.seed);
      Output o(out);
      write_point_csv(o.stream(), x);
      o.close();
    }
    return kExitOk;
  }

  void write_graph(const Graph& g) const {
    Output o(out);
    write_edge_list(o.stream(), g);
    o.close();
  }
};

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Sensitivity-sampling coresets for k-Median on graphs"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "Worker threads (0: all cores)")->capture_default_str();

  BuildCmd build;
  EvalCmd eval;
  BenchmarkCmd bench;
  SolveCmd solve;
  GenCmd gen;
  auto* build_cmd = app.add_subcommand("build", "Build a sensitivity-sampling coreset");
  auto* eval_cmd = app.add_subcommand("eval", "Maximum empirical error of a coreset");
  auto* bench_cmd = app.add_subcommand("benchmark", "Accuracy vs size against a uniform baseline");
  auto* solve_cmd = app.add_subcommand("solve", "Local search on X x V, D x V or D x D");
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances and data sets");
  build.add(build_cmd, common);
  eval.add(eval_cmd, common);
  bench.add(bench_cmd, common);
  solve.add(solve_cmd, common);
  gen.add(gen_cmd, common);
  // Subcommands accept --threads too.
  for (auto* cmd : {build_cmd, eval_cmd, bench_cmd, solve_cmd, gen.lowerbound, gen.star, gen.grid, gen.random,
                    gen.dataset}) {
    cmd->add_option("--threads", common.threads, "Worker threads (0: all cores)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  set_max_threads(common.threads);
  spdlog::debug("kernels: {}", kernels::isa_name(kernels::active_isa()));
  try {
    if (build_cmd->parsed()) return build.run(common);
    if (eval_cmd->parsed()) return eval.run(common);
    if (bench_cmd->parsed()) return bench.run(common);
    if (solve_cmd->parsed()) return solve.run(common);
    if (gen_cmd->parsed()) return gen.run(common);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const EnumerationLimitError& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitRuntime;
  }
  return kExitUsage;
}
