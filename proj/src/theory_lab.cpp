#include "gcoreset/theory_lab.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "gcoreset/parallel.hpp"

namespace gcoreset {
namespace {

// ceil for quantities like k / eps that should be integral but may carry
// representation error (1 / 0.1 and the like).
std::size_t ceil_tolerant(double v) { return static_cast<std::size_t>(std::ceil(v * (1.0 - 1e-12))); }

void check_epsilon(double epsilon, double upper) {
  if (!(epsilon > 0.0 && epsilon < upper)) {
    throw std::invalid_argument("epsilon must lie in (0, " + std::to_string(upper) + ")");
  }
}

std::size_t group_count(std::size_t k, double epsilon) { return ceil_tolerant(static_cast<double>(k) / epsilon); }

std::size_t copy_count(std::size_t k, std::size_t groups, std::size_t t) {
  return ceil_tolerant(static_cast<double>(groups) / static_cast<double>(k) * std::ldexp(1.0, static_cast<int>(t)));
}

void check_lowerbound_params(std::size_t k, double epsilon, std::size_t t) {
  if (k < 1) throw std::invalid_argument("lower bound: k must be >= 1");
  if (t < 1) throw std::invalid_argument("lower bound: t must be >= 1");
  if (t > kMaxLowerBoundT) throw std::invalid_argument("lower bound: t exceeds " + std::to_string(kMaxLowerBoundT));
  check_epsilon(epsilon, 1.0);
}

}  // namespace

std::size_t lowerbound_vertex_count(std::size_t k, double epsilon, std::size_t t) {
  check_lowerbound_params(k, epsilon, t);
  const std::size_t m = group_count(k, epsilon);
  const std::size_t copies = copy_count(k, m, t);
  return 1 + m * (t * copies + (std::size_t{1} << t));
}

LowerBoundInstance gen_lowerbound_instance(std::size_t k, double epsilon, std::size_t t) {
  const std::size_t n = lowerbound_vertex_count(k, epsilon, t);
  if (n > kMaxGeneratedVertices) throw std::invalid_argument("lower bound instance too large: " + std::to_string(n));

  LowerBoundInstance inst;
  inst.k = k;
  inst.epsilon = epsilon;
  inst.t = t;
  inst.groups = group_count(k, epsilon);
  inst.copies = copy_count(k, inst.groups, t);
  const std::size_t subsets = std::size_t{1} << t;

  inst.labels.reserve(n);
  inst.labels.push_back({VertexRole::kRoot, 0, 0, kNoVertex});
  std::vector<Edge> edges;
  std::vector<VertexId> left_ids;
  for (std::uint32_t i = 1; i <= inst.groups; ++i) {
    const auto first_left = static_cast<VertexId>(inst.labels.size());
    for (std::uint32_t j = 1; j <= t; ++j) {
      left_ids.push_back(static_cast<VertexId>(inst.labels.size()));
      inst.labels.push_back({VertexRole::kLeft, i, j, kNoVertex});
    }
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
      const auto r = static_cast<VertexId>(inst.labels.size());
      inst.labels.push_back({VertexRole::kRight, i, mask, kNoVertex});
      for (std::uint32_t j = 1; j <= t; ++j) {
        if (mask & (1u << (j - 1))) edges.push_back({first_left + j - 1, r, 1.0});
      }
    }
  }
  for (VertexId v = 1; v < inst.labels.size(); ++v) edges.push_back({0, v, 1.0});
  for (VertexId anchor : left_ids) {
    const VertexLabel a = inst.labels[anchor];
    for (std::size_t c = 1; c < inst.copies; ++c) {
      const auto s = static_cast<VertexId>(inst.labels.size());
      inst.labels.push_back({VertexRole::kShadow, a.group, a.index, anchor});
      edges.push_back({anchor, s, 1.0});
    }
  }
  inst.graph = Graph::from_edges(inst.labels.size(), edges);
  return inst;
}

Graph gen_star_instance(std::size_t k, double epsilon) {
  if (k < 1) throw std::invalid_argument("star instance: k must be >= 1");
  check_epsilon(epsilon, 1.0 / 3.0);
  const std::size_t leaves = ceil_tolerant(100.0 * static_cast<double>(k) / epsilon);
  if (leaves + 1 > kMaxGeneratedVertices) throw std::invalid_argument("star instance too large");
  std::vector<Edge> edges;
  edges.reserve(leaves);
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, static_cast<VertexId>(i), 1.0});
  return Graph::from_edges(leaves + 1, edges);
}

std::string role_name(const VertexLabel& label) {
  switch (label.role) {
    case VertexRole::kRoot:
      return "u0";
    case VertexRole::kLeft:
      return "L(" + std::to_string(label.group) + "," + std::to_string(label.index) + ")";
    case VertexRole::kShadow:
      return "shadow(" + std::to_string(label.group) + "," + std::to_string(label.index) + ")";
    case VertexRole::kRight: {
      std::string set = "{";
      bool first = true;
      for (std::uint32_t j = 1; j <= 32; ++j) {
        if (label.index & (1u << (j - 1))) {
          if (!first) set += ' ';
          set += std::to_string(j);
          first = false;
        }
      }
      return "R(" + std::to_string(label.group) + "," + set + "})";
    }
  }
  return "?";
}

void write_labels(std::ostream& out, const LowerBoundInstance& inst) {
  out << "vertex_id,role\n";
  for (std::size_t v = 0; v < inst.labels.size(); ++v) out << v << ',' << role_name(inst.labels[v]) << '\n';
}

bool verify_lowerbound_distances(const LowerBoundInstance& inst) {
  const auto& labels = inst.labels;
  const std::size_t n = inst.graph.vertex_count();
  if (labels.size() != n) return false;

  auto core = [&](VertexId a, VertexId b) -> double {
    if (a == b) return 0.0;
    const VertexLabel& la = labels[a];
    const VertexLabel& lb = labels[b];
    if (la.role == VertexRole::kRoot || lb.role == VertexRole::kRoot) return 1.0;
    const VertexLabel* l = la.role == VertexRole::kLeft ? &la : (lb.role == VertexRole::kLeft ? &lb : nullptr);
    const VertexLabel* r = la.role == VertexRole::kRight ? &la : (lb.role == VertexRole::kRight ? &lb : nullptr);
    if (l != nullptr && r != nullptr && l->group == r->group && (r->index & (1u << (l->index - 1)))) return 1.0;
    return 2.0;
  };
  auto lift = [&](VertexId v, double& extra) {
    if (labels[v].role == VertexRole::kShadow) {
      extra += 1.0;
      return labels[v].anchor;
    }
    return v;
  };
  auto expected = [&](VertexId a, VertexId b) -> double {
    if (a == b) return 0.0;
    double extra = 0.0;
    const VertexId ca = lift(a, extra);
    const VertexId cb = lift(b, extra);
    // Two shadows of one anchor meet at the anchor.
    return extra + core(ca, cb);
  };

  std::vector<char> ok(n, 1);
  parallel_for(n, [&](std::size_t s) {
    const auto dist = single_source_distances(inst.graph, static_cast<VertexId>(s));
    for (std::size_t v = 0; v < n; ++v) {
      if (dist[v] != expected(static_cast<VertexId>(s), static_cast<VertexId>(v))) {
        ok[s] = 0;
        return;
      }
    }
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

std::vector<std::uint32_t> ball_intersections(const Graph& g, const WeightedBallQuery& q) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxBallVertices) throw std::invalid_argument("ball count: graph exceeds " + std::to_string(kMaxBallVertices) + " vertices");
  const std::size_t h = q.probe.size();
  if (h < 2 || h > kMaxProbeSize) throw std::invalid_argument("ball count: probe set size must lie in [2, 20]");
  if (q.weight.size() != h) throw std::invalid_argument("ball count: one weight per probe vertex required");
  for (std::size_t i = 0; i < h; ++i) {
    if (q.probe[i] >= n) throw std::invalid_argument("ball count: probe vertex not in graph");
    if (!(q.weight[i] > 0.0) || !std::isfinite(q.weight[i])) throw std::invalid_argument("ball count: weights must be positive");
  }
  {
    std::vector<VertexId> sorted = q.probe;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("ball count: probe vertices must be distinct");
    }
  }

  std::vector<std::vector<std::uint32_t>> per_center(n);
  parallel_for(n, [&](std::size_t x) {
    const auto dist = single_source_distances(g, static_cast<VertexId>(x));
    std::vector<std::pair<double, std::size_t>> keys;
    for (std::size_t i = 0; i < h; ++i) {
      const double key = q.weight[i] * dist[q.probe[i]];
      if (std::isfinite(key)) keys.emplace_back(key, i);
    }
    std::sort(keys.begin(), keys.end());
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      mask |= 1u << keys[i].second;
      // Only radii at a key value change the intersection; equal keys enter together.
      if (i + 1 == keys.size() || keys[i + 1].first != keys[i].first) per_center[x].push_back(mask);
    }
  });
  std::vector<std::uint32_t> all{0};
  for (const auto& v : per_center) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::size_t count_ball_intersections(const Graph& g, const WeightedBallQuery& q) {
  return ball_intersections(g, q).size();
}

}  // namespace gcoreset
