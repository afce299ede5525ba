#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace gcoreset::oracle {

Matrix all_pairs(const Graph& g) {
  const std::size_t n = g.vertex_count();
  Matrix d(n, std::vector<double>(n, kInfinity));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const Edge& e : g.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][m] + d[m][j]);
    }
  }
  return d;
}

double cost(const Matrix& d, const WeightedPointSet& x, const std::vector<VertexId>& centers) {
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double best = kInfinity;
    for (VertexId c : centers) best = std::min(best, d[x.id(i)][c]);
    total += x.weight(i) * best;
  }
  return total;
}

std::vector<std::vector<VertexId>> k_subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<VertexId>> out;
  std::vector<VertexId> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t v = start; v < n; ++v) {
      cur.push_back(static_cast<VertexId>(v));
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Optimum best_k_subset(const Matrix& d, const WeightedPointSet& x, std::size_t k) {
  Optimum best{{}, kInfinity};
  bool found = false;
  for (const auto& s : k_subsets(d.size(), k)) {
    const double c = cost(d, x, s);
    if (!found || c < best.cost) {
      best = {s, c};
      found = true;
    }
  }
  return best;
}

std::size_t ball_count(const Matrix& d, const std::vector<VertexId>& probe, const std::vector<double>& weight) {
  std::set<std::vector<VertexId>> seen{{}};
  for (std::size_t x = 0; x < d.size(); ++x) {
    for (std::size_t a = 0; a < probe.size(); ++a) {
      const double r = weight[a] * d[x][probe[a]];
      if (r == kInfinity) continue;
      std::vector<VertexId> ball;
      for (std::size_t b = 0; b < probe.size(); ++b) {
        if (weight[b] * d[x][probe[b]] <= r) ball.push_back(probe[b]);
      }
      std::sort(ball.begin(), ball.end());
      seen.insert(ball);
    }
  }
  return seen.size();
}

Graph small_random_graph(std::size_t n, std::size_t extra, std::uint64_t seed, int max_weight) {
  Rng rng(seed);
  std::vector<Edge> edges;
  auto weight = [&] { return static_cast<double>(1 + uniform_below(rng, static_cast<std::uint64_t>(max_weight))); };
  for (std::size_t v = 1; v < n; ++v) {
    edges.push_back({static_cast<VertexId>(uniform_below(rng, v)), static_cast<VertexId>(v), weight()});
  }
  for (std::size_t e = 0; e < extra && n > 1; ++e) {
    edges.push_back({static_cast<VertexId>(uniform_below(rng, n)), static_cast<VertexId>(uniform_below(rng, n)), weight()});
  }
  return Graph::from_edges(n, edges);
}

}  // namespace gcoreset::oracle
