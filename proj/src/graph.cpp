#include "gcoreset/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string_view>
#include <tuple>

#include "gcoreset/kernels.hpp"

namespace gcoreset {

Graph Graph::from_edges(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count >= kNoVertex) throw std::invalid_argument("graph too large");
  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw std::invalid_argument("edge endpoint out of range: " + std::to_string(std::max(e.u, e.v)));
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weight must be finite and nonnegative");
    }
    if (e.u == e.v) continue;
    arcs.push_back(e);
    arcs.push_back({e.v, e.u, e.weight});
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v, a.weight) < std::tie(b.u, b.v, b.weight); });
  // Sorted by weight within (u, v), so unique keeps the lightest parallel arc.
  arcs.erase(std::unique(arcs.begin(), arcs.end(), [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
             arcs.end());

  Graph g;
  g.offsets_.assign(vertex_count + 1, 0);
  for (const Edge& e : arcs) ++g.offsets_[e.u + 1];
  for (std::size_t i = 0; i < vertex_count; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.arcs_.reserve(arcs.size());
  for (const Edge& e : arcs) g.arcs_.push_back({e.v, e.weight});
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    for (const Arc& a : neighbors(u)) {
      if (u < a.to) out.push_back({u, a.to, a.weight});
    }
  }
  return out;
}

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "edge-list" || name == "edgelist") return GraphFormat::kEdgeList;
  if (name == "dimacs-gr" || name == "dimacs" || name == "gr") return GraphFormat::kDimacs;
  throw std::invalid_argument("unknown graph format '" + name + "' (expected edge-list or dimacs-gr)");
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError(what + " at line " + std::to_string(line_no));
}

std::uint64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line_no, "invalid vertex id '" + std::string(tok) + "'");
  return v;
}

double parse_weight(std::string_view tok, std::size_t line_no) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line_no, "invalid weight '" + std::string(tok) + "'");
  if (w < 0.0) fail(line_no, "negative weight");
  if (!std::isfinite(w)) fail(line_no, "non-finite weight");
  return w;
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::uint64_t declared = 0;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0].front() == '#') {
      // Optional "# vertices: n" header.
      if (tokens.size() == 3 && tokens[0] == "#" && tokens[1] == "vertices:") declared = parse_id(tokens[2], line_no);
      continue;
    }
    if (tokens.size() != 3) fail(line_no, "expected 'u v w'");
    const std::uint64_t u = parse_id(tokens[0], line_no);
    const std::uint64_t v = parse_id(tokens[1], line_no);
    const double w = parse_weight(tokens[2], line_no);
    if (u >= kNoVertex - 1 || v >= kNoVertex - 1) fail(line_no, "vertex id out of range");
    if (declared != 0 && (u >= declared || v >= declared)) fail(line_no, "vertex id exceeds declared vertex count");
    max_id = std::max({max_id, u, v});
    any = true;
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  const std::uint64_t n = std::max<std::uint64_t>(declared, any ? max_id + 1 : 0);
  return Graph::from_edges(n, edges);
}

Graph parse_dimacs(std::istream& in) {
  std::vector<Edge> edges;
  std::uint64_t n = 0;
  bool have_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (have_header) fail(line_no, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "sp") fail(line_no, "expected 'p sp n m'");
      n = parse_id(tokens[2], line_no);
      if (n >= kNoVertex) fail(line_no, "vertex count too large");
      parse_id(tokens[3], line_no);
      have_header = true;
      continue;
    }
    if (tokens[0] == "a") {
      if (!have_header) fail(line_no, "arc before problem line");
      if (tokens.size() != 4) fail(line_no, "expected 'a u v w'");
      const std::uint64_t u = parse_id(tokens[1], line_no);
      const std::uint64_t v = parse_id(tokens[2], line_no);
      const double w = parse_weight(tokens[3], line_no);
      if (u == 0 || u > n) fail(line_no, "vertex id " + std::to_string(u) + " out of range");
      if (v == 0 || v > n) fail(line_no, "vertex id " + std::to_string(v) + " out of range");
      edges.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w});
      continue;
    }
    fail(line_no, "unrecognized line type '" + std::string(tokens[0]) + "'");
  }
  if (!have_header) throw ParseError("missing 'p sp' problem line");
  return Graph::from_edges(n, edges);
}

}  // namespace

Graph parse_graph(std::istream& in, GraphFormat format) {
  return format == GraphFormat::kDimacs ? parse_dimacs(in) : parse_edge_list(in);
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path.string() + "'");
  try {
    return parse_graph(in, format);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# vertices: " << g.vertex_count() << '\n';
  char buf[64];
  for (const Edge& e : g.edges()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), e.weight);
    out << e.u << ' ' << e.v << ' ' << std::string_view(buf, static_cast<std::size_t>(ptr - buf)) << '\n';
  }
}

WeightedPointSet::WeightedPointSet(std::vector<VertexId> ids, std::vector<double> weights) {
  if (ids.size() != weights.size()) throw std::invalid_argument("point set: ids and weights differ in length");
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  ids_.reserve(ids.size());
  weights_.reserve(ids.size());
  for (std::size_t i : order) {
    if (!ids_.empty() && ids_.back() == ids[i]) {
      throw std::invalid_argument("point set: duplicate vertex id " + std::to_string(ids[i]));
    }
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw std::invalid_argument("point set: weight of vertex " + std::to_string(ids[i]) + " must be positive");
    }
    ids_.push_back(ids[i]);
    weights_.push_back(weights[i]);
    total_ += weights[i];
  }
}

WeightedPointSet WeightedPointSet::unit(std::vector<VertexId> ids) {
  std::vector<double> w(ids.size(), 1.0);
  return {std::move(ids), std::move(w)};
}

void WeightedPointSet::check_within(const Graph& g) const {
  if (!ids_.empty() && ids_.back() >= g.vertex_count()) {
    throw std::invalid_argument("point set vertex " + std::to_string(ids_.back()) + " not in graph");
  }
}

CenterSet::CenterSet(std::vector<VertexId> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  if (std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
    throw std::invalid_argument("center set: duplicate center");
  }
}

bool CenterSet::contains(VertexId v) const noexcept { return std::binary_search(ids_.begin(), ids_.end(), v); }

void CenterSet::check_within(const Graph& g) const {
  if (!ids_.empty() && ids_.back() >= g.vertex_count()) {
    throw std::invalid_argument("center " + std::to_string(ids_.back()) + " not in graph");
  }
}

DistanceField multi_source_dijkstra(const Graph& g, std::span<const DijkstraSource> sources) {
  const std::size_t n = g.vertex_count();
  DistanceField f{std::vector<double>(n, kInfinity), std::vector<VertexId>(n, kNoVertex)};
  extend_distance_field(g, f, sources);
  return f;
}

void extend_distance_field(const Graph& g, DistanceField& f, std::span<const DijkstraSource> sources) {
  const std::size_t n = g.vertex_count();
  if (f.distance.size() != n || f.owner.size() != n) throw std::invalid_argument("distance field size mismatch");

  // Labels are (distance, owner) pairs compared lexicographically; extending
  // a path keeps its owner, so the settled label is the minimum distance with
  // the smallest owning source among ties.
  using Label = std::tuple<double, VertexId, VertexId>;  // distance, owner, vertex
  std::priority_queue<Label, std::vector<Label>, std::greater<>> heap;
  auto better = [&](double d, VertexId owner, VertexId v) {
    return d < f.distance[v] || (d == f.distance[v] && owner < f.owner[v]);
  };
  for (const DijkstraSource& s : sources) {
    if (s.vertex >= n) throw std::invalid_argument("dijkstra source out of range");
    if (!(s.offset >= 0.0)) throw std::invalid_argument("dijkstra source offset must be nonnegative");
    if (better(s.offset, s.vertex, s.vertex)) {
      f.distance[s.vertex] = s.offset;
      f.owner[s.vertex] = s.vertex;
      heap.emplace(s.offset, s.vertex, s.vertex);
    }
  }
  while (!heap.empty()) {
    const auto [d, owner, u] = heap.top();
    heap.pop();
    if (d != f.distance[u] || owner != f.owner[u]) continue;
    for (const Arc& a : g.neighbors(u)) {
      const double nd = d + a.weight;
      if (better(nd, owner, a.to)) {
        f.distance[a.to] = nd;
        f.owner[a.to] = owner;
        heap.emplace(nd, owner, a.to);
      }
    }
  }
}

std::vector<double> single_source_distances(const Graph& g, VertexId source) {
  const DijkstraSource s{source, 0.0};
  return multi_source_dijkstra(g, std::span(&s, 1)).distance;
}

std::vector<double> distances_to(const Graph& g, VertexId source, std::span<const VertexId> targets) {
  const std::size_t n = g.vertex_count();
  if (source >= n) throw std::invalid_argument("dijkstra source out of range");
  for (VertexId t : targets) {
    if (t >= n) throw std::invalid_argument("dijkstra target out of range");
  }
  // Scratch state is reset only where it was touched, so a search that
  // stops early costs time proportional to the explored region.
  thread_local std::vector<double> dist;
  thread_local std::vector<std::uint8_t> mark;  // bit 0: target, bit 1: settled
  thread_local std::vector<VertexId> touched;
  if (dist.size() < n) {
    dist.assign(n, kInfinity);
    mark.assign(n, 0);
  }
  touched.clear();
  std::size_t remaining = 0;
  for (VertexId t : targets) {
    if (!(mark[t] & 1u)) {
      mark[t] |= 1u;
      touched.push_back(t);
      ++remaining;
    }
  }
  using Item = std::pair<double, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  touched.push_back(source);
  heap.emplace(0.0, source);
  while (!heap.empty() && remaining > 0) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (mark[u] & 2u) continue;
    mark[u] |= 2u;
    if (mark[u] & 1u) --remaining;
    for (const Arc& a : g.neighbors(u)) {
      const double nd = d + a.weight;
      if (nd < dist[a.to]) {
        if (dist[a.to] == kInfinity) touched.push_back(a.to);
        dist[a.to] = nd;
        heap.emplace(nd, a.to);
      }
    }
  }
  std::vector<double> out;
  out.reserve(targets.size());
  for (VertexId t : targets) out.push_back(dist[t]);
  for (VertexId v : touched) {
    dist[v] = kInfinity;
    mark[v] = 0;
  }
  return out;
}

DistanceField center_distances(const Graph& g, const CenterSet& c) {
  if (c.empty()) throw std::invalid_argument("center set must be nonempty");
  c.check_within(g);
  std::vector<DijkstraSource> sources;
  sources.reserve(c.size());
  for (VertexId v : c.ids()) sources.push_back({v, 0.0});
  return multi_source_dijkstra(g, sources);
}

std::vector<double> gather(std::span<const double> by_vertex, std::span<const VertexId> ids) {
  std::vector<double> out;
  out.reserve(ids.size());
  for (VertexId v : ids) out.push_back(by_vertex[v]);
  return out;
}

double cost_from_distances(const WeightedPointSet& x, std::span<const double> by_vertex) {
  return kernels::gather_weighted_sum(x.weights(), x.ids(), by_vertex);
}

double cost(const Graph& g, const WeightedPointSet& x, const CenterSet& c) {
  x.check_within(g);
  const DistanceField f = center_distances(g, c);
  return cost_from_distances(x, f.distance);
}

ClusteringStats assign(const Graph& g, const WeightedPointSet& x, const CenterSet& c) {
  x.check_within(g);
  const DistanceField f = center_distances(g, c);
  ClusteringStats s;
  s.center.reserve(x.size());
  s.center_index.reserve(x.size());
  s.distance = gather(f.distance, x.ids());
  s.cluster_weight.assign(c.size(), 0.0);
  const auto centers = c.ids();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const VertexId owner = f.owner[x.id(i)];
    s.center.push_back(owner);
    if (owner == kNoVertex) {
      s.center_index.push_back(c.size());
      continue;
    }
    const auto idx = static_cast<std::size_t>(std::lower_bound(centers.begin(), centers.end(), owner) - centers.begin());
    s.center_index.push_back(idx);
    s.cluster_weight[idx] += x.weight(i);
  }
  s.cost = cost_from_distances(x, f.distance);
  return s;
}

std::vector<VertexId> all_vertices(const Graph& g) {
  std::vector<VertexId> v(g.vertex_count());
  for (VertexId i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace gcoreset
