#include "fibers/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fibers {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : adj_(n) {
  for (auto& e : edges) {
    if (e.u == e.v) throw Error(ErrorCode::InvalidArgument, "self-loop at vertex " + std::to_string(e.u));
    if (e.u >= n || e.v >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t v = 0; v < n; ++v) adj_[v].reserve(deg[v]);
  for (const auto& e : edges) {
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
  edges_ = std::move(edges);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  const auto& a = adj_.at(u);
  return std::binary_search(a.begin(), a.end(), v);
}

std::size_t Graph::edge_index(Vertex u, Vertex v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v});
  if (it == edges_.end() || it->u != u || it->v != v) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

Graph Graph::without_edges(std::span<const Edge> removed) const {
  std::vector<Edge> drop(removed.begin(), removed.end());
  for (auto& e : drop) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(drop.begin(), drop.end());
  std::vector<Edge> keep;
  for (const auto& e : edges_) {
    if (!std::binary_search(drop.begin(), drop.end(), e)) keep.push_back(e);
  }
  return Graph(num_vertices(), std::move(keep));
}

Graph Graph::without_vertices(std::span<const Vertex> removed) const {
  std::vector<char> gone(num_vertices(), 0);
  for (Vertex v : removed) gone.at(v) = 1;
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < num_vertices(); ++v) {
    if (!gone[v]) keep.push_back(v);
  }
  return induced(keep);
}

Graph Graph::induced(std::span<const Vertex> keep) const {
  std::vector<std::size_t> pos(num_vertices(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < keep.size(); ++i) pos.at(keep[i]) = i;
  std::vector<Edge> out;
  for (const auto& e : edges_) {
    if (pos[e.u] != std::numeric_limits<std::size_t>::max() &&
        pos[e.v] != std::numeric_limits<std::size_t>::max()) {
      out.push_back({pos[e.u], pos[e.v]});
    }
  }
  return Graph(keep.size(), std::move(out));
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.push_back({u, v});
  return Graph(n, std::move(e));
}

Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u) e.push_back({u, (u + 1) % n});
  return Graph(n, std::move(e));
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
  return Graph(n, std::move(e));
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return Graph(leaves + 1, std::move(e));
}

std::vector<std::size_t> component_labels(const Graph& g) {
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> label(g.num_vertices(), none);
  std::size_t next = 0;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.num_vertices(); ++s) {
    if (label[s] != none) continue;
    label[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (label[w] == none) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t count_components(const Graph& g) {
  const auto labels = component_labels(g);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

std::size_t min_degree(const Graph& g) {
  if (g.num_vertices() == 0) throw Error(ErrorCode::EmptyGraph, "min_degree of an empty graph");
  std::size_t best = g.degree(0);
  for (Vertex v = 1; v < g.num_vertices(); ++v) best = std::min(best, g.degree(v));
  return best;
}

// ---------------------------------------------------------------------------
// Dinic max-flow on small integral networks.

namespace {

class FlowNetwork {
 public:
  using Cap = std::int64_t;
  static constexpr Cap kInfinite = std::numeric_limits<Cap>::max() / 4;

  explicit FlowNetwork(std::size_t n) : head_(n), level_(n), iter_(n) {}

  // Arc u->v with capacity `cap`, reverse arc with capacity `rev_cap`.
  void add_arc(std::size_t u, std::size_t v, Cap cap, Cap rev_cap = 0) {
    head_[u].push_back(arcs_.size());
    arcs_.push_back({v, cap});
    head_[v].push_back(arcs_.size());
    arcs_.push_back({u, rev_cap});
  }

  Cap max_flow(std::size_t s, std::size_t t, Cap limit = kInfinite) {
    Cap flow = 0;
    while (flow < limit && bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      while (flow < limit) {
        const Cap f = dfs(s, t, limit - flow);
        if (f == 0) break;
        flow += f;
      }
    }
    return flow;
  }

  // Vertices reachable from s in the residual network.
  std::vector<char> reachable(std::size_t s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t a : head_[v]) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    Cap cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<std::size_t> queue{s};
    level_[s] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::size_t v = queue[i];
      for (std::size_t a : head_[v]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          queue.push_back(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  Cap dfs(std::size_t v, std::size_t t, Cap pushed) {
    if (v == t) return pushed;
    for (std::size_t& i = iter_[v]; i < head_[v].size(); ++i) {
      const std::size_t a = head_[v][i];
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[v] + 1) continue;
      const Cap f = dfs(arc.to, t, std::min(pushed, arc.cap));
      if (f > 0) {
        arc.cap -= f;
        arcs_[a ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> head_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

void check_pair(const Graph& g, Vertex s, Vertex t) {
  if (s >= g.num_vertices() || t >= g.num_vertices()) {
    throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  }
  if (s == t) throw Error(ErrorCode::InvalidArgument, "source and target coincide");
}

FlowNetwork edge_network(const Graph& g, std::size_t extra = 0) {
  FlowNetwork net(g.num_vertices() + extra);
  for (const auto& e : g.edges()) net.add_arc(e.u, e.v, 1, 1);
  return net;
}

std::vector<Edge> crossing_edges(const Graph& g, const std::vector<char>& side) {
  std::vector<Edge> cut;
  for (const auto& e : g.edges()) {
    if (side[e.u] != side[e.v]) cut.push_back(e);
  }
  return cut;
}

// Split network: v_in = 2v, v_out = 2v+1.
VertexCut split_flow(const Graph& g, Vertex s, Vertex t, FlowNetwork::Cap limit) {
  const std::size_t n = g.num_vertices();
  FlowNetwork net(2 * n);
  for (Vertex v = 0; v < n; ++v) {
    const auto cap = (v == s || v == t) ? FlowNetwork::kInfinite : 1;
    net.add_arc(2 * v, 2 * v + 1, cap);
  }
  for (const auto& e : g.edges()) {
    const bool direct = (e.u == s && e.v == t) || (e.u == t && e.v == s);
    const auto cap = direct ? 1 : FlowNetwork::kInfinite;
    net.add_arc(2 * e.u + 1, 2 * e.v, cap);
    net.add_arc(2 * e.v + 1, 2 * e.u, cap);
  }
  VertexCut cut;
  cut.value = static_cast<std::size_t>(net.max_flow(2 * s + 1, 2 * t, limit));
  const auto seen = net.reachable(2 * s + 1);
  for (Vertex v = 0; v < n; ++v) {
    if (v != s && v != t && seen[2 * v] && !seen[2 * v + 1]) cut.vertices.push_back(v);
  }
  return cut;
}

Vertex min_degree_vertex(const Graph& g) {
  Vertex best = 0;
  for (Vertex v = 1; v < g.num_vertices(); ++v) {
    if (g.degree(v) < g.degree(best)) best = v;
  }
  return best;
}

}  // namespace

EdgeCut min_edge_cut(const Graph& g, Vertex s, Vertex t) {
  check_pair(g, s, t);
  FlowNetwork net = edge_network(g);
  EdgeCut cut;
  cut.value = static_cast<std::size_t>(net.max_flow(s, t));
  cut.edges = crossing_edges(g, net.reachable(s));
  return cut;
}

std::size_t edge_disjoint_paths(const Graph& g, Vertex s, Vertex t) {
  check_pair(g, s, t);
  FlowNetwork net = edge_network(g);
  return static_cast<std::size_t>(net.max_flow(s, t));
}

VertexCut min_vertex_cut(const Graph& g, Vertex s, Vertex t) {
  check_pair(g, s, t);
  return split_flow(g, s, t, FlowNetwork::kInfinite);
}

std::size_t vertex_disjoint_paths(const Graph& g, Vertex s, Vertex t) {
  return min_vertex_cut(g, s, t).value;
}

std::size_t set_to_vertex_paths(const Graph& g, std::span<const Vertex> sources, Vertex v) {
  const std::size_t n = g.num_vertices();
  if (v >= n) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
  FlowNetwork net = edge_network(g, 1);
  for (Vertex k : sources) {
    if (k >= n || k == v) throw Error(ErrorCode::InvalidArgument, "source set must avoid the target");
    net.add_arc(n, k, 1);
  }
  return static_cast<std::size_t>(net.max_flow(n, v));
}

EdgeCut edge_connectivity(const Graph& g) {
  if (g.num_vertices() < 2) throw Error(ErrorCode::InvalidArgument, "edge connectivity needs >= 2 vertices");
  if (!is_connected(g)) return {};
  const Vertex s = min_degree_vertex(g);
  EdgeCut best;
  best.value = g.degree(s);
  for (Vertex u : g.neighbors(s)) best.edges.push_back({std::min(s, u), std::max(s, u)});
  std::sort(best.edges.begin(), best.edges.end());
  for (Vertex t = 0; t < g.num_vertices(); ++t) {
    if (t == s) continue;
    FlowNetwork net = edge_network(g);
    const auto f = static_cast<std::size_t>(net.max_flow(s, t, static_cast<FlowNetwork::Cap>(best.value)));
    if (f < best.value) {
      best.value = f;
      best.edges = crossing_edges(g, net.reachable(s));
    }
  }
  return best;
}

VertexCut vertex_connectivity(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "vertex connectivity needs >= 2 vertices");
  if (!is_connected(g)) return {};
  if (g.num_edges() == n * (n - 1) / 2) {
    VertexCut all;
    all.value = n - 1;
    for (Vertex v = 0; v + 1 < n; ++v) all.vertices.push_back(v);
    return all;
  }
  const Vertex s = min_degree_vertex(g);
  VertexCut best;
  best.value = g.degree(s);
  best.vertices.assign(g.neighbors(s).begin(), g.neighbors(s).end());

  auto consider = [&](Vertex a, Vertex b) {
    VertexCut c = split_flow(g, a, b, static_cast<FlowNetwork::Cap>(best.value));
    if (c.value < best.value) best = std::move(c);
  };
  for (Vertex t = 0; t < n; ++t) {
    if (t != s && !g.has_edge(s, t)) consider(s, t);
  }
  const auto nb = g.neighbors(s);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      if (!g.has_edge(nb[i], nb[j])) consider(nb[i], nb[j]);
    }
  }
  return best;
}

ConnectivityReport analyze_connectivity(const Graph& g) {
  if (g.num_vertices() == 0) throw Error(ErrorCode::EmptyGraph, "connectivity of an empty graph");
  ConnectivityReport r;
  r.vertices = g.num_vertices();
  r.edges = g.num_edges();
  r.min_degree = min_degree(g);
  r.components = count_components(g);
  if (g.num_vertices() >= 2) {
    auto ec = edge_connectivity(g);
    r.edge_connectivity = ec.value;
    r.min_cut_witness = std::move(ec.edges);
    auto vc = vertex_connectivity(g);
    r.vertex_connectivity = vc.value;
    r.separator_witness = std::move(vc.vertices);
  }
  return r;
}

bool check_edge_criterion(const Graph& g, std::size_t k) {
  if (!is_connected(g) || g.num_edges() <= k) {
    throw Error(ErrorCode::InvalidArgument, "edge criterion needs a connected graph with more than k edges");
  }
  for (const auto& e : g.edges()) {
    FlowNetwork net = edge_network(g);
    if (static_cast<std::size_t>(net.max_flow(e.u, e.v, static_cast<FlowNetwork::Cap>(k))) < k) return false;
  }
  if (g.num_vertices() >= 2 && edge_connectivity(g).value < k) {
    throw std::logic_error("edge criterion held but edge connectivity is below k");
  }
  return true;
}

bool check_liu_pairs(const Graph& g, std::size_t k) {
  if (!is_connected(g)) throw Error(ErrorCode::InvalidArgument, "Liu pair check needs a connected graph");
  const std::size_t n = g.num_vertices();
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const auto a = g.neighbors(u);
      const auto b = g.neighbors(v);
      std::vector<Vertex> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (common.empty()) continue;
      if (split_flow(g, u, v, static_cast<FlowNetwork::Cap>(k)).value < k) return false;
    }
  }
  return true;
}

}  // namespace fibers
