#pragma once

// Simple undirected graphs and exact connectivity via unit-capacity max-flow.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fibers/error.hpp"

namespace fibers {

using Vertex = std::size_t;

struct Edge {
  Vertex u = 0;  // u < v
  Vertex v = 0;
  auto operator<=>(const Edge&) const = default;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}
  // Self-loops are rejected; duplicate edges collapse.
  Graph(std::size_t n, std::vector<Edge> edges);

  [[nodiscard]] std::size_t num_vertices() const noexcept { return adj_.size(); }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
  [[nodiscard]] std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  [[nodiscard]] std::size_t degree(Vertex v) const { return adj_.at(v).size(); }
  [[nodiscard]] bool has_edge(Vertex u, Vertex v) const;
  // Sorted by (u, v) with u < v.
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  // Position of {u, v} in edges(), or num_edges() if absent.
  [[nodiscard]] std::size_t edge_index(Vertex u, Vertex v) const;

  [[nodiscard]] Graph without_edges(std::span<const Edge> removed) const;
  [[nodiscard]] Graph without_vertices(std::span<const Vertex> removed) const;
  [[nodiscard]] Graph induced(std::span<const Vertex> keep) const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::vector<Edge> edges_;
};

Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);

// Component id per vertex, ids numbered in order of first vertex.
std::vector<std::size_t> component_labels(const Graph& g);
std::size_t count_components(const Graph& g);
inline bool is_connected(const Graph& g) { return count_components(g) <= 1; }

std::size_t min_degree(const Graph& g);

struct EdgeCut {
  std::size_t value = 0;
  std::vector<Edge> edges;
};

struct VertexCut {
  std::size_t value = 0;
  std::vector<Vertex> vertices;
};

// Maximum number of edge-disjoint u-v paths, with a minimum u-v edge cut.
EdgeCut min_edge_cut(const Graph& g, Vertex s, Vertex t);
std::size_t edge_disjoint_paths(const Graph& g, Vertex s, Vertex t);

// Maximum number of internally vertex-disjoint s-t paths. For non-adjacent
// s, t the returned cut is a minimum s-t separator.
VertexCut min_vertex_cut(const Graph& g, Vertex s, Vertex t);
std::size_t vertex_disjoint_paths(const Graph& g, Vertex s, Vertex t);

// Edge-disjoint paths joining the set K to v: max-flow from an auxiliary
// source attached to every vertex of K.
std::size_t set_to_vertex_paths(const Graph& g, std::span<const Vertex> sources, Vertex v);

// Global edge connectivity: min over t of maxflow(s, t) for a fixed
// minimum-degree s. Disconnected graphs give 0 with an empty cut.
EdgeCut edge_connectivity(const Graph& g);

// Global vertex connectivity (Esfahanian-Hakimi pair schedule). Complete
// graphs give |V|-1 with all but one vertex as witness.
VertexCut vertex_connectivity(const Graph& g);

struct ConnectivityReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t min_degree = 0;
  std::size_t edge_connectivity = 0;
  std::size_t vertex_connectivity = 0;
  std::size_t components = 0;
  std::vector<Edge> min_cut_witness;
  std::vector<Vertex> separator_witness;
};

ConnectivityReport analyze_connectivity(const Graph& g);

// Every adjacent pair is joined by >= k edge-disjoint paths.
bool check_edge_criterion(const Graph& g, std::size_t k);

// Every pair with intersecting neighbourhoods is joined by >= k internally
// vertex-disjoint paths.
bool check_liu_pairs(const Graph& g, std::size_t k);

}  // namespace fibers
