#pragma once

// Fiber graphs G(F, M) and the structural constructions around them:
// box graphs, slack lifts and the right-hand-side universality lift.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fibers/graph.hpp"
#include "fibers/lattice.hpp"
#include "fibers/moves.hpp"

namespace fibers {

// For an edge {u, v} with u < v: points[v] - points[u] == sign * moves[move].
struct EdgeLabel {
  std::size_t move = 0;
  int sign = 1;
  bool operator==(const EdgeLabel&) const = default;
};

// Maps a difference vector to the move producing it, if any.
using MoveClassifier = std::function<std::optional<EdgeLabel>(std::span<const Int>)>;

// Graph on an arbitrary point set with edges given by ± moves.
struct PointGraph {
  std::vector<IntVec> points;             // sorted lexicographically
  Graph graph;
  std::vector<EdgeLabel> labels;          // aligned with graph.edges()
  std::vector<std::size_t> multiplicity;  // moves generating each edge

  [[nodiscard]] std::optional<std::size_t> index_of(std::span<const Int> p) const;
  [[nodiscard]] const EdgeLabel& label(Vertex u, Vertex v) const;
};

// Points are sorted and deduplicated. Both signs of every move are applied;
// when two moves produce the same edge the first label wins.
PointGraph connect_points(std::vector<IntVec> points, std::span<const IntVec> moves);
// Same, by testing every pairwise difference against a classifier.
PointGraph connect_points(std::vector<IntVec> points, const MoveClassifier& classify);

struct FiberGraph {
  Fiber fiber;
  MoveSet moveset;
  Graph graph;
  std::vector<EdgeLabel> labels;
  std::vector<std::size_t> multiplicity;

  [[nodiscard]] const EdgeLabel& label(Vertex u, Vertex v) const;
};

// Throws MoveNotInKernel when a move is not in ker of the fiber's matrix.
FiberGraph build_graph(const Fiber& fiber, const MoveSet& moves);

// Points of [w_1] x ... x [w_k], each [w_i] running from 0 to w_i inclusive.
std::vector<IntVec> box_points(std::span<const Int> w);
// The box with the standard-basis moves.
PointGraph box_graph(std::span<const Int> w);
std::vector<IntVec> standard_basis(std::size_t k);

struct SlackLift {
  PointGraph base;
  PointGraph lifted;
  std::vector<Vertex> map;  // base vertex -> lifted vertex, x -> (x, b - x)
  bool isomorphic = false;
};

// G(F, M) ≅ G(Slack_b(F), Slack_0(M)) for F ⊆ box(b).
SlackLift slack_lift(const std::vector<IntVec>& points, std::span<const Int> b,
                     std::span<const IntVec> moves);

struct UniversalityLift {
  IntMatrix lifted_matrix;  // [[A, I_d], [0, I_d]]
  IntVec lifted_rhs;        // (b + n~ 1, n~ 1)
  Int ntilde = 0;
  FiberGraph base;
  FiberGraph lifted;
  std::vector<Vertex> map;  // v -> (v, n~ 1)
  bool isomorphic = false;
};

// [[A, I], [0, I]] for a d x n matrix A.
IntMatrix universality_matrix(const IntMatrix& a);

// Lifts F(A, b)_M to an isomorphic fiber graph whose rhs entries are all >= N.
// The lifted fiber is enumerated independently and the bijection checked
// edge by edge. Throws EmptyFiber when F(A, b) is empty.
UniversalityLift universality_lift(const IntMatrix& a, const MoveSet& moves, const IntVec& b, Int bound,
                                   const EnumerationOptions& options = {});

// Isomorphism check for an explicit vertex map.
bool is_isomorphism(const Graph& from, const Graph& to, std::span<const Vertex> map);

}  // namespace fibers
