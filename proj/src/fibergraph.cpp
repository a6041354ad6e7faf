#include "fibers/fibergraph.hpp"

#include <algorithm>
#include <unordered_map>

namespace fibers {

namespace {

struct LabeledEdge {
  Edge edge;
  std::size_t order;
  EdgeLabel label;
};

// Collapses duplicate edges, keeping the earliest label and counting copies.
void finalize(std::size_t n, std::vector<LabeledEdge> raw, Graph& graph, std::vector<EdgeLabel>& labels,
              std::vector<std::size_t>& multiplicity) {
  std::sort(raw.begin(), raw.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
    return a.edge != b.edge ? a.edge < b.edge : a.order < b.order;
  });
  std::vector<Edge> edges;
  labels.clear();
  multiplicity.clear();
  for (const auto& le : raw) {
    if (!edges.empty() && edges.back() == le.edge) {
      ++multiplicity.back();
      continue;
    }
    edges.push_back(le.edge);
    labels.push_back(le.label);
    multiplicity.push_back(1);
  }
  graph = Graph(n, std::move(edges));
}

std::optional<std::size_t> find_point(const std::vector<IntVec>& points, std::span<const Int> p) {
  auto it = std::lower_bound(points.begin(), points.end(), p, [](const IntVec& x, std::span<const Int> y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  if (it == points.end() || !std::equal(it->begin(), it->end(), p.begin(), p.end())) return std::nullopt;
  return static_cast<std::size_t>(it - points.begin());
}

void sort_unique(std::vector<IntVec>& points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
}

const EdgeLabel& lookup_label(const Graph& g, const std::vector<EdgeLabel>& labels, Vertex u, Vertex v) {
  const std::size_t i = g.edge_index(u, v);
  if (i == g.num_edges()) throw Error(ErrorCode::InvalidArgument, "no such edge");
  return labels[i];
}

}  // namespace

std::optional<std::size_t> PointGraph::index_of(std::span<const Int> p) const { return find_point(points, p); }

const EdgeLabel& PointGraph::label(Vertex u, Vertex v) const { return lookup_label(graph, labels, u, v); }

const EdgeLabel& FiberGraph::label(Vertex u, Vertex v) const { return lookup_label(graph, labels, u, v); }

PointGraph connect_points(std::vector<IntVec> points, std::span<const IntVec> moves) {
  sort_unique(points);
  const std::size_t n = points.size();
  for (const auto& m : moves) {
    if (n > 0 && m.size() != points.front().size()) {
      throw Error(ErrorCode::DimensionMismatch, "move length does not match point length");
    }
  }
  // Pairwise differences are cheaper once the move list outgrows the point set.
  if (n > 0 && n / 4 < moves.size()) {
    std::unordered_map<IntVec, EdgeLabel, VecHash> lookup;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      lookup.emplace(moves[i], EdgeLabel{i, 1});
      lookup.emplace(negate(moves[i]), EdgeLabel{i, -1});
    }
    return connect_points(std::move(points), [&](std::span<const Int> d) -> std::optional<EdgeLabel> {
      auto it = lookup.find(IntVec(d.begin(), d.end()));
      if (it == lookup.end()) return std::nullopt;
      return it->second;
    });
  }
  // u + m = v also covers v - m = u, so one sign suffices.
  std::vector<LabeledEdge> raw;
  std::size_t order = 0;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    for (Vertex u = 0; u < n; ++u) {
      IntVec target = points[u];
      for (std::size_t c = 0; c < target.size(); ++c) target[c] = checked_add(target[c], moves[i][c]);
      auto v = find_point(points, target);
      if (!v || *v == u) continue;
      // Record from the lower endpoint: points[hi] - points[lo] = s * move.
      if (u < *v) raw.push_back({{u, *v}, order++, {i, 1}});
      else raw.push_back({{*v, u}, order++, {i, -1}});
    }
  }
  PointGraph pg;
  pg.points = std::move(points);
  finalize(n, std::move(raw), pg.graph, pg.labels, pg.multiplicity);
  return pg;
}

PointGraph connect_points(std::vector<IntVec> points, const MoveClassifier& classify) {
  sort_unique(points);
  const std::size_t n = points.size();
  std::vector<LabeledEdge> raw;
  std::size_t order = 0;
  IntVec diff;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      diff.resize(points[u].size());
      for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = points[v][c] - points[u][c];
      if (auto label = classify(diff)) raw.push_back({{u, v}, order++, *label});
    }
  }
  PointGraph pg;
  pg.points = std::move(points);
  finalize(n, std::move(raw), pg.graph, pg.labels, pg.multiplicity);
  return pg;
}

FiberGraph build_graph(const Fiber& fiber, const MoveSet& moves) {
  if (moves.matrix().cols() != fiber.matrix().cols()) {
    throw Error(ErrorCode::DimensionMismatch, "move set and fiber live in different dimensions");
  }
  std::vector<IntVec> vecs;
  vecs.reserve(moves.size());
  for (const auto& m : moves.moves()) {
    if (!is_zero(fiber.matrix().apply(m.vec))) {
      throw Error(ErrorCode::MoveNotInKernel, "move " + to_string(m.vec) + " is not in ker(A)");
    }
    vecs.push_back(m.vec);
  }
  PointGraph pg = connect_points(fiber.points(), vecs);
  return FiberGraph{fiber, moves, std::move(pg.graph), std::move(pg.labels), std::move(pg.multiplicity)};
}

std::vector<IntVec> box_points(std::span<const Int> w) {
  std::vector<IntVec> out;
  IntVec cur(w.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == w.size()) {
      out.push_back(cur);
      return;
    }
    const Int step = w[i] >= 0 ? 1 : -1;
    for (Int x = 0;; x += step) {
      cur[i] = x;
      rec(i + 1);
      if (x == w[i]) break;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> standard_basis(std::size_t k) {
  std::vector<IntVec> e(k, IntVec(k, 0));
  for (std::size_t i = 0; i < k; ++i) e[i][i] = 1;
  return e;
}

PointGraph box_graph(std::span<const Int> w) {
  return connect_points(box_points(w), standard_basis(w.size()));
}

bool is_isomorphism(const Graph& from, const Graph& to, std::span<const Vertex> map) {
  if (from.num_vertices() != to.num_vertices() || map.size() != from.num_vertices()) return false;
  std::vector<char> hit(to.num_vertices(), 0);
  for (Vertex v : map) {
    if (v >= to.num_vertices() || hit[v]) return false;
    hit[v] = 1;
  }
  if (from.num_edges() != to.num_edges()) return false;
  for (const auto& e : from.edges()) {
    if (!to.has_edge(map[e.u], map[e.v])) return false;
  }
  // Equal edge counts plus injectivity on edges gives the reverse direction;
  // check it explicitly anyway through the inverse map.
  std::vector<Vertex> inverse(map.size());
  for (Vertex v = 0; v < map.size(); ++v) inverse[map[v]] = v;
  for (const auto& e : to.edges()) {
    if (!from.has_edge(inverse[e.u], inverse[e.v])) return false;
  }
  return true;
}

SlackLift slack_lift(const std::vector<IntVec>& points, std::span<const Int> b, std::span<const IntVec> moves) {
  for (const auto& x : points) {
    if (x.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "point length differs from b");
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (x[i] < 0 || x[i] > b[i]) {
        throw Error(ErrorCode::InvalidArgument, "point " + to_string(x) + " lies outside box(b)");
      }
    }
  }
  SlackLift out;
  out.base = connect_points(points, moves);
  std::vector<IntVec> lifted_points;
  for (const auto& x : out.base.points) {
    IntVec y = x;
    const IntVec rest = sub(b, x);
    y.insert(y.end(), rest.begin(), rest.end());
    lifted_points.push_back(std::move(y));
  }
  std::vector<IntVec> lifted_moves;
  for (const auto& m : moves) {
    IntVec y = m;
    const IntVec neg = negate(m);
    y.insert(y.end(), neg.begin(), neg.end());
    lifted_moves.push_back(std::move(y));
  }
  out.lifted = connect_points(lifted_points, lifted_moves);
  out.map.resize(out.base.points.size());
  for (Vertex v = 0; v < out.map.size(); ++v) out.map[v] = *out.lifted.index_of(lifted_points[v]);
  out.isomorphic = is_isomorphism(out.base.graph, out.lifted.graph, out.map);
  return out;
}

IntMatrix universality_matrix(const IntMatrix& a) {
  const std::size_t d = a.rows(), n = a.cols();
  IntMatrix m(2 * d, n + d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = a(r, c);
    m(r, n + r) = 1;
    m(d + r, n + r) = 1;
  }
  return m;
}

UniversalityLift universality_lift(const IntMatrix& a, const MoveSet& moves, const IntVec& b, Int bound,
                                   const EnumerationOptions& options) {
  if (bound < 0) throw Error(ErrorCode::InvalidArgument, "bound must be nonnegative");
  const Fiber base_fiber = enumerate_fiber(a, b, options);
  if (base_fiber.empty()) throw Error(ErrorCode::EmptyFiber, "F(A, b) is empty for b = " + to_string(b));

  UniversalityLift out;
  out.lifted_matrix = universality_matrix(a);
  const std::size_t d = a.rows();
  Int ntilde = bound;
  for (Int bi : b) ntilde = std::max(ntilde, checked_sub(bound, bi));
  out.ntilde = ntilde;
  out.lifted_rhs.resize(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    out.lifted_rhs[i] = checked_add(b[i], ntilde);
    out.lifted_rhs[d + i] = ntilde;
  }
  for (Int x : out.lifted_rhs) {
    if (x < bound) throw std::logic_error("lifted rhs entry below the requested bound");
  }

  MoveSet lifted_moves(out.lifted_matrix, moves.kind());
  for (const auto& m : moves.moves()) {
    IntVec v = m.vec;
    v.resize(v.size() + d, 0);
    lifted_moves.add(v);
  }
  out.base = build_graph(base_fiber, moves);
  out.lifted = build_graph(enumerate_fiber(out.lifted_matrix, out.lifted_rhs, options), lifted_moves);

  out.map.resize(base_fiber.size());
  bool all_found = out.base.fiber.size() == out.lifted.fiber.size();
  for (Vertex v = 0; v < base_fiber.size() && all_found; ++v) {
    IntVec image = base_fiber[v];
    image.resize(image.size() + d, ntilde);
    if (auto idx = out.lifted.fiber.index_of(image)) out.map[v] = *idx;
    else all_found = false;
  }
  out.isomorphic = all_found && is_isomorphism(out.base.graph, out.lifted.graph, out.map);
  return out;
}

}  // namespace fibers
