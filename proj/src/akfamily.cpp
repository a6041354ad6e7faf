#include "fibers/akfamily.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace fibers {

namespace {

std::size_t kk(const RhsDecomp& d) { return static_cast<std::size_t>(d.k); }

Int neg_inf_norm(std::span<const Int> w) {
  Int m = 0;
  for (Int x : w) m = std::max(m, checked_neg(x));
  return m;
}

std::size_t support_size(std::span<const Int> w, Int shift) {
  std::size_t n = 0;
  for (Int x : w) n += checked_add(x, shift) != 0 ? 1 : 0;
  return n;
}

void require_01(std::span<const Int> v, std::size_t k, const char* name) {
  if (v.size() != k) throw Error(ErrorCode::DimensionMismatch, std::string(name) + " must have length k");
  for (Int x : v) {
    if (x != 0 && x != 1) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a 0/1 vector");
  }
}

// Every vector of the box [0, hi_1] x ... x [0, hi_k], lexicographic.
void for_each_box(std::span<const Int> hi, const std::function<void(const IntVec&)>& visit) {
  IntVec cur(hi.size(), 0);
  while (true) {
    visit(cur);
    std::size_t i = hi.size();
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(), 0);
        break;
      }
      if (i == 0) return;
    }
    if (hi.empty()) return;
  }
}

IntVec shifted(std::span<const Int> w, Int s) {
  IntVec out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = checked_add(w[i], s);
  return out;
}

std::size_t volume(std::span<const Int> hi) {
  std::size_t v = 1;
  for (Int h : hi) {
    if (h < 0) return 0;
    if (__builtin_mul_overflow(v, static_cast<std::size_t>(h + 1), &v)) {
      throw Error(ErrorCode::Overflow, "box volume");
    }
  }
  return v;
}

Int s_of(std::span<const Int> v, int k) { return v[static_cast<std::size_t>(4 * k)]; }

}  // namespace

AkInstance build_Ak(int k) {
  AkInstance inst{k, ak_matrix(k)};
  if (!is_pointed(inst.matrix)) throw std::logic_error("A_k is not pointed");
  return inst;
}

IntMatrix build_Bk(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  return universality_matrix(ak_matrix(k + 1));
}

IntVec ak_unit_rhs(int k, Int scale) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  IntVec b(static_cast<std::size_t>(2 * k + 1), 0);
  b.back() = scale;
  return b;
}

RhsDecomp decompose_rhs(std::span<const Int> b) {
  if (b.size() < 3 || b.size() % 2 == 0) {
    throw Error(ErrorCode::DimensionMismatch, "rhs length must be 2k+1 with k >= 1, got " + std::to_string(b.size()));
  }
  RhsDecomp d;
  d.k = static_cast<int>((b.size() - 1) / 2);
  const std::size_t k = kk(d);
  d.w1.assign(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(k));
  d.w2.assign(b.begin() + static_cast<std::ptrdiff_t>(k), b.begin() + static_cast<std::ptrdiff_t>(2 * k));
  d.c = b[2 * k];
  d.lower = neg_inf_norm(d.w1);
  d.upper = checked_sub(d.c, neg_inf_norm(d.w2));
  d.empty = d.c < 0 || d.lower > d.upper;
  return d;
}

IntVec fiber_vert(const BoxCoords& bc, const RhsDecomp& d) {
  const std::size_t k = kk(d);
  if (bc.x.size() != k || bc.y.size() != k) throw Error(ErrorCode::DimensionMismatch, "box coordinates must have length k");
  if (d.empty || bc.s < d.lower || bc.s > d.upper) {
    throw Error(ErrorCode::InvalidArgument, "s = " + std::to_string(bc.s) + " outside [l(b), u(b)]");
  }
  const Int t = checked_sub(d.c, bc.s);
  IntVec v(4 * k + 2);
  for (std::size_t i = 0; i < k; ++i) {
    const Int xs = checked_add(d.w1[i], bc.s);
    const Int ys = checked_add(d.w2[i], t);
    if (bc.x[i] < 0 || bc.x[i] > xs) throw Error(ErrorCode::InvalidArgument, "x outside box(w1 + s1)");
    if (bc.y[i] < 0 || bc.y[i] > ys) throw Error(ErrorCode::InvalidArgument, "y outside box(w2 + (c-s)1)");
    v[i] = bc.x[i];
    v[k + i] = xs - bc.x[i];
    v[2 * k + i] = bc.y[i];
    v[3 * k + i] = ys - bc.y[i];
  }
  v[4 * k] = bc.s;
  v[4 * k + 1] = t;
  return v;
}

BoxCoords box_coords(std::span<const Int> v, const RhsDecomp& d) {
  const std::size_t k = kk(d);
  if (v.size() != 4 * k + 2) throw Error(ErrorCode::DimensionMismatch, "fiber point must have length 4k+2");
  BoxCoords bc;
  bc.x.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
  bc.y.assign(v.begin() + static_cast<std::ptrdiff_t>(2 * k), v.begin() + static_cast<std::ptrdiff_t>(3 * k));
  bc.s = v[4 * k];
  return bc;
}

std::size_t box_size(Int s, const RhsDecomp& d) {
  if (d.empty || s < d.lower || s > d.upper) return 0;
  const std::size_t a = volume(shifted(d.w1, s));
  const std::size_t b = volume(shifted(d.w2, checked_sub(d.c, s)));
  std::size_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorCode::Overflow, "box volume");
  return out;
}

std::size_t ak_fiber_size(const RhsDecomp& d) {
  if (d.empty) return 0;
  std::size_t total = 0;
  for (Int s = d.lower; s <= d.upper; ++s) {
    if (__builtin_add_overflow(total, box_size(s, d), &total)) throw Error(ErrorCode::Overflow, "fiber size");
  }
  return total;
}

std::vector<IntVec> box_vertices(Int s, const RhsDecomp& d) {
  if (d.empty || s < d.lower || s > d.upper) {
    throw Error(ErrorCode::InvalidArgument, "s = " + std::to_string(s) + " outside [l(b), u(b)]");
  }
  const IntVec xs = shifted(d.w1, s);
  const IntVec ys = shifted(d.w2, checked_sub(d.c, s));
  std::vector<IntVec> out;
  out.reserve(box_size(s, d));
  BoxCoords bc;
  bc.s = s;
  for_each_box(xs, [&](const IntVec& x) {
    bc.x = x;
    for_each_box(ys, [&](const IntVec& y) {
      bc.y = y;
      out.push_back(fiber_vert(bc, d));
    });
  });
  std::sort(out.begin(), out.end());
  return out;
}

Fiber ak_fiber(const RhsDecomp& d, const AkOptions& options) {
  const IntMatrix a = ak_matrix(d.k);
  IntVec b = d.w1;
  b.insert(b.end(), d.w2.begin(), d.w2.end());
  b.push_back(d.c);
  if (d.empty) return Fiber(a, b, {});
  const std::size_t n = ak_fiber_size(d);
  if (n > options.max_vertices) {
    throw Error(ErrorCode::SizeBudgetExceeded, "fiber has " + std::to_string(n) + " points, cap is " +
                                                   std::to_string(options.max_vertices));
  }
  std::vector<IntVec> points;
  points.reserve(n);
  for (Int s = d.lower; s <= d.upper; ++s) {
    auto box = box_vertices(s, d);
    points.insert(points.end(), std::make_move_iterator(box.begin()), std::make_move_iterator(box.end()));
  }
  std::sort(points.begin(), points.end());
  return Fiber(a, std::move(b), std::move(points));
}

IntVec graver_move(std::span<const Int> v1, std::span<const Int> v2) {
  const std::size_t k = v1.size();
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  require_01(v1, k, "v1");
  require_01(v2, k, "v2");
  IntVec g(4 * k + 2);
  for (std::size_t i = 0; i < k; ++i) {
    g[i] = -v1[i];
    g[k + i] = v1[i] - 1;
    g[2 * k + i] = v2[i];
    g[3 * k + i] = 1 - v2[i];
  }
  g[4 * k] = -1;
  g[4 * k + 1] = 1;
  return g;
}

bool is_applicable(const BoxCoords& bc, std::span<const Int> v1, std::span<const Int> v2, Direction dir,
                   const RhsDecomp& d) {
  const std::size_t k = kk(d);
  require_01(v1, k, "v1");
  require_01(v2, k, "v2");
  const IntVec v = fiber_vert(bc, d);
  bool ok = true;
  if (dir == Direction::down) {
    ok = bc.s > d.lower;
    for (std::size_t i = 0; i < k && ok; ++i) {
      // supp(v1) ⊆ supp(x) and the complement ⊆ supp(w1 + s1 - x).
      ok = v1[i] == 1 ? v[i] != 0 : v[k + i] != 0;
    }
  } else {
    ok = bc.s < d.upper;
    for (std::size_t i = 0; i < k && ok; ++i) {
      ok = v2[i] == 1 ? v[2 * k + i] != 0 : v[3 * k + i] != 0;
    }
  }
  if (ok) {
    const IntVec g = graver_move(v1, v2);
    const IntVec target = dir == Direction::down ? add(v, g) : sub(v, g);
    IntVec b = d.w1;
    b.insert(b.end(), d.w2.begin(), d.w2.end());
    b.push_back(d.c);
    if (!is_nonnegative(target) || ak_matrix(d.k).apply(target) != b) {
      throw std::logic_error("applicable move leaves the fiber");
    }
  }
  return ok;
}

std::size_t min_degree_formula(const RhsDecomp& d) {
  if (d.empty) throw Error(ErrorCode::EmptyFiber, "minimal degree of an empty fiber");
  const std::size_t a = support_size(d.w1, neg_inf_norm(d.w1));
  const std::size_t b = support_size(d.w2, neg_inf_norm(d.w2));
  if (d.lower == d.upper) return a + b;
  if (d.k >= 63) throw Error(ErrorCode::Overflow, "2^k");
  return std::min(a, b) + kk(d) + (std::size_t{1} << d.k);
}

std::size_t box_degree_formula(Int s, const RhsDecomp& d) {
  if (d.empty || s < d.lower || s > d.upper) {
    throw Error(ErrorCode::InvalidArgument, "s = " + std::to_string(s) + " outside [l(b), u(b)]");
  }
  return support_size(d.w1, s) + support_size(d.w2, checked_sub(d.c, s));
}

MoveClassifier ak_graver_classifier(int k) {
  if (k < 1 || k > 30) throw Error(ErrorCode::InvalidArgument, "k out of range for the Graver classifier");
  const std::size_t n = static_cast<std::size_t>(k);
  const std::size_t cross = std::size_t{1} << (2 * k);
  return [k, n, cross](std::span<const Int> diff) -> std::optional<EdgeLabel> {
    if (!is_graver_Ak_move(k, diff)) return std::nullopt;
    const Int s = diff[4 * n];
    if (s == 0) {
      for (std::size_t block = 0; block < 2; ++block) {
        for (std::size_t i = 0; i < n; ++i) {
          const Int a = diff[2 * n * block + i];
          if (a != 0) return EdgeLabel{cross + block * n + i, a > 0 ? 1 : -1};
        }
      }
      return std::nullopt;
    }
    // diff = sign * (-g(v1, v2)); the stored representative is -g.
    const int sign = s == 1 ? 1 : -1;
    std::size_t mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (-sign * diff[i] == -1) mask |= std::size_t{1} << i;           // v1_i = 1
      if (-sign * diff[2 * n + i] == 1) mask |= std::size_t{1} << (n + i);  // v2_i = 1
    }
    return EdgeLabel{mask, sign};
  };
}

PointGraph ak_graver_graph(int k, const Fiber& fiber) {
  if (fiber.matrix() != ak_matrix(k)) throw Error(ErrorCode::DimensionMismatch, "fiber is not a fiber of A_k");
  return connect_points(fiber.points(), ak_graver_classifier(k));
}

Conj1Report verify_counterexample_conj1(int k) {
  Conj1Report r;
  r.k = k;
  const Fiber fiber = ak_fiber(decompose_rhs(ak_unit_rhs(k)));
  const FiberGraph g = build_graph(fiber, groebner_lex_Ak(k));
  const ConnectivityReport c = analyze_connectivity(g.graph);
  r.vertices = c.vertices;
  r.edges = c.edges;
  r.min_degree = c.min_degree;
  r.edge_connectivity = c.edge_connectivity;
  r.vertex_connectivity = c.vertex_connectivity;
  for (const auto& e : g.graph.edges()) {
    if (s_of(fiber[e.u], k) != s_of(fiber[e.v], k)) {
      ++r.cross_box_edges;
      r.bridge_from = fiber[e.u];
      r.bridge_to = fiber[e.v];
    }
  }
  const std::size_t n = static_cast<std::size_t>(k);
  IntVec lo(4 * n + 2, 0), hi(4 * n + 2, 0);
  for (std::size_t i = 0; i < n; ++i) {
    lo[3 * n + i] = 1;
    hi[n + i] = 1;
  }
  lo[4 * n + 1] = 1;
  hi[4 * n] = 1;
  if (r.cross_box_edges == 1) {
    if (s_of(r.bridge_from, k) != 0) std::swap(r.bridge_from, r.bridge_to);
    r.bridge_matches = r.bridge_from == lo && r.bridge_to == hi;
  }
  r.counterexample = r.min_degree > r.edge_connectivity;
  r.passed = r.min_degree == n && r.edge_connectivity == 1 && r.vertex_connectivity == 1 &&
             r.cross_box_edges == 1 && r.bridge_matches;
  return r;
}

GraverTheoremReport verify_graver_theorem(int k, std::span<const Int> b, const AkOptions& options) {
  GraverTheoremReport r;
  r.k = k;
  r.rhs.assign(b.begin(), b.end());
  const RhsDecomp d = decompose_rhs(b);
  if (d.k != k) throw Error(ErrorCode::DimensionMismatch, "rhs length does not match k");
  if (d.empty) throw Error(ErrorCode::EmptyFiber, "F(A_k, b) is empty for b = " + to_string(b));
  r.lower = d.lower;
  r.upper = d.upper;
  const Fiber fiber = ak_fiber(d, options);
  const FiberGraph graver = build_graph(fiber, graver_Ak(k));
  const FiberGraph lex = build_graph(fiber, groebner_lex_Ak(k));
  const Graph& g = graver.graph;
  const std::size_t n = fiber.size();
  r.vertices = n;
  r.edges = g.num_edges();
  r.min_degree = min_degree(g);
  r.formula = min_degree_formula(d);
  if (n >= 2) {
    r.edge_connectivity = edge_connectivity(g).value;
    r.vertex_connectivity = vertex_connectivity(g).value;
  }

  // Partition into boxes.
  std::vector<IntVec> cover;
  std::map<Int, std::vector<Vertex>> boxes;
  for (Int s = d.lower; s <= d.upper; ++s) {
    for (auto& p : box_vertices(s, d)) {
      auto idx = fiber.index_of(p);
      if (idx) boxes[s].push_back(*idx);
      cover.push_back(std::move(p));
    }
  }
  std::sort(cover.begin(), cover.end());
  r.partition_ok = cover == fiber.points();

  r.short_jumps_ok = std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return std::abs(s_of(fiber[e.u], k) - s_of(fiber[e.v], k)) <= 1;
  });

  const std::size_t need = std::size_t{1} << k;
  r.neighbor_boxes_ok = true;
  for (Vertex v = 0; v < n; ++v) {
    const Int s = s_of(fiber[v], k);
    std::size_t below = 0, above = 0;
    for (Vertex u : g.neighbors(v)) {
      const Int t = s_of(fiber[u], k);
      below += t == s - 1;
      above += t == s + 1;
    }
    const bool ok_below = s > d.lower ? below >= need : below == 0;
    const bool ok_above = s < d.upper ? above >= need : above == 0;
    if (!ok_below || !ok_above) r.neighbor_boxes_ok = false;
  }

  auto in_box_edges = [&](const Graph& h) {
    std::vector<Edge> out;
    for (const auto& e : h.edges()) {
      if (s_of(fiber[e.u], k) == s_of(fiber[e.v], k)) out.push_back(e);
    }
    return out;
  };
  r.box_edges_identical = in_box_edges(g) == in_box_edges(lex.graph);

  r.box_connectivity_ok = true;
  for (const auto& [s, members] : boxes) {
    const Graph box = g.induced(members);
    const std::size_t want = box_degree_formula(s, d);
    const std::size_t delta = min_degree(box);
    const std::size_t kappa = box.num_vertices() >= 2 ? vertex_connectivity(box).value : 0;
    if (delta != want || kappa != want) r.box_connectivity_ok = false;
  }

  // Applicability predicate against direct membership of the moved point.
  if (k <= 3 && n * (std::size_t{1} << (2 * k)) <= 200'000) {
    bool ok = true;
    IntVec v1(static_cast<std::size_t>(k)), v2(static_cast<std::size_t>(k));
    for (Vertex v = 0; v < n && ok; ++v) {
      const BoxCoords bc = box_coords(fiber[v], d);
      for (std::size_t mask = 0; mask < (std::size_t{1} << (2 * k)) && ok; ++mask) {
        for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
          v1[i] = (mask >> i) & 1;
          v2[i] = (mask >> (k + static_cast<int>(i))) & 1;
        }
        const IntVec gm = graver_move(v1, v2);
        const bool down_direct = fiber.index_of(add(fiber[v], gm)).has_value();
        const bool up_direct = fiber.index_of(sub(fiber[v], gm)).has_value();
        ok = is_applicable(bc, v1, v2, Direction::down, d) == down_direct &&
             is_applicable(bc, v1, v2, Direction::up, d) == up_direct;
      }
    }
    r.applicability_ok = ok;
  }

  r.passed = r.edge_connectivity == r.min_degree && r.min_degree == r.formula && r.partition_ok &&
             r.neighbor_boxes_ok && r.box_edges_identical && r.box_connectivity_ok && r.short_jumps_ok &&
             r.applicability_ok.value_or(true);
  if (n < 2) r.passed = r.passed && r.min_degree == 0;
  return r;
}

std::vector<IntVec> sample_ak_rhs(int k, std::size_t count, std::uint64_t seed, const AkOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<IntVec> out;
  std::set<IntVec> seen;
  const std::size_t len = static_cast<std::size_t>(2 * k + 1);
  for (std::size_t attempt = 0; out.size() < count && attempt < 1000 * count + 1000; ++attempt) {
    IntVec b(len);
    for (std::size_t i = 0; i + 1 < len; ++i) b[i] = static_cast<Int>(rng() % 4) - 1;
    b.back() = static_cast<Int>(rng() % 5);
    const RhsDecomp d = decompose_rhs(b);
    if (d.empty || ak_fiber_size(d) > options.max_vertices) continue;
    if (seen.insert(b).second) out.push_back(std::move(b));
  }
  return out;
}

UniversalityReport verify_universality(int k, Int bound) {
  UniversalityReport r;
  r.k = k;
  r.bound = bound;
  const IntMatrix a = ak_matrix(k);
  const UniversalityLift lift = universality_lift(a, groebner_lex_Ak(k), ak_unit_rhs(k), bound);
  r.ntilde = lift.ntilde;
  r.min_rhs = *std::min_element(lift.lifted_rhs.begin(), lift.lifted_rhs.end());
  r.rows = lift.lifted_matrix.rows();
  r.cols = lift.lifted_matrix.cols();
  r.vertices = lift.lifted.fiber.size();
  const auto cb = analyze_connectivity(lift.base.graph);
  const auto cl = analyze_connectivity(lift.lifted.graph);
  r.base = {cb.min_degree, cb.edge_connectivity, cb.vertex_connectivity};
  r.lifted = {cl.min_degree, cl.edge_connectivity, cl.vertex_connectivity};
  r.isomorphic = lift.isomorphic;
  auto degrees = [](const Graph& g) {
    std::vector<std::size_t> ds;
    for (Vertex v = 0; v < g.num_vertices(); ++v) ds.push_back(g.degree(v));
    std::sort(ds.begin(), ds.end());
    return ds;
  };
  r.degrees_equal = degrees(lift.base.graph) == degrees(lift.lifted.graph);
  r.passed = r.isomorphic && r.degrees_equal && r.base == r.lifted && r.min_rhs >= bound;
  return r;
}

}  // namespace fibers
