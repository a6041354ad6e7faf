#include <doctest.h>

#include <random>

#include "fibers/akfamily.hpp"
#include "oracles.hpp"

using namespace fibers;

namespace {

std::vector<IntVec> bits(std::size_t k) {
  std::vector<IntVec> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    IntVec v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = (mask >> i) & 1;
    out.push_back(v);
  }
  return out;
}

// Every rhs in a small grid with a nonempty fiber.
std::vector<IntVec> small_rhs(int k) {
  std::vector<IntVec> out;
  const std::size_t len = static_cast<std::size_t>(2 * k + 1);
  IntVec b(len, -1);
  while (true) {
    if (!decompose_rhs(b).empty) out.push_back(b);
    std::size_t i = len;
    while (i > 0 && b[i - 1] == 2) b[--i] = -1;
    if (i == 0) break;
    ++b[i - 1];
  }
  return out;
}

}  // namespace

TEST_SUITE("akfamily") {
  TEST_CASE("A_k and B_k matrices") {
    const AkInstance a1 = build_Ak(1);
    CHECK(a1.matrix == IntMatrix::from_rows({{1, 1, 0, 0, -1, 0}, {0, 0, 1, 1, 0, -1}, {0, 0, 0, 0, 1, 1}}));
    for (int k = 1; k <= 6; ++k) {
      const AkInstance a = build_Ak(k);
      CHECK(a.matrix.rows() == static_cast<std::size_t>(2 * k + 1));
      CHECK(a.matrix.cols() == static_cast<std::size_t>(4 * k + 2));
      CHECK(rank(a.matrix) == a.matrix.rows());
      const IntMatrix b = build_Bk(k);
      CHECK(b.rows() == static_cast<std::size_t>(4 * k + 6));
      CHECK(b.cols() == static_cast<std::size_t>(6 * k + 9));
      CHECK(is_pointed(b));
    }
    CHECK(build_Bk(2).rows() == 14);
    CHECK(build_Bk(2).cols() == 21);
    CHECK_THROWS_AS(build_Ak(0), Error);
    CHECK_THROWS_AS(build_Bk(0), Error);
    CHECK(ak_unit_rhs(2, 3) == IntVec{0, 0, 0, 0, 3});
  }

  TEST_CASE("rhs decomposition") {
    const RhsDecomp d = decompose_rhs(IntVec{1, 0, 2, -1, 3});
    CHECK(d.k == 2);
    CHECK(d.w1 == IntVec{1, 0});
    CHECK(d.w2 == IntVec{2, -1});
    CHECK(d.c == 3);
    CHECK(d.lower == 0);
    CHECK(d.upper == 2);
    CHECK_FALSE(d.empty);
    const RhsDecomp e = decompose_rhs(IntVec{-2, 0, 1});
    CHECK(e.lower == 2);
    CHECK(e.upper == 1);
    CHECK(e.empty);
    for (int k = 1; k <= 4; ++k) {
      const RhsDecomp u = decompose_rhs(ak_unit_rhs(k));
      CHECK(u.lower == 0);
      CHECK(u.upper == 1);
      IntVec b(static_cast<std::size_t>(2 * k + 1), 0);
      b[0] = -1;
      b.back() = 5;
      CHECK(decompose_rhs(b).lower == 1);
      CHECK(decompose_rhs(b).upper == 5);
      b.back() = -1;
      CHECK(decompose_rhs(b).empty);
    }
    CHECK_THROWS_AS(decompose_rhs(IntVec{1, 2}), Error);
    CHECK_THROWS_AS(decompose_rhs(IntVec{1}), Error);
  }

  TEST_CASE("box coordinates") {
    const RhsDecomp d = decompose_rhs(IntVec{1, 0, 2, -1, 3});
    const BoxCoords bc{{1, 0}, {0, 1}, 1};
    const IntVec v = fiber_vert(bc, d);
    CHECK(v == IntVec{1, 0, 1, 1, 0, 1, 4, 0, 1, 2});
    CHECK(box_coords(v, d) == bc);
    CHECK_THROWS_AS(fiber_vert({{3, 0}, {0, 0}, 1}, d), Error);
    CHECK_THROWS_AS(fiber_vert({{0, 0}, {0, 0}, 5}, d), Error);
    CHECK(box_size(0, d) == 2 * 1 * 6 * 3);
    CHECK_THROWS_AS(box_vertices(3, d), Error);
    const RhsDecomp e3 = decompose_rhs(ak_unit_rhs(1));
    CHECK(fiber_vert({{0}, {0}, 0}, e3) == IntVec{0, 0, 0, 1, 0, 1});
    CHECK(fiber_vert({{0}, {0}, 1}, e3) == IntVec{0, 1, 0, 0, 1, 0});
    for (int k = 1; k <= 5; ++k) {
      const RhsDecomp u = decompose_rhs(ak_unit_rhs(k));
      CHECK(box_vertices(0, u).size() == (std::size_t{1} << k));
      CHECK(box_vertices(1, u).size() == (std::size_t{1} << k));
    }
  }

  TEST_CASE("box decomposition matches direct enumeration") {
    for (int k = 1; k <= 2; ++k) {
      const IntMatrix a = ak_matrix(k);
      for (const auto& b : small_rhs(k)) {
        const RhsDecomp d = decompose_rhs(b);
        const Fiber direct = enumerate_fiber(a, b);
        const Fiber boxed = ak_fiber(d);
        CHECK(boxed.points() == direct.points());
        CHECK(ak_fiber_size(d) == direct.size());
        std::size_t total = 0;
        for (Int s = d.lower; s <= d.upper; ++s) {
          const auto box = box_vertices(s, d);
          CHECK(box.size() == box_size(s, d));
          total += box.size();
          for (const auto& p : box) {
            CHECK(box_coords(p, d).s == s);
            CHECK(fiber_vert(box_coords(p, d), d) == p);
          }
        }
        CHECK(total == direct.size());
      }
      // Empty rhs give empty fibers.
      CHECK(enumerate_fiber(a, [&] {
              IntVec b(static_cast<std::size_t>(2 * k + 1), 0);
              b[0] = -2;
              b.back() = 1;
              return b;
            }()).empty());
    }
    AkOptions tiny;
    tiny.max_vertices = 10;
    CHECK_THROWS_AS(ak_fiber(decompose_rhs(ak_unit_rhs(3, 2)), tiny), Error);
  }

  TEST_CASE("cross-box Graver moves") {
    CHECK(graver_move(IntVec{1, 0}, IntVec{0, 1}) == IntVec{-1, 0, 0, -1, 0, 1, 1, 0, -1, 1});
    CHECK_THROWS_AS(graver_move(IntVec{2}, IntVec{0}), Error);
    CHECK_THROWS_AS(graver_move(IntVec{1}, IntVec{0, 1}), Error);
    for (int k = 1; k <= 3; ++k) {
      const MoveSet g = graver_Ak(k);
      for (const auto& v1 : bits(static_cast<std::size_t>(k)))
        for (const auto& v2 : bits(static_cast<std::size_t>(k))) CHECK(g.contains(graver_move(v1, v2)));
    }
  }

  TEST_CASE("applicability agrees with fiber membership") {
    for (int k = 1; k <= 2; ++k) {
      const IntMatrix a = ak_matrix(k);
      for (const auto& b : small_rhs(k)) {
        const RhsDecomp d = decompose_rhs(b);
        const Fiber f = ak_fiber(d);
        for (const auto& p : f.points()) {
          const BoxCoords bc = box_coords(p, d);
          for (const auto& v1 : bits(static_cast<std::size_t>(k))) {
            for (const auto& v2 : bits(static_cast<std::size_t>(k))) {
              const IntVec g = graver_move(v1, v2);
              CHECK(is_applicable(bc, v1, v2, Direction::down, d) == is_nonnegative(add(p, g)));
              CHECK(is_applicable(bc, v1, v2, Direction::up, d) == is_nonnegative(sub(p, g)));
            }
          }
        }
      }
    }
  }

  TEST_CASE("degree formulas agree with the Graver fiber graph") {
    std::size_t single = 0, multi = 0;
    for (int k = 1; k <= 2; ++k) {
      const MoveSet graver = graver_Ak(k);
      for (const auto& b : small_rhs(k)) {
        const RhsDecomp d = decompose_rhs(b);
        const Fiber f = ak_fiber(d);
        if (f.size() < 2) continue;
        const FiberGraph g = build_graph(f, graver);
        CHECK(min_degree(g.graph) == min_degree_formula(d));
        (d.lower == d.upper ? single : multi) += 1;
        for (Int s = d.lower; s <= d.upper; ++s) {
          std::vector<Vertex> keep;
          for (const auto& p : box_vertices(s, d)) keep.push_back(*f.index_of(p));
          const Graph box = g.graph.induced(keep);
          CHECK(min_degree(box) == box_degree_formula(s, d));
        }
      }
    }
    CHECK(single > 0);
    CHECK(multi > 0);
    CHECK_THROWS_AS(min_degree_formula(decompose_rhs(IntVec{-2, 0, 1})), Error);
  }

  TEST_CASE("implicit classifier reproduces build_graph") {
    for (int k = 1; k <= 3; ++k) {
      const MoveSet graver = graver_Ak(k);
      for (const IntVec& b : {ak_unit_rhs(k), ak_unit_rhs(k, 2)}) {
        const Fiber f = ak_fiber(decompose_rhs(b));
        const FiberGraph explicit_graph = build_graph(f, graver);
        const PointGraph implicit_graph = ak_graver_graph(k, f);
        CHECK(implicit_graph.points == f.points());
        CHECK(oracle::raw_edges(implicit_graph.graph) == oracle::raw_edges(explicit_graph.graph));
        CHECK(implicit_graph.labels == explicit_graph.labels);
      }
    }
    CHECK_THROWS_AS(ak_graver_classifier(0), Error);
  }

  TEST_CASE("counterexample family") {
    for (int k = 1; k <= 4; ++k) {
      const Conj1Report r = verify_counterexample_conj1(k);
      CHECK(r.passed);
      CHECK(r.vertices == (std::size_t{1} << (k + 1)));
      CHECK(r.min_degree == static_cast<std::size_t>(k));
      CHECK(r.edge_connectivity == 1);
      CHECK(r.vertex_connectivity == 1);
      CHECK(r.cross_box_edges == 1);
      CHECK(r.bridge_matches);
      CHECK(r.counterexample == (k >= 2));
    }
  }

  TEST_CASE("Graver fiber graphs on sampled rhs") {
    for (int k = 1; k <= 2; ++k) {
      const auto samples = sample_ak_rhs(k, 6, 1);
      CHECK(samples.size() == 6);
      CHECK(samples == sample_ak_rhs(k, 6, 1));
      for (const auto& b : samples) {
        CHECK_FALSE(decompose_rhs(b).empty);
        const GraverTheoremReport r = verify_graver_theorem(k, b);
        CHECK(r.passed);
        CHECK(r.partition_ok);
        CHECK(r.short_jumps_ok);
        CHECK(r.box_edges_identical);
        CHECK(r.box_connectivity_ok);
        CHECK(r.min_degree == r.formula);
        if (r.vertices >= 2) CHECK(r.edge_connectivity == r.min_degree);
        REQUIRE(r.applicability_ok.has_value());
        CHECK(*r.applicability_ok);
      }
    }
  }

  TEST_CASE("universality on the counterexample") {
    const UniversalityReport r = verify_universality(2, 100);
    CHECK(r.passed);
    CHECK(r.isomorphic);
    CHECK(r.degrees_equal);
    CHECK(r.min_rhs >= 100);
    CHECK(r.rows == 10);
    CHECK(r.cols == 15);
    CHECK(r.base == std::array<std::size_t, 3>{2, 1, 1});
    CHECK(r.lifted == r.base);
  }
}
