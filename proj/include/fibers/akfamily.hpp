#pragma once

// The A_k / B_k family: box decomposition of fibers, applicability of the
// cross-box Graver moves, minimal-degree formulas and the verifiers built on
// them.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fibers/fibergraph.hpp"
#include "fibers/graph.hpp"
#include "fibers/lattice.hpp"
#include "fibers/moves.hpp"

namespace fibers {

struct AkInstance {
  int k = 0;
  IntMatrix matrix;
};

// Throws InvalidArgument for k < 1. The matrix is checked to be pointed.
AkInstance build_Ak(int k);

// [[A_{k+1}, I], [0, I]] with identity blocks sized to A_{k+1}'s row count,
// i.e. (4k+6) x (6k+9).
IntMatrix build_Bk(int k);

// e_{2k+1}: the unit rhs used throughout.
IntVec ak_unit_rhs(int k, Int scale = 1);

struct RhsDecomp {
  int k = 0;
  IntVec w1;
  IntVec w2;
  Int c = 0;
  Int lower = 0;  // l(b) = ||w1^-||_inf
  Int upper = 0;  // u(b) = c - ||w2^-||_inf
  bool empty = false;
};

// Throws DimensionMismatch unless len(b) = 2k+1 with k >= 1.
RhsDecomp decompose_rhs(std::span<const Int> b);

struct BoxCoords {
  IntVec x;
  IntVec y;
  Int s = 0;
  bool operator==(const BoxCoords&) const = default;
};

// (x, w1 + s1 - x, y, w2 + (c - s)1 - y, s, c - s). Throws InvalidArgument
// when the coordinates violate the box constraints.
IntVec fiber_vert(const BoxCoords& bc, const RhsDecomp& d);
// Inverse of fiber_vert on fiber points.
BoxCoords box_coords(std::span<const Int> v, const RhsDecomp& d);

// All of C_s(b), sorted. Throws InvalidArgument unless l(b) <= s <= u(b).
std::vector<IntVec> box_vertices(Int s, const RhsDecomp& d);
std::size_t box_size(Int s, const RhsDecomp& d);
// |F(A_k, b)| from the box volumes.
std::size_t ak_fiber_size(const RhsDecomp& d);

struct AkOptions {
  std::size_t max_vertices = 5000;
};

// F(A_k, b) assembled from its boxes. Throws SizeBudgetExceeded above the cap.
Fiber ak_fiber(const RhsDecomp& d, const AkOptions& options = {});

// g(v1, v2) = (-v1, -1 + v1, v2, 1 - v2, -1, 1) for 0/1 vectors v1, v2.
IntVec graver_move(std::span<const Int> v1, std::span<const Int> v2);

enum class Direction { down, up };

// down: +g(v1, v2) moves from C_s to C_{s-1}; up: -g(v1, v2) to C_{s+1}.
bool is_applicable(const BoxCoords& bc, std::span<const Int> v1, std::span<const Int> v2, Direction dir,
                   const RhsDecomp& d);

// Minimal degree of the Graver fiber graph. Throws EmptyFiber on empty fibers.
std::size_t min_degree_formula(const RhsDecomp& d);
// δ = κ of the Graver graph induced on C_s(b).
std::size_t box_degree_formula(Int s, const RhsDecomp& d);

// Labels consistent with graver_Ak(k): index of the cross move for mask
// (v1 bits, v2 bits << k), then the 2k standard moves.
MoveClassifier ak_graver_classifier(int k);

// The Graver fiber graph of A_k without materializing the basis.
PointGraph ak_graver_graph(int k, const Fiber& fiber);

struct Conj1Report {
  int k = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t min_degree = 0;
  std::size_t edge_connectivity = 0;
  std::size_t vertex_connectivity = 0;
  std::size_t cross_box_edges = 0;
  IntVec bridge_from;
  IntVec bridge_to;
  bool bridge_matches = false;
  bool counterexample = false;  // δ > λ
  bool passed = false;
};

// Lex-Groebner graph on F(A_k, e_{2k+1}): δ = k, λ = κ = 1, one cross-box edge
// between (0,0,0,1,0,1) and (0,1,0,0,1,0) in block notation.
Conj1Report verify_counterexample_conj1(int k);

struct GraverTheoremReport {
  int k = 0;
  IntVec rhs;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  Int lower = 0;
  Int upper = 0;
  std::size_t min_degree = 0;
  std::size_t formula = 0;
  std::size_t edge_connectivity = 0;
  std::size_t vertex_connectivity = 0;  // recorded only
  bool partition_ok = false;
  bool neighbor_boxes_ok = false;   // >= 2^k neighbours in each adjacent box
  bool box_edges_identical = false; // Graver and lex agree inside each box
  bool box_connectivity_ok = false; // δ = κ = formula on each box
  bool short_jumps_ok = false;      // every edge has |Δs| <= 1
  std::optional<bool> applicability_ok;
  bool passed = false;
};

GraverTheoremReport verify_graver_theorem(int k, std::span<const Int> b, const AkOptions& options = {});

// Deterministic sample of rhs with nonempty fibers: w1, w2 in {-1,0,1,2}^k,
// c in 0..4, fiber size within the cap. Distinct, in draw order.
std::vector<IntVec> sample_ak_rhs(int k, std::size_t count, std::uint64_t seed, const AkOptions& options = {});

struct UniversalityReport {
  int k = 0;
  Int bound = 0;
  Int ntilde = 0;
  Int min_rhs = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t vertices = 0;
  std::array<std::size_t, 3> base{};    // δ, λ, κ
  std::array<std::size_t, 3> lifted{};  // δ, λ, κ
  bool isomorphic = false;
  bool degrees_equal = false;
  bool passed = false;
};

// Lifts the lex-Groebner graph on F(A_k, e_{2k+1}) to rhs entries >= N.
UniversalityReport verify_universality(int k, Int bound);

}  // namespace fibers
