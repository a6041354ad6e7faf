#pragma once

// Move sets: the sign-compatible order, a bounded Graver oracle and the
// explicit Graver / lexicographic Groebner bases of the A_k family.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fibers/lattice.hpp"

namespace fibers {

enum class MoveKind { graver, groebner_lex, oracle, custom };

std::string_view to_string(MoveKind kind);
MoveKind parse_move_kind(std::string_view text);

struct Move {
  IntVec vec;
  MoveKind provenance = MoveKind::custom;
};

// Picks the lexicographically larger of v and -v (first nonzero entry positive).
IntVec sign_normalize(std::span<const Int> v);

// Finite set of nonzero kernel vectors, one representative per ±pair.
class MoveSet {
 public:
  MoveSet() = default;
  MoveSet(IntMatrix matrix, MoveKind kind);

  // Adds ±v. Returns false if the pair is already present.
  // Throws MoveNotInKernel / InvalidArgument for zero or non-kernel vectors.
  bool add(std::span<const Int> v);

  [[nodiscard]] const IntMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] MoveKind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::vector<Move>& moves() const noexcept { return moves_; }
  [[nodiscard]] std::size_t size() const noexcept { return moves_.size(); }
  [[nodiscard]] std::size_t size_with_signs() const noexcept { return 2 * moves_.size(); }
  [[nodiscard]] bool empty() const noexcept { return moves_.empty(); }
  [[nodiscard]] const IntVec& operator[](std::size_t i) const { return moves_[i].vec; }

  // Index of the ±pair containing v, if any.
  [[nodiscard]] std::optional<std::size_t> find(std::span<const Int> v) const;
  [[nodiscard]] bool contains(std::span<const Int> v) const { return find(v).has_value(); }

  // Both signs of every stored move, sorted.
  [[nodiscard]] std::vector<IntVec> signed_vectors() const;

 private:
  IntMatrix matrix_;
  MoveKind kind_ = MoveKind::custom;
  std::vector<Move> moves_;
  std::unordered_map<IntVec, std::size_t, VecHash> index_;
};

// u ⊑ v: u_i v_i >= 0 and |u_i| <= |v_i| for all i.
bool conformal_leq(std::span<const Int> u, std::span<const Int> v);

// 0/1 support indicator of a nonnegative vector.
IntVec chi(std::span<const Int> v);

struct GraverOracleOptions {
  std::size_t max_nodes = 20'000'000;
};

struct GraverOracleResult {
  MoveSet moves;
  Int bound = 0;
  // Every nonzero kernel point in [-2B, 2B]^n is dominated by a returned move.
  bool complete = false;
  std::size_t box_points = 0;
  std::size_t certificate_points = 0;
};

// ⊑-minimal nonzero kernel points of A inside [-B, B]^n.
GraverOracleResult graver_oracle(const IntMatrix& a, Int bound, const GraverOracleOptions& options = {});

// The (2k+1) x (4k+2) matrix of the A_k family.
IntMatrix ak_matrix(int k);

struct AkBasisOptions {
  std::size_t max_moves_with_signs = std::size_t{1} << 18;
};

// Graver basis of A_k: the cross-box family ±g(v1, v2) plus the slacked
// standard moves of both blocks; 2^{2k+1} + 4k vectors counting signs.
MoveSet graver_Ak(int k, const AkBasisOptions& options = {});

// Reduced lexicographic Groebner basis of A_k (2k+1 moves).
MoveSet groebner_lex_Ak(int k);

// Slacked standard move (e_i, -e_i) of block `block` (0: x-block, 1: y-block).
IntVec ak_standard_move(int k, int block, int i);

// Membership test for ±G(A_k) without materializing the set.
bool is_graver_Ak_move(int k, std::span<const Int> v);

// Necessary-condition check: the fiber graph is connected for every sampled
// rhs with a nonempty fiber.
bool is_markov_basis(const IntMatrix& a, const MoveSet& moves, const std::vector<IntVec>& rhs_samples,
                     const EnumerationOptions& options = {});

}  // namespace fibers
