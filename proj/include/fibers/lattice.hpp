#pragma once

// Exact integer linear algebra and finite-fiber enumeration.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fibers/error.hpp"

namespace fibers {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

// Checked 64-bit arithmetic. Overflow throws Error(Overflow).
Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

IntVec add(std::span<const Int> a, std::span<const Int> b);
IntVec sub(std::span<const Int> a, std::span<const Int> b);
IntVec negate(std::span<const Int> a);
bool is_zero(std::span<const Int> a);
bool is_nonnegative(std::span<const Int> a);
std::string to_string(std::span<const Int> v);

struct VecHash {
  std::size_t operator()(const IntVec& v) const noexcept;
};

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

  static IntMatrix from_rows(std::initializer_list<std::initializer_list<Int>> rows);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);
  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool empty() const noexcept { return rows_ == 0; }

  [[nodiscard]] Int at(std::size_t r, std::size_t c) const;
  Int& at(std::size_t r, std::size_t c);
  [[nodiscard]] Int operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }
  Int& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Int> row(std::size_t r) const;
  [[nodiscard]] const std::vector<Int>& entries() const noexcept { return entries_; }

  // Exact A*v with overflow checking.
  [[nodiscard]] IntVec apply(std::span<const Int> v) const;

  bool operator==(const IntMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

// Lattice basis of ker(A) ∩ Z^n via unimodular column reduction (Hermite form).
std::vector<IntVec> kernel_basis(const IntMatrix& a);

// Rank over Q, computed by fraction-free elimination.
std::size_t rank(const IntMatrix& a);

// True iff ker(A) ∩ R_{>=0}^n = {0}, i.e. {x >= 0, Ax = 0, sum x = 1} is
// infeasible. Decided by bound propagation when it suffices, otherwise by
// exact Fourier-Motzkin elimination.
bool is_pointed(const IntMatrix& a);

// Enumerates every integer x with A x = b and lower <= x <= upper in
// lexicographic order. Stops early when `visit` returns false.
// `max_nodes` bounds the search tree; exceeding it throws BoxTooLarge.
void for_each_box_solution(const IntMatrix& a, std::span<const Int> b, IntVec lower,
                           IntVec upper, const std::function<bool(const IntVec&)>& visit,
                           std::size_t max_nodes = 50'000'000);

class Fiber {
 public:
  Fiber() = default;
  Fiber(IntMatrix matrix, IntVec rhs, std::vector<IntVec> points);

  [[nodiscard]] const IntMatrix& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const IntVec& rhs() const noexcept { return rhs_; }
  [[nodiscard]] const std::vector<IntVec>& points() const noexcept { return points_; }
  [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
  [[nodiscard]] bool empty() const noexcept { return points_.empty(); }
  [[nodiscard]] const IntVec& operator[](std::size_t i) const { return points_[i]; }

  // Ordinal of a point in the canonical (lexicographic) order.
  [[nodiscard]] std::optional<std::size_t> index_of(std::span<const Int> p) const;

 private:
  IntMatrix matrix_;
  IntVec rhs_;
  std::vector<IntVec> points_;
};

struct EnumerationOptions {
  std::size_t max_points = 1'000'000;
  bool check_pointed = true;
};

// Upper bounds for every coordinate of {u >= 0 : A u = b}, derived by
// interval propagation; nullopt when propagation proves the fiber empty.
// Throws UnboundedSearch naming the first coordinate that cannot be bounded.
std::optional<IntVec> fiber_bounds(const IntMatrix& a, std::span<const Int> b);

// {u >= 0 : A u = b}, sorted lexicographically.
Fiber enumerate_fiber(const IntMatrix& a, const IntVec& b, const EnumerationOptions& options = {});

}  // namespace fibers
