#include <doctest.h>

#include <random>

#include "fibers/akfamily.hpp"
#include "fibers/lattice.hpp"
#include "fibers/moves.hpp"
#include "oracles.hpp"

using namespace fibers;

namespace {

// gcd of the maximal minors of an n x r integer matrix (columns = vectors).
Int minor_gcd(const std::vector<IntVec>& cols) {
  const std::size_t r = cols.size();
  const std::size_t n = cols.front().size();
  Int g = 0;
  std::vector<std::size_t> pick(r);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == r) {
      // Determinant by cofactor expansion; r stays tiny here.
      std::function<Int(std::vector<std::vector<Int>>)> det = [&](std::vector<std::vector<Int>> m) -> Int {
        if (m.size() == 1) return m[0][0];
        Int total = 0;
        for (std::size_t j = 0; j < m.size(); ++j) {
          std::vector<std::vector<Int>> sub;
          for (std::size_t i = 1; i < m.size(); ++i) {
            std::vector<Int> row;
            for (std::size_t c = 0; c < m.size(); ++c)
              if (c != j) row.push_back(m[i][c]);
            sub.push_back(row);
          }
          total += (j % 2 ? -1 : 1) * m[0][j] * det(sub);
        }
        return total;
      };
      std::vector<std::vector<Int>> m(r, std::vector<Int>(r));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) m[i][j] = cols[j][pick[i]];
      g = std::gcd(g, std::abs(det(m)));
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      pick[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return g;
}

void check_kernel_basis(const IntMatrix& a, std::size_t expected_rank) {
  const auto basis = kernel_basis(a);
  REQUIRE(basis.size() == expected_rank);
  for (const auto& v : basis) CHECK(is_zero(a.apply(v)));
  if (!basis.empty()) {
    CHECK(rank(IntMatrix::from_rows(basis)) == expected_rank);
    // A basis of the saturated lattice ker(A) ∩ Z^n has coprime maximal minors.
    CHECK(minor_gcd(basis) == 1);
  }
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("IntMatrix construction and access") {
    CHECK_THROWS_AS(IntMatrix(0, 3), Error);
    CHECK_THROWS_AS(IntMatrix(2, 2, {1, 2, 3}), Error);
    const IntMatrix a = IntMatrix::from_rows({{1, 2}, {3, 4}});
    CHECK(a.at(1, 0) == 3);
    CHECK_THROWS_AS((void)a.at(2, 0), Error);
    CHECK(a.apply(IntVec{1, -1}) == IntVec{-1, -1});
    CHECK_THROWS_AS((void)a.apply(IntVec{1}), Error);
    CHECK_THROWS_AS(IntMatrix::from_rows(std::vector<IntVec>{{1, 2}, {3}}), Error);
  }

  TEST_CASE("checked arithmetic traps overflow") {
    const Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(checked_add(big, 1), Error);
    CHECK_THROWS_AS(checked_mul(big, 2), Error);
    CHECK_THROWS_AS(checked_neg(std::numeric_limits<Int>::min()), Error);
    try {
      checked_add(big, 1);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Overflow);
    }
    const IntMatrix a = IntMatrix::from_rows({{big, big}});
    CHECK_THROWS_AS((void)a.apply(IntVec{1, 1}), Error);
  }

  TEST_CASE("kernel basis") {
    check_kernel_basis(IntMatrix::from_rows({{1, 1, 2}}), 2);
    CHECK(kernel_basis(IntMatrix::identity(3)).empty());
    check_kernel_basis(ak_matrix(1), 3);
    check_kernel_basis(ak_matrix(2), 5);
    check_kernel_basis(IntMatrix::from_rows({{2, 4, 6, 1}, {0, 3, 3, 3}}), 2);
    check_kernel_basis(IntMatrix::from_rows({{6, 10, 15}}), 2);
  }

  TEST_CASE("kernel basis on random matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 1 + rng() % 3, n = d + 1 + rng() % 3;
      IntMatrix a(d, n);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = static_cast<Int>(rng() % 7) - 3;
      check_kernel_basis(a, n - rank(a));
    }
  }

  TEST_CASE("pointedness") {
    CHECK(is_pointed(IntMatrix::from_rows({{1, 1, 2}})));
    CHECK_FALSE(is_pointed(IntMatrix::from_rows({{1, -1}})));
    CHECK(is_pointed(ak_matrix(2)));
    CHECK(is_pointed(ak_matrix(5)));
    CHECK_FALSE(is_pointed(IntMatrix::from_rows({{1, -1, 0}, {0, 1, -1}})));
    // Needs elimination: no single row has constant sign.
    CHECK(is_pointed(IntMatrix::from_rows({{1, -1, 0}, {0, 1, 1}})));
    CHECK_FALSE(is_pointed(IntMatrix::from_rows({{1, -2, 1}, {0, 1, -1}})));
    CHECK(is_pointed(IntMatrix::from_rows({{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, 1}})));
  }

  TEST_CASE("pointedness agrees with a small certificate search") {
    // A nonzero x >= 0 in ker(A) with entries <= 4 certifies non-pointedness;
    // for 2 x 3 matrices with entries in [-2, 2] a rational ray, if any, has
    // such a representative (Cramer bounds).
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      IntMatrix a(2, 3);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 3; ++c) a(r, c) = static_cast<Int>(rng() % 5) - 2;
      bool ray = false;
      for (Int x = 0; x <= 8 && !ray; ++x)
        for (Int y = 0; y <= 8 && !ray; ++y)
          for (Int z = 0; z <= 8 && !ray; ++z)
            if (x + y + z > 0 && is_zero(a.apply(IntVec{x, y, z}))) ray = true;
      INFO(to_string(a.entries()));
      CHECK(is_pointed(a) == !ray);
    }
  }

  TEST_CASE("enumerate fiber of (1 1 2)") {
    const IntMatrix a = IntMatrix::from_rows({{1, 1, 2}});
    const Fiber f = enumerate_fiber(a, {3});
    const std::vector<IntVec> expected{{0, 1, 1}, {0, 3, 0}, {1, 0, 1}, {1, 2, 0}, {2, 1, 0}, {3, 0, 0}};
    CHECK(f.points() == expected);
    CHECK(f.index_of(IntVec{1, 0, 1}) == 2);
    CHECK_FALSE(f.index_of(IntVec{0, 0, 0}).has_value());
    CHECK(enumerate_fiber(a, {-1}).empty());
    CHECK(enumerate_fiber(a, {0}).size() == 1);
  }

  TEST_CASE("enumerate fiber errors") {
    CHECK_THROWS_AS(enumerate_fiber(IntMatrix::from_rows({{1, -1}}), {0}), Error);
    try {
      enumerate_fiber(IntMatrix::from_rows({{1, -1}}), {0});
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PointednessViolated);
    }
    CHECK_THROWS_AS(enumerate_fiber(IntMatrix::from_rows({{1, 1}}), {1, 2}), Error);
    EnumerationOptions tight;
    tight.max_points = 3;
    CHECK_THROWS_AS(enumerate_fiber(IntMatrix::from_rows({{1, 1, 2}}), {3}, tight), Error);
  }

  TEST_CASE("unbounded search is reported with the coordinate") {
    EnumerationOptions opts;
    opts.check_pointed = false;
    try {
      enumerate_fiber(IntMatrix::from_rows({{1, -1, 0}}), {0, }, opts);
      FAIL("expected UnboundedSearch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnboundedSearch);
    }
  }

  TEST_CASE("A_k unit fibers have 2^{k+1} points") {
    for (int k = 1; k <= 4; ++k) {
      const Fiber f = enumerate_fiber(ak_matrix(k), ak_unit_rhs(k));
      CHECK(f.size() == (std::size_t{1} << (k + 1)));
    }
    CHECK(enumerate_fiber(ak_matrix(1), ak_unit_rhs(1)).size() == 4);
  }

  TEST_CASE("enumeration matches brute force") {
    struct Case {
      IntMatrix a;
      std::vector<IntVec> rhs;
      Int hi;
    };
    std::vector<Case> cases{
        {IntMatrix::from_rows({{1, 1, 2}}), {{0}, {1}, {2}, {3}, {4}, {5}, {-2}}, 5},
        {IntMatrix::from_rows({{1, 2, 3}}), {{0}, {4}, {7}}, 7},
        {IntMatrix::from_rows({{1, 1, 1, 0}, {0, 1, 2, 1}}), {{2, 3}, {3, 1}, {1, 4}}, 4},
        {ak_matrix(1), {{0, 0, 1}, {1, 0, 2}, {-1, 1, 2}, {2, 2, 1}, {0, -1, 0}}, 4},
        {IntMatrix::from_rows({{2, 3, 0, 1, 1}, {0, 1, 1, 1, 2}}), {{5, 3}, {6, 4}}, 6},
    };
    for (const auto& c : cases) {
      for (const auto& b : c.rhs) {
        const Fiber f = enumerate_fiber(c.a, b);
        CHECK(f.points() == oracle::brute_fiber(c.a, b, c.hi));
        for (const auto& p : f.points()) {
          CHECK(is_nonnegative(p));
          CHECK(c.a.apply(p) == b);
        }
        CHECK(enumerate_fiber(c.a, b).points() == f.points());
      }
    }
  }

  TEST_CASE("reported bounds contain every point") {
    const IntMatrix a = ak_matrix(2);
    const IntVec b{1, 0, 2, -1, 3};
    const auto hi = fiber_bounds(a, b);
    REQUIRE(hi.has_value());
    const Fiber f = enumerate_fiber(a, b);
    for (const auto& p : f.points())
      for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] <= (*hi)[i]);
    CHECK_FALSE(fiber_bounds(IntMatrix::from_rows({{1, 1, 2}}), IntVec{-1}).has_value());
  }

  TEST_CASE("box solutions are lexicographic and early-stoppable") {
    const IntMatrix a = IntMatrix::from_rows({{1, 1, -1}});
    std::vector<IntVec> seen;
    for_each_box_solution(a, IntVec{0}, IntVec(3, -1), IntVec(3, 1), [&](const IntVec& p) {
      seen.push_back(p);
      return true;
    });
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(seen.size() == 7);
    std::size_t count = 0;
    for_each_box_solution(a, IntVec{0}, IntVec(3, -1), IntVec(3, 1), [&](const IntVec&) { return ++count < 2; });
    CHECK(count == 2);
  }

  TEST_CASE("Fiber validates its points") {
    const IntMatrix a = IntMatrix::from_rows({{1, 1}});
    CHECK_THROWS_AS(Fiber(a, {2}, {{1, 1}, {1, 1}}), Error);
    CHECK_THROWS_AS(Fiber(a, {2}, {{3, -1}}), Error);
    CHECK_THROWS_AS(Fiber(a, {2}, {{1, 0}}), Error);
    CHECK(Fiber(a, {2}, {{2, 0}, {0, 2}}).points().front() == IntVec{0, 2});
  }
}
