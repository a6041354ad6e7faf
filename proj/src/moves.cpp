#include "fibers/moves.hpp"

#include <algorithm>
#include <numeric>

namespace fibers {

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::graver: return "graver";
    case MoveKind::groebner_lex: return "groebner-lex";
    case MoveKind::oracle: return "oracle";
    case MoveKind::custom: return "custom";
  }
  return "custom";
}

MoveKind parse_move_kind(std::string_view text) {
  if (text == "graver") return MoveKind::graver;
  if (text == "groebner-lex") return MoveKind::groebner_lex;
  if (text == "oracle") return MoveKind::oracle;
  if (text == "custom") return MoveKind::custom;
  throw Error(ErrorCode::Parse, "unknown move kind '" + std::string(text) + "'");
}

IntVec sign_normalize(std::span<const Int> v) {
  for (Int x : v) {
    if (x > 0) return IntVec(v.begin(), v.end());
    if (x < 0) return negate(v);
  }
  return IntVec(v.begin(), v.end());
}

MoveSet::MoveSet(IntMatrix matrix, MoveKind kind) : matrix_(std::move(matrix)), kind_(kind) {}

bool MoveSet::add(std::span<const Int> v) {
  if (v.size() != matrix_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "move " + to_string(v) + " has wrong length");
  }
  if (is_zero(v)) throw Error(ErrorCode::InvalidArgument, "zero move");
  if (!is_zero(matrix_.apply(v))) {
    throw Error(ErrorCode::MoveNotInKernel, "move " + to_string(v) + " is not in ker(A)");
  }
  IntVec rep = sign_normalize(v);
  auto [it, inserted] = index_.emplace(rep, moves_.size());
  if (!inserted) return false;
  moves_.push_back({std::move(rep), kind_});
  return true;
}

std::optional<std::size_t> MoveSet::find(std::span<const Int> v) const {
  auto it = index_.find(sign_normalize(v));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<IntVec> MoveSet::signed_vectors() const {
  std::vector<IntVec> out;
  out.reserve(2 * moves_.size());
  for (const auto& m : moves_) {
    out.push_back(m.vec);
    out.push_back(negate(m.vec));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool conformal_leq(std::span<const Int> u, std::span<const Int> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "conformal_leq length mismatch");
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if ((u[i] > 0) != (v[i] > 0) || v[i] == 0) return false;
    if (std::abs(u[i]) > std::abs(v[i])) return false;
  }
  return true;
}

IntVec chi(std::span<const Int> v) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw Error(ErrorCode::NegativeInput, "chi of " + to_string(v));
    out[i] = v[i] != 0 ? 1 : 0;
  }
  return out;
}

GraverOracleResult graver_oracle(const IntMatrix& a, Int bound, const GraverOracleOptions& options) {
  if (bound < 1) throw Error(ErrorCode::InvalidArgument, "Graver oracle bound must be >= 1");
  const std::size_t n = a.cols();
  const IntVec zero(a.rows(), 0);
  GraverOracleResult result;
  result.bound = bound;

  std::vector<IntVec> points;
  try {
    for_each_box_solution(a, zero, IntVec(n, -bound), IntVec(n, bound), [&](const IntVec& p) {
      if (!is_zero(p)) points.push_back(p);
      return true;
    }, options.max_nodes);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BoxTooLarge) throw Error(ErrorCode::BoxTooLarge, "Graver oracle box: " + std::string(e.what()));
    throw;
  }
  result.box_points = points.size();

  // Increasing 1-norm: anything ⊑ x is processed before x, and if x is not
  // minimal some minimal element already found lies below it.
  auto l1 = [](const IntVec& v) {
    Int s = 0;
    for (Int x : v) s += std::abs(x);
    return s;
  };
  std::stable_sort(points.begin(), points.end(),
                   [&](const IntVec& x, const IntVec& y) { return l1(x) < l1(y); });
  std::vector<IntVec> minimal;
  for (const auto& p : points) {
    const bool dominated = std::any_of(minimal.begin(), minimal.end(),
                                       [&](const IntVec& g) { return conformal_leq(g, p); });
    if (!dominated) minimal.push_back(p);
  }

  std::vector<IntVec> reps;
  for (const auto& g : minimal) reps.push_back(sign_normalize(g));
  std::sort(reps.begin(), reps.end());
  reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
  result.moves = MoveSet(a, MoveKind::oracle);
  for (const auto& r : reps) result.moves.add(r);

  const Int outer = checked_mul(2, bound);
  bool complete = true;
  std::size_t cert = 0;
  for_each_box_solution(a, zero, IntVec(n, -outer), IntVec(n, outer), [&](const IntVec& p) {
    if (is_zero(p)) return true;
    ++cert;
    const bool dominated = std::any_of(minimal.begin(), minimal.end(),
                                       [&](const IntVec& g) { return conformal_leq(g, p); });
    if (!dominated) {
      complete = false;
      return false;
    }
    return true;
  }, options.max_nodes);
  result.complete = complete;
  result.certificate_points = cert;
  return result;
}

IntMatrix ak_matrix(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  const std::size_t kk = static_cast<std::size_t>(k);
  IntMatrix m(2 * kk + 1, 4 * kk + 2);
  for (std::size_t i = 0; i < kk; ++i) {
    m(i, i) = 1;
    m(i, kk + i) = 1;
    m(i, 4 * kk) = -1;
    m(kk + i, 2 * kk + i) = 1;
    m(kk + i, 3 * kk + i) = 1;
    m(kk + i, 4 * kk + 1) = -1;
  }
  m(2 * kk, 4 * kk) = 1;
  m(2 * kk, 4 * kk + 1) = 1;
  return m;
}

IntVec ak_standard_move(int k, int block, int i) {
  if (k < 1 || i < 0 || i >= k || block < 0 || block > 1) {
    throw Error(ErrorCode::InvalidArgument, "bad standard move index");
  }
  IntVec v(static_cast<std::size_t>(4 * k + 2), 0);
  v[static_cast<std::size_t>(2 * k * block + i)] = 1;
  v[static_cast<std::size_t>(2 * k * block + k + i)] = -1;
  return v;
}

MoveSet graver_Ak(int k, const AkBasisOptions& options) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (2 * k + 1 >= 63) throw Error(ErrorCode::SizeBudgetExceeded, "Graver basis of A_k too large");
  const std::size_t cross = std::size_t{1} << (2 * k);
  const std::size_t total = 2 * cross + 4 * static_cast<std::size_t>(k);
  if (total > options.max_moves_with_signs) {
    throw Error(ErrorCode::SizeBudgetExceeded, "Graver basis of A_" + std::to_string(k) + " has " +
                                                   std::to_string(total) + " moves, cap is " +
                                                   std::to_string(options.max_moves_with_signs));
  }
  MoveSet ms(ak_matrix(k), MoveKind::graver);
  const std::size_t kk = static_cast<std::size_t>(k);
  for (std::size_t mask = 0; mask < cross; ++mask) {
    IntVec v(4 * kk + 2, 0);
    for (std::size_t i = 0; i < kk; ++i) {
      const Int v1 = (mask >> i) & 1;
      const Int v2 = (mask >> (kk + i)) & 1;
      v[i] = -v1;
      v[kk + i] = v1 - 1;
      v[2 * kk + i] = v2;
      v[3 * kk + i] = 1 - v2;
    }
    v[4 * kk] = -1;
    v[4 * kk + 1] = 1;
    ms.add(v);
  }
  for (int block = 0; block < 2; ++block) {
    for (int i = 0; i < k; ++i) ms.add(ak_standard_move(k, block, i));
  }
  return ms;
}

MoveSet groebner_lex_Ak(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  const std::size_t kk = static_cast<std::size_t>(k);
  MoveSet ms(ak_matrix(k), MoveKind::groebner_lex);
  IntVec cross(4 * kk + 2, 0);
  for (std::size_t i = 0; i < kk; ++i) {
    cross[kk + i] = 1;
    cross[3 * kk + i] = -1;
  }
  cross[4 * kk] = 1;
  cross[4 * kk + 1] = -1;
  ms.add(cross);
  for (int block = 0; block < 2; ++block) {
    for (int i = 0; i < k; ++i) ms.add(ak_standard_move(k, block, i));
  }
  return ms;
}

bool is_graver_Ak_move(int k, std::span<const Int> v) {
  const std::size_t kk = static_cast<std::size_t>(k);
  if (k < 1 || v.size() != 4 * kk + 2) return false;
  const Int s = v[4 * kk];
  const Int t = v[4 * kk + 1];
  if (s == 0 && t == 0) {
    std::size_t nonzero = 0;
    for (std::size_t block = 0; block < 2; ++block) {
      for (std::size_t i = 0; i < kk; ++i) {
        const Int a = v[2 * kk * block + i];
        const Int b = v[2 * kk * block + kk + i];
        if (a != -b || std::abs(a) > 1) return false;
        if (a != 0) ++nonzero;
      }
    }
    return nonzero == 1;
  }
  Int sign;
  if (s == -1 && t == 1) sign = 1;
  else if (s == 1 && t == -1) sign = -1;
  else return false;
  for (std::size_t i = 0; i < kk; ++i) {
    const Int x1 = sign * v[i], x2 = sign * v[kk + i];
    const Int y1 = sign * v[2 * kk + i], y2 = sign * v[3 * kk + i];
    if (!(x1 == 0 || x1 == -1) || x2 != -1 - x1) return false;
    if (!(y1 == 0 || y1 == 1) || y2 != 1 - y1) return false;
  }
  return true;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

bool is_markov_basis(const IntMatrix& a, const MoveSet& moves, const std::vector<IntVec>& rhs_samples,
                     const EnumerationOptions& options) {
  for (const auto& m : moves.moves()) {
    if (!is_zero(a.apply(m.vec))) {
      throw Error(ErrorCode::MoveNotInKernel, "move " + to_string(m.vec) + " is not in ker(A)");
    }
  }
  for (const auto& b : rhs_samples) {
    const Fiber fiber = enumerate_fiber(a, b, options);
    if (fiber.empty()) continue;
    std::vector<std::size_t> parent(fiber.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::size_t components = fiber.size();
    for (std::size_t i = 0; i < fiber.size(); ++i) {
      for (const auto& m : moves.moves()) {
        if (auto j = fiber.index_of(add(fiber[i], m.vec))) {
          const std::size_t ri = find_root(parent, i), rj = find_root(parent, *j);
          if (ri != rj) {
            parent[ri] = rj;
            --components;
          }
        }
      }
    }
    if (components != 1) return false;
  }
  return true;
}

}  // namespace fibers
