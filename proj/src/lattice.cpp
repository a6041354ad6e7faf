#include "fibers/lattice.hpp"

#include <algorithm>
#include <bitset>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace fibers {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnboundedSearch: return "UnboundedSearch";
    case ErrorCode::PointednessViolated: return "PointednessViolated";
    case ErrorCode::BoxTooLarge: return "BoxTooLarge";
    case ErrorCode::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::MoveNotInKernel: return "MoveNotInKernel";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::EmptyFiber: return "EmptyFiber";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer addition");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer subtraction");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "integer multiplication");
  return r;
}

Int checked_neg(Int a) { return checked_sub(0, a); }

namespace {

void require_same_length(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "vector lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

}  // namespace

IntVec add(std::span<const Int> a, std::span<const Int> b) {
  require_same_length(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

IntVec sub(std::span<const Int> a, std::span<const Int> b) {
  require_same_length(a, b);
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

IntVec negate(std::span<const Int> a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_neg(a[i]);
  return r;
}

bool is_zero(std::span<const Int> a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

bool is_nonnegative(std::span<const Int> a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x >= 0; });
}

std::string to_string(std::span<const Int> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::size_t VecHash::operator()(const IntVec& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (Int x : v) {
    h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : IntMatrix(rows, cols, std::vector<Int>(rows * cols, 0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(entries_.size()));
  }
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<Int>> rows) {
  std::vector<IntVec> r;
  for (const auto& row : rows) r.emplace_back(row);
  return from_rows(r);
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) throw Error(ErrorCode::DimensionMismatch, "matrix has no rows");
  const std::size_t cols = rows.front().size();
  std::vector<Int> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return IntMatrix(rows.size(), cols, std::move(entries));
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Int IntMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::DimensionMismatch, "matrix index out of range");
  return entries_[r * cols_ + c];
}

Int& IntMatrix::at(std::size_t r, std::size_t c) {
  if (r >= rows_ || c >= cols_) throw Error(ErrorCode::DimensionMismatch, "matrix index out of range");
  return entries_[r * cols_ + c];
}

std::span<const Int> IntMatrix::row(std::size_t r) const {
  if (r >= rows_) throw Error(ErrorCode::DimensionMismatch, "row index out of range");
  return {entries_.data() + r * cols_, cols_};
}

IntVec IntMatrix::apply(std::span<const Int> v) const {
  if (v.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(cols_) +
                                                  " columns, vector has length " +
                                                  std::to_string(v.size()));
  }
  IntVec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Int acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Int a = (*this)(r, c);
      if (a != 0 && v[c] != 0) acc = checked_add(acc, checked_mul(a, v[c]));
    }
    out[r] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kernel and rank

std::vector<IntVec> kernel_basis(const IntMatrix& a) {
  if (a.empty()) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  const std::size_t d = a.rows();
  const std::size_t n = a.cols();
  // Work on columns: m = A*U with U unimodular.
  std::vector<IntVec> mcols(n, IntVec(d));
  std::vector<IntVec> ucols(n, IntVec(n, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < d; ++r) mcols[c][r] = a(r, c);
    ucols[c][c] = 1;
  }
  auto axpy = [](IntVec& dst, Int q, const IntVec& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (src[i] != 0) dst[i] = checked_sub(dst[i], checked_mul(q, src[i]));
    }
  };

  std::size_t pivot = 0;
  for (std::size_t r = 0; r < d && pivot < n; ++r) {
    while (true) {
      std::size_t best = n;
      for (std::size_t j = pivot; j < n; ++j) {
        if (mcols[j][r] == 0) continue;
        if (best == n || std::abs(mcols[j][r]) < std::abs(mcols[best][r])) best = j;
      }
      if (best == n) break;
      std::swap(mcols[pivot], mcols[best]);
      std::swap(ucols[pivot], ucols[best]);
      bool done = true;
      for (std::size_t j = pivot + 1; j < n; ++j) {
        if (mcols[j][r] == 0) continue;
        const Int q = mcols[j][r] / mcols[pivot][r];
        axpy(mcols[j], q, mcols[pivot]);
        axpy(ucols[j], q, ucols[pivot]);
        if (mcols[j][r] != 0) done = false;
      }
      if (done) {
        ++pivot;
        break;
      }
    }
  }
  return {ucols.begin() + static_cast<std::ptrdiff_t>(pivot), ucols.end()};
}

std::size_t rank(const IntMatrix& a) {
  if (a.empty()) return 0;
  std::vector<IntVec> rows;
  for (std::size_t r = 0; r < a.rows(); ++r) rows.emplace_back(a.row(r).begin(), a.row(r).end());
  std::size_t rk = 0;
  for (std::size_t c = 0; c < a.cols() && rk < rows.size(); ++c) {
    std::size_t p = rk;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rk], rows[p]);
    for (std::size_t r = rk + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Int f = rows[r][c];
      const Int g = rows[rk][c];
      Int content = 0;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        rows[r][j] = checked_sub(checked_mul(g, rows[r][j]), checked_mul(f, rows[rk][j]));
        content = std::gcd(content, rows[r][j]);
      }
      if (content > 1) {
        for (auto& x : rows[r]) x /= content;
      }
    }
    ++rk;
  }
  return rk;
}

// ---------------------------------------------------------------------------
// Interval propagation on A x = b.

namespace {

__extension__ using Wide = __int128;
constexpr Int kInf = std::numeric_limits<Int>::max();

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide ceil_div(Wide a, Wide b) { return -floor_div(-a, b); }

struct SparseSystem {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::size_t, Int>>> rows;  // nonzeros per row
  std::vector<Int> rhs;
  std::vector<std::vector<std::size_t>> rows_of_var;
  bool trivially_infeasible = false;

  SparseSystem(const IntMatrix& a, std::span<const Int> b) : n(a.cols()) {
    if (b.size() != a.rows()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "rhs has length " + std::to_string(b.size()) + ", matrix has " +
                      std::to_string(a.rows()) + " rows");
    }
    rows_of_var.resize(n);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      std::vector<std::pair<std::size_t, Int>> nz;
      for (std::size_t c = 0; c < n; ++c) {
        if (a(r, c) != 0) nz.emplace_back(c, a(r, c));
      }
      if (nz.empty()) {
        if (b[r] != 0) trivially_infeasible = true;
        continue;
      }
      for (const auto& [c, v] : nz) rows_of_var[c].push_back(rows.size());
      rows.push_back(std::move(nz));
      rhs.push_back(b[r]);
    }
  }
};

// Lower bounds are always finite; upper bounds may be kInf.
class Propagator {
 public:
  explicit Propagator(const SparseSystem& sys) : sys_(sys), queued_(sys.rows.size(), 0) {}

  // Tightens [lo, hi] in place. Returns false when infeasibility is proven.
  bool run(IntVec& lo, IntVec& hi, const std::vector<std::size_t>& seed_rows,
           std::size_t max_row_visits) {
    std::vector<std::size_t> queue;
    for (std::size_t r : seed_rows) {
      if (!queued_[r]) {
        queued_[r] = 1;
        queue.push_back(r);
      }
    }
    std::size_t head = 0;
    std::size_t visits = 0;
    bool feasible = true;
    while (head < queue.size()) {
      const std::size_t r = queue[head++];
      queued_[r] = 0;
      if (!feasible || ++visits > max_row_visits) continue;
      if (!tighten_row(r, lo, hi, queue)) feasible = false;
    }
    for (std::size_t i = head; i < queue.size(); ++i) queued_[queue[i]] = 0;
    return feasible;
  }

 private:
  bool tighten_row(std::size_t r, IntVec& lo, IntVec& hi, std::vector<std::size_t>& queue) {
    const auto& nz = sys_.rows[r];
    Wide min_fin = 0, max_fin = 0;
    int min_inf = 0, max_inf = 0;
    auto contrib = [&](std::size_t c, Int a, Wide& mn, bool& mn_inf, Wide& mx, bool& mx_inf) {
      mn_inf = mx_inf = false;
      if (a > 0) {
        mn = Wide(a) * lo[c];
        if (hi[c] == kInf) mx_inf = true; else mx = Wide(a) * hi[c];
      } else {
        mx = Wide(a) * lo[c];
        if (hi[c] == kInf) mn_inf = true; else mn = Wide(a) * hi[c];
      }
    };
    for (const auto& [c, a] : nz) {
      Wide mn = 0, mx = 0;
      bool mn_inf, mx_inf;
      contrib(c, a, mn, mn_inf, mx, mx_inf);
      if (mn_inf) ++min_inf; else min_fin += mn;
      if (mx_inf) ++max_inf; else max_fin += mx;
    }
    const Wide b = sys_.rhs[r];
    if (min_inf == 0 && min_fin > b) return false;
    if (max_inf == 0 && max_fin < b) return false;

    for (const auto& [c, a] : nz) {
      Wide mn = 0, mx = 0;
      bool mn_inf, mx_inf;
      contrib(c, a, mn, mn_inf, mx, mx_inf);
      const int other_min_inf = min_inf - (mn_inf ? 1 : 0);
      const int other_max_inf = max_inf - (mx_inf ? 1 : 0);
      const bool upper_ok = other_min_inf == 0;  // a*x <= b - min(others)
      const bool lower_ok = other_max_inf == 0;  // a*x >= b - max(others)
      const Wide upper = upper_ok ? b - (min_fin - (mn_inf ? 0 : mn)) : 0;
      const Wide lower = lower_ok ? b - (max_fin - (mx_inf ? 0 : mx)) : 0;
      Wide new_lo = lo[c];
      Wide new_hi = hi[c] == kInf ? Wide(kInf) : Wide(hi[c]);
      if (a > 0) {
        if (upper_ok) new_hi = std::min(new_hi, floor_div(upper, a));
        if (lower_ok) new_lo = std::max(new_lo, ceil_div(lower, a));
      } else {
        if (upper_ok) new_lo = std::max(new_lo, ceil_div(upper, a));
        if (lower_ok) new_hi = std::min(new_hi, floor_div(lower, a));
      }
      if (new_lo > new_hi) return false;
      bool changed = false;
      if (new_lo > lo[c]) {
        if (new_lo >= Wide(kInf)) throw Error(ErrorCode::Overflow, "bound propagation");
        lo[c] = static_cast<Int>(new_lo);
        changed = true;
      }
      const Int cur_hi = hi[c];
      if (cur_hi == kInf ? new_hi < Wide(kInf) / 4 : new_hi < cur_hi) {
        hi[c] = static_cast<Int>(new_hi);
        changed = true;
      }
      if (changed) {
        for (std::size_t rr : sys_.rows_of_var[c]) {
          if (rr != r && !queued_[rr]) {
            queued_[rr] = 1;
            queue.push_back(rr);
          }
        }
      }
    }
    return true;
  }

  const SparseSystem& sys_;
  std::vector<char> queued_;
};

std::vector<std::size_t> all_rows(const SparseSystem& sys) {
  std::vector<std::size_t> r(sys.rows.size());
  std::iota(r.begin(), r.end(), 0);
  return r;
}

constexpr std::size_t kRootVisitsPerRow = 2000;

// Returns nullopt when the system is proven infeasible.
std::optional<std::pair<IntVec, IntVec>> root_bounds(const SparseSystem& sys, IntVec lo, IntVec hi) {
  if (sys.trivially_infeasible) return std::nullopt;
  Propagator prop(sys);
  if (!prop.run(lo, hi, all_rows(sys), kRootVisitsPerRow * (sys.rows.size() + 1))) {
    return std::nullopt;
  }
  return std::make_pair(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin over Q on {coef . x >= rhs}.

constexpr std::size_t kMaxHistory = 512;

struct Constraint {
  IntVec coef;
  Int rhs = 0;
  std::bitset<kMaxHistory> history;
};

void normalize(Constraint& c) {
  Int g = std::abs(c.rhs);
  for (Int x : c.coef) g = std::gcd(g, x);
  if (g > 1) {
    for (auto& x : c.coef) x /= g;
    c.rhs /= g;
  }
}

// Combination p*x + q*y with p, q > 0 for inequalities.
Constraint combine(Int p, const Constraint& x, Int q, const Constraint& y) {
  Constraint out;
  out.coef.resize(x.coef.size());
  for (std::size_t i = 0; i < x.coef.size(); ++i) {
    out.coef[i] = checked_add(checked_mul(p, x.coef[i]), checked_mul(q, y.coef[i]));
  }
  out.rhs = checked_add(checked_mul(p, x.rhs), checked_mul(q, y.rhs));
  out.history = x.history | y.history;
  normalize(out);
  return out;
}

constexpr std::size_t kMaxFmConstraints = 200'000;

// Returns true if {eqs as equalities, ineqs} has a rational solution.
bool fm_feasible(std::vector<Constraint> eqs, std::vector<Constraint> ineqs, std::size_t n) {
  // Substitute equalities first.
  while (!eqs.empty()) {
    Constraint e = std::move(eqs.back());
    eqs.pop_back();
    normalize(e);
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (e.coef[i] != 0 && (p == n || std::abs(e.coef[i]) < std::abs(e.coef[p]))) p = i;
    }
    if (p == n) {
      if (e.rhs != 0) return false;
      continue;
    }
    const Int ap = e.coef[p];
    for (auto& other : eqs) {
      if (other.coef[p] == 0) continue;
      other = combine(ap, other, checked_neg(other.coef[p]), e);
    }
    const Int sign = ap > 0 ? 1 : -1;
    for (auto& other : ineqs) {
      if (other.coef[p] == 0) continue;
      const auto hist = other.history;
      other = combine(std::abs(ap), other, checked_neg(checked_mul(sign, other.coef[p])), e);
      other.history = hist;
    }
  }

  std::size_t eliminated = 0;
  while (true) {
    std::vector<Constraint> live;
    for (auto& c : ineqs) {
      if (is_zero(c.coef)) {
        if (c.rhs > 0) return false;
      } else {
        live.push_back(std::move(c));
      }
    }
    ineqs = std::move(live);
    if (ineqs.empty()) return true;

    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t pos = 0, neg = 0;
      for (const auto& c : ineqs) {
        if (c.coef[i] > 0) ++pos;
        if (c.coef[i] < 0) ++neg;
      }
      if (pos + neg == 0) continue;
      const std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    ++eliminated;
    std::vector<Constraint> pos, neg, next;
    for (auto& c : ineqs) {
      if (c.coef[best] > 0) pos.push_back(std::move(c));
      else if (c.coef[best] < 0) neg.push_back(std::move(c));
      else next.push_back(std::move(c));
    }
    std::set<std::pair<IntVec, Int>> seen;
    for (const auto& c : next) seen.emplace(c.coef, c.rhs);
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        auto hist = p.history | q.history;
        if (hist.count() > eliminated + 1) continue;  // Chernikov: redundant
        Constraint c = combine(checked_neg(q.coef[best]), p, p.coef[best], q);
        if (!seen.emplace(c.coef, c.rhs).second) continue;
        next.push_back(std::move(c));
        if (next.size() > kMaxFmConstraints) {
          throw Error(ErrorCode::SizeBudgetExceeded, "Fourier-Motzkin constraint budget exceeded");
        }
      }
    }
    ineqs = std::move(next);
  }
}

}  // namespace

bool is_pointed(const IntMatrix& a) {
  if (a.empty()) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  const std::size_t n = a.cols();
  const std::size_t d = a.rows();

  // Fast certificate: a row whose entries are all nonzero of one sign.
  // (Integer bound propagation is not a valid shortcut here: sum x = 1 can be
  // integer-infeasible while a rational ray exists.)
  for (std::size_t r = 0; r < d; ++r) {
    const auto row = a.row(r);
    if (std::all_of(row.begin(), row.end(), [](Int v) { return v > 0; }) ||
        std::all_of(row.begin(), row.end(), [](Int v) { return v < 0; })) {
      return true;
    }
  }

  if (n > kMaxHistory) throw Error(ErrorCode::SizeBudgetExceeded, "too many columns for Fourier-Motzkin");
  std::vector<Constraint> eqs;
  for (std::size_t r = 0; r < d; ++r) {
    eqs.push_back({IntVec(a.row(r).begin(), a.row(r).end()), 0, {}});
  }
  eqs.push_back({IntVec(n, 1), 1, {}});
  std::vector<Constraint> ineqs;
  for (std::size_t i = 0; i < n; ++i) {
    Constraint c{IntVec(n, 0), 0, {}};
    c.coef[i] = 1;
    c.history.set(i);
    ineqs.push_back(std::move(c));
  }
  return !fm_feasible(std::move(eqs), std::move(ineqs), n);
}

// ---------------------------------------------------------------------------
// Bounded enumeration

void for_each_box_solution(const IntMatrix& a, std::span<const Int> b, IntVec lower, IntVec upper,
                           const std::function<bool(const IntVec&)>& visit, std::size_t max_nodes) {
  const std::size_t n = a.cols();
  if (lower.size() != n || upper.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "bound vectors must match the column count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (upper[i] == kInf) throw Error(ErrorCode::UnboundedSearch, "coordinate " + std::to_string(i));
  }
  SparseSystem sys(a, b);
  auto root = root_bounds(sys, std::move(lower), std::move(upper));
  if (!root) return;

  Propagator prop(sys);
  std::size_t nodes = 0;
  bool stop = false;
  IntVec point(n);

  // Depth-first over coordinates, values ascending: lexicographic output.
  std::function<void(std::size_t, const IntVec&, const IntVec&)> dfs =
      [&](std::size_t i, const IntVec& lo, const IntVec& hi) {
        if (stop) return;
        if (i == n) {
          if (a.apply(point) == IntVec(b.begin(), b.end())) {
            if (!visit(point)) stop = true;
          }
          return;
        }
        for (Int v = lo[i]; v <= hi[i] && !stop; ++v) {
          if (++nodes > max_nodes) {
            throw Error(ErrorCode::BoxTooLarge,
                        "search exceeded " + std::to_string(max_nodes) + " nodes");
          }
          IntVec clo = lo, chi = hi;
          clo[i] = chi[i] = v;
          if (!prop.run(clo, chi, sys.rows_of_var[i], 64 * (sys.rows.size() + 1))) continue;
          point[i] = v;
          dfs(i + 1, clo, chi);
        }
      };
  dfs(0, root->first, root->second);
}

// ---------------------------------------------------------------------------
// Fibers

Fiber::Fiber(IntMatrix matrix, IntVec rhs, std::vector<IntVec> points)
    : matrix_(std::move(matrix)), rhs_(std::move(rhs)), points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i > 0 && points_[i] == points_[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "duplicate fiber point " + to_string(points_[i]));
    }
    if (!is_nonnegative(points_[i]) || matrix_.apply(points_[i]) != rhs_) {
      throw Error(ErrorCode::InvalidArgument, "point " + to_string(points_[i]) + " not in fiber");
    }
  }
}

std::optional<std::size_t> Fiber::index_of(std::span<const Int> p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p, [](const IntVec& x, std::span<const Int> y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  if (it == points_.end() || !std::equal(it->begin(), it->end(), p.begin(), p.end())) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

std::optional<IntVec> fiber_bounds(const IntMatrix& a, std::span<const Int> b) {
  SparseSystem sys(a, b);
  auto root = root_bounds(sys, IntVec(a.cols(), 0), IntVec(a.cols(), kInf));
  if (!root) return std::nullopt;
  for (std::size_t i = 0; i < a.cols(); ++i) {
    if (root->second[i] == kInf) {
      throw Error(ErrorCode::UnboundedSearch,
                  "propagation cannot bound coordinate " + std::to_string(i));
    }
  }
  return root->second;
}

Fiber enumerate_fiber(const IntMatrix& a, const IntVec& b, const EnumerationOptions& options) {
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "rhs length " + std::to_string(b.size()) +
                                                  " does not match " + std::to_string(a.rows()) +
                                                  " rows");
  }
  if (options.check_pointed && !is_pointed(a)) {
    throw Error(ErrorCode::PointednessViolated, "ker(A) contains a nonzero nonnegative vector");
  }
  auto upper = fiber_bounds(a, b);
  if (!upper) return Fiber(a, b, {});
  std::vector<IntVec> points;
  for_each_box_solution(a, b, IntVec(a.cols(), 0), std::move(*upper), [&](const IntVec& p) {
    if (points.size() >= options.max_points) {
      throw Error(ErrorCode::SizeBudgetExceeded,
                  "fiber exceeds " + std::to_string(options.max_points) + " points");
    }
    points.push_back(p);
    return true;
  });
  return Fiber(a, b, std::move(points));
}

}  // namespace fibers
