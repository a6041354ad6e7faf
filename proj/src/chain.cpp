#include "fibers/chain.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "fibers/akfamily.hpp"
#include "fibers/moves.hpp"

namespace fibers {

namespace {

constexpr double kStochasticTol = 1e-12;

void validate(const TransitionMatrix::Sparse& p) {
  if (p.rows() != p.cols()) throw Error(ErrorCode::DimensionMismatch, "transition matrix must be square");
  if (p.rows() == 0) throw Error(ErrorCode::EmptyGraph, "empty transition matrix");
  for (Eigen::Index r = 0; r < p.outerSize(); ++r) {
    double sum = 0.0;
    for (TransitionMatrix::Sparse::InnerIterator it(p, r); it; ++it) {
      if (it.value() < 0.0) throw Error(ErrorCode::InvalidArgument, "negative transition probability");
      if (std::abs(it.value() - p.coeff(it.col(), r)) > kStochasticTol) {
        throw Error(ErrorCode::InvalidArgument, "transition matrix is not symmetric");
      }
      sum += it.value();
    }
    if (std::abs(sum - 1.0) > kStochasticTol) {
      throw Error(ErrorCode::InvalidArgument, "row " + std::to_string(r) + " does not sum to 1");
    }
  }
}

// Largest |eigenvalue| of P restricted to the orthogonal complement of 1.
// Lanczos with full reorthogonalization; stops once every Ritz value at the
// ends of the spectrum has residual below tol.
double lanczos_deflated(const TransitionMatrix::Sparse& p, double tol) {
  const Eigen::Index n = p.rows();
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  auto project = [&](Eigen::VectorXd& v) { v -= ones * ones.dot(v); };

  Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
  // Deterministic start vector with components in every direction.
  for (Eigen::Index i = 0; i < n; ++i) q[i] = std::sin(1.0 + 0.7 * static_cast<double>(i)) + 0.1;
  project(q);
  q.normalize();

  const Eigen::Index max_steps = n - 1;
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;
  double result = 0.0;
  for (Eigen::Index m = 0; m < max_steps; ++m) {
    basis.push_back(q);
    Eigen::VectorXd w = p * q;
    const double a = q.dot(w);
    alpha.push_back(a);
    w -= a * q;
    if (m > 0) w -= beta.back() * basis[basis.size() - 2];
    for (int pass = 0; pass < 2; ++pass) {
      project(w);
      for (const auto& b : basis) w -= b * b.dot(w);
    }
    const double bnext = w.norm();

    const Eigen::Index size = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < size) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    // Checking every step is wasteful; T is small relative to the basis work.
    if (size >= 2 && (size % 10 == 0 || bnext < tol || m + 1 == max_steps)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const auto& vals = es.eigenvalues();
      const auto& vecs = es.eigenvectors();
      const double lo_res = bnext * std::abs(vecs(size - 1, 0));
      const double hi_res = bnext * std::abs(vecs(size - 1, size - 1));
      const double lo = vals[0], hi = vals[size - 1];
      const double mu = std::max(std::abs(lo), std::abs(hi));
      // Only the end that attains the modulus needs to be converged, but the
      // other must be bounded away from it.
      const bool lo_ok = lo_res < tol || std::abs(lo) + lo_res < mu - tol;
      const bool hi_ok = hi_res < tol || std::abs(hi) + hi_res < mu - tol;
      result = mu;
      if ((lo_ok && hi_ok) || bnext < tol) return result;
    }
    if (bnext < tol) return result;
    beta.push_back(bnext);
    q = w / bnext;
  }
  return result;
}

}  // namespace

TransitionMatrix::TransitionMatrix(Sparse p) : p_(std::move(p)) {
  p_.makeCompressed();
  validate(p_);
}

TransitionMatrix TransitionMatrix::from_dense(const Eigen::MatrixXd& p) {
  return TransitionMatrix(Sparse(p.sparseView(0.0, 0.0)));
}

double TransitionMatrix::operator()(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw Error(ErrorCode::DimensionMismatch, "transition index out of range");
  return p_.coeff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

TransitionMatrix metropolis_matrix(const Graph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) throw Error(ErrorCode::EmptyGraph, "Metropolis chain on an empty graph");
  std::vector<Eigen::Triplet<double>> trips;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) == 0 && n > 1) {
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(v) + " has degree 0");
    }
    double off = 0.0;
    for (Vertex u : g.neighbors(v)) {
      const double pr = 1.0 / static_cast<double>(std::max(g.degree(v), g.degree(u)));
      trips.emplace_back(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u), pr);
      off += pr;
    }
    double stay = 1.0 - off;
    if (std::abs(stay) < kStochasticTol) stay = 0.0;
    if (stay != 0.0) trips.emplace_back(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v), stay);
  }
  TransitionMatrix::Sparse p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  p.setFromTriplets(trips.begin(), trips.end());
  TransitionMatrix out(std::move(p));
  const Eigen::VectorXd u = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
  if ((out.sparse() * u - u).cwiseAbs().maxCoeff() > kStochasticTol) {
    throw std::logic_error("uniform distribution is not stationary");
  }
  return out;
}

Eigen::VectorXd spectrum(const TransitionMatrix& p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p.dense(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return es.eigenvalues();
}

double slem(const TransitionMatrix& p, const SlemOptions& options) {
  const std::size_t n = p.size();
  if (n == 1) return 0.0;
  if (n <= options.dense_limit) {
    Eigen::VectorXd ev = spectrum(p).cwiseAbs();
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return std::min(1.0, ev[1]);
  }
  // Off-diagonal support gives the graph; a disconnected chain has μ = 1.
  std::vector<Edge> edges;
  const auto& s = p.sparse();
  for (Eigen::Index r = 0; r < s.outerSize(); ++r) {
    for (TransitionMatrix::Sparse::InnerIterator it(s, r); it; ++it) {
      if (it.col() > r) edges.push_back({static_cast<Vertex>(r), static_cast<Vertex>(it.col())});
    }
  }
  if (!is_connected(Graph(n, std::move(edges)))) return 1.0;
  return std::min(1.0, lanczos_deflated(s, options.tolerance));
}

double mixing_time(double mu) {
  if (mu <= 0.0) return 0.0;
  if (mu >= 1.0) return std::numeric_limits<double>::infinity();
  return -1.0 / std::log(mu);
}

double relaxation_time(double mu) {
  if (mu >= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - mu);
}

std::vector<double> tv_distances(const TransitionMatrix& p, std::size_t steps) {
  const Eigen::Index n = static_cast<Eigen::Index>(p.size());
  const double u = 1.0 / static_cast<double>(n);
  // Columns of Q are P^t e_i; symmetry lets us multiply from the left.
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> out;
  out.reserve(steps + 1);
  for (std::size_t t = 0;; ++t) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) worst = std::max(worst, 0.5 * (q.col(i).array() - u).abs().sum());
    if (!out.empty() && worst > out.back() + 1e-12) throw std::logic_error("TV distance increased");
    out.push_back(worst);
    if (t == steps) break;
    q = p.sparse() * q;
  }
  return out;
}

SpectralReport mixing_times(const TransitionMatrix& p, const std::vector<double>& epsilons,
                            const SlemOptions& slem_options, const TvOptions& tv_options) {
  SpectralReport r;
  r.states = p.size();
  r.slem = slem(p, slem_options);
  r.relaxation_time = relaxation_time(r.slem);
  r.alt_time = mixing_time(r.slem);
  r.mixing_time = r.alt_time;

  std::vector<double> eps = epsilons;
  std::sort(eps.begin(), eps.end(), std::greater<>());
  for (double e : eps) {
    if (!(e > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
    r.tv_mixing[e] = std::nullopt;
  }
  if (eps.empty()) return r;

  const double n = static_cast<double>(p.size());
  const double per_step = n * static_cast<double>(p.sparse().nonZeros()) + n * n;
  const std::size_t affordable =
      static_cast<std::size_t>(std::min(static_cast<double>(tv_options.max_steps), tv_options.max_work / per_step));
  const Eigen::Index dim = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(dim, dim);
  std::size_t next = 0;  // index into eps, largest first
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t <= affordable && next < eps.size(); ++t) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) worst = std::max(worst, 0.5 * (q.col(i).array() - 1.0 / n).abs().sum());
    if (worst > previous + 1e-12) throw std::logic_error("TV distance increased");
    previous = worst;
    while (next < eps.size() && worst <= eps[next]) r.tv_mixing[eps[next++]] = t;
    if (next < eps.size() && t < affordable) q = p.sparse() * q;
  }
  r.tv_truncated = next < eps.size();
  return r;
}

SweepRow sweep_row(int k, const IntVec& b, Int param, const SweepOptions& options) {
  const RhsDecomp d = decompose_rhs(b);
  const Fiber fiber = ak_fiber(d, AkOptions{options.max_vertices});
  SweepRow row;
  row.param = param;
  row.vertices = fiber.size();
  Graph graver;
  try {
    graver = build_graph(fiber, graver_Ak(k)).graph;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeBudgetExceeded) throw;
    graver = ak_graver_graph(k, fiber).graph;
  }
  const Graph lex = build_graph(fiber, groebner_lex_Ak(k)).graph;
  row.slem_graver = slem(metropolis_matrix(graver));
  row.slem_groebner = slem(metropolis_matrix(lex));
  row.time_graver = mixing_time(row.slem_graver);
  row.time_groebner = mixing_time(row.slem_groebner);
  return row;
}

namespace {

std::vector<SweepRow> run_sweep(std::size_t count, std::size_t jobs, const std::function<SweepRow(std::size_t)>& one) {
  std::vector<SweepRow> rows(count);
  std::vector<std::exception_ptr> errors(count);
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += jobs) {
        try {
          rows[i] = one(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> sweep_fig4(int kmax, const SweepOptions& options) {
  if (kmax < 1) throw Error(ErrorCode::InvalidArgument, "kmax must be >= 1");
  return run_sweep(static_cast<std::size_t>(kmax), options.jobs, [&](std::size_t i) {
    const int k = static_cast<int>(i) + 1;
    return sweep_row(k, ak_unit_rhs(k), k, options);
  });
}

std::vector<SweepRow> sweep_fig5(int lmax, const SweepOptions& options) {
  if (lmax < 1) throw Error(ErrorCode::InvalidArgument, "lmax must be >= 1");
  return run_sweep(static_cast<std::size_t>(lmax), options.jobs, [&](std::size_t i) {
    const Int lambda = static_cast<Int>(i) + 1;
    return sweep_row(3, ak_unit_rhs(3, lambda), lambda, options);
  });
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& param_name) {
  std::ostringstream os;
  os << param_name << ",vertices,slem_graver,slem_groebner,time_graver,time_groebner\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%lld,%zu,%.6g,%.6g,%.6g,%.6g\n", static_cast<long long>(r.param), r.vertices,
                  r.slem_graver, r.slem_groebner, r.time_graver, r.time_groebner);
    os << buf;
  }
  return os.str();
}

}  // namespace fibers
