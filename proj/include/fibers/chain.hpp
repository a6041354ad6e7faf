#pragma once

// Metropolis-Hastings walks targeting the uniform distribution on a graph:
// transition matrices, SLEM, mixing times and the parameter sweeps.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fibers/graph.hpp"
#include "fibers/lattice.hpp"

namespace fibers {

// Symmetric row-stochastic matrix stored sparsely (row-major).
class TransitionMatrix {
 public:
  using Sparse = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  TransitionMatrix() = default;
  // Validates symmetry and row sums to 1e-12.
  explicit TransitionMatrix(Sparse p);
  static TransitionMatrix from_dense(const Eigen::MatrixXd& p);

  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const;
  [[nodiscard]] const Sparse& sparse() const noexcept { return p_; }
  [[nodiscard]] Eigen::MatrixXd dense() const { return Eigen::MatrixXd(p_); }

 private:
  Sparse p_;
};

// p_ij = min(1/deg i, 1/deg j) on edges, remaining mass on the diagonal.
// Throws IsolatedVertex if some vertex has degree 0 (unless |V| = 1).
TransitionMatrix metropolis_matrix(const Graph& g);

struct SlemOptions {
  std::size_t dense_limit = 3000;
  double tolerance = 1e-10;
};

// Second largest eigenvalue modulus.
double slem(const TransitionMatrix& p, const SlemOptions& options = {});

// All eigenvalues, ascending (dense solve).
Eigen::VectorXd spectrum(const TransitionMatrix& p);

inline constexpr const char* kMixingDefinition = "inverse-log-slem";

// The pinned analytic mixing time, -1 / ln μ.
double mixing_time(double mu);
double relaxation_time(double mu);

struct TvOptions {
  std::size_t max_steps = 100'000;
  double max_work = 2e9;  // multiply-adds
};

struct SpectralReport {
  std::size_t states = 0;
  double slem = 0.0;
  double relaxation_time = 0.0;  // 1 / (1 - μ)
  double alt_time = 0.0;         // -1 / ln μ
  double mixing_time = 0.0;      // per definition_used
  std::string definition_used = kMixingDefinition;
  // Exact TV mixing steps per ε; nullopt when not reached within budget.
  std::map<double, std::optional<std::size_t>> tv_mixing;
  bool tv_truncated = false;
};

// max_i || P^t e_i - u ||_TV for t = 0, 1, ... up to `steps` (inclusive).
std::vector<double> tv_distances(const TransitionMatrix& p, std::size_t steps);

SpectralReport mixing_times(const TransitionMatrix& p, const std::vector<double>& epsilons,
                            const SlemOptions& slem_options = {}, const TvOptions& tv_options = {});

struct SweepOptions {
  std::size_t jobs = 1;
  std::size_t max_vertices = 20000;
};

struct SweepRow {
  Int param = 0;  // k for the A_k sweep, λ for the scaled-rhs sweep
  std::size_t vertices = 0;
  double slem_graver = 0.0;
  double slem_groebner = 0.0;
  double time_graver = 0.0;
  double time_groebner = 0.0;
};

// F(A_k, e_{2k+1}) for k = 1..kmax.
std::vector<SweepRow> sweep_fig4(int kmax, const SweepOptions& options = {});
// F(A_3, λ e_7) for λ = 1..lmax.
std::vector<SweepRow> sweep_fig5(int lmax, const SweepOptions& options = {});
// One row: graph built from the box decomposition of F(A_k, b).
SweepRow sweep_row(int k, const IntVec& b, Int param, const SweepOptions& options = {});

// CSV with %.6g values; header names the parameter column.
std::string sweep_csv(const std::vector<SweepRow>& rows, const std::string& param_name);

}  // namespace fibers
