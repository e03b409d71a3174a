#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pam/fock.hpp"
#include "pam/lattice.hpp"

namespace pam {

struct SolverOptions {
  int n_eigs = 3;
  long dense_max = 5000;
  std::uint64_t seed = 20240601;
  int krylov_dim = 160;
  int max_restarts = 60;
  double tol = 1e-10;  // relative: residual <= tol * ||H||_max * dim
  bool force_lanczos = false;
  bool force_dense = false;
};

template <class S>
struct EigenPairs {
  std::vector<double> values;
  DenseT<S> vectors;  // columns
  std::string solver;
  int iterations = 0;
  int restarts = 0;
  double residual = 0;  // max over returned pairs of ||H v - e v||
  bool converged = true;
};

template <class S>
EigenPairs<S> dense_lowest(const SparseT<S>& H, int k);

// Lanczos with full reorthogonalisation, explicit restarts and locking of converged vectors.
template <class S>
EigenPairs<S> lanczos_lowest(const SparseT<S>& H, const SolverOptions& opt);

struct GroundStateResult {
  double E0 = 0, E1 = 0, gap = 0;
  std::vector<double> lowest;
  Vec psi;
  bool unique = false;
  std::string solver;
  int iterations = 0, restarts = 0;
  double residual = 0;
  bool converged = true;
  std::uint64_t seed = 0;
  long dim = 0;
};

// Picks a real solver when H is real; dense below opt.dense_max unless forced.
GroundStateResult ground_state(const SpMat& H, const SolverOptions& opt = {});

// "unique" iff gap > 1e-6 * max(1, |E0|)
bool gap_is_unique(double E0, double gap);

struct SpinResult {
  double S = 0;
  double expectation = 0;  // <S^2>
  double residual = 0;     // ||(S^2 - S(S+1)) psi||
  bool eigenvector = true;
};

// psi lives on the electron space (x) phonons with phonon dimension ph_dim
SpinResult total_spin_of(const Vec& psi, const SpMat& S2, long ph_dim = 1, double tol = 1e-8);

// <psi|(A (x) 1)|psi> without forming the Kronecker product
cplx electron_expectation(const Vec& psi, const SpMat& A, long ph_dim);

struct CorrelatorRow {
  int x, y;
  std::string species;  // dd, ff, df, fd
  std::string sign;     // "+-" or "-+"
  double value;         // g_x g_y <S^(s1)_x S^(s2)_y>
  double imag;
  bool positive;
};

struct CorrelatorTable {
  std::vector<CorrelatorRow> rows;
  bool all_positive() const;
  double min_value() const;
  std::string to_csv() const;
};

CorrelatorTable correlator_table(const Vec& psi, const ElectronSpace& space, const Lattice& lat, long ph_dim,
                                 double margin = 1e-10);

// e^{-beta H} v: spectral decomposition below dense_max, Lanczos propagation above
Vec expm_action(const SpMat& H, const Vec& v, double beta, long dense_max = 5000);
Vec krylov_expm_action(const SpMat& H, const Vec& v, double beta, double tol = 1e-13);

// Cached dense spectral decomposition for repeated semigroup actions.
class DenseSemigroup {
 public:
  explicit DenseSemigroup(const SpMat& H);
  Vec apply(const Vec& v, double beta) const;
  Mat matrix(double beta) const;
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Mat& eigenvectors() const { return evecs_; }

 private:
  Eigen::VectorXd evals_;
  Mat evecs_;
};

}  // namespace pam
