#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pam/fock.hpp"
#include "pam/graph.hpp"
#include "pam/hamiltonian.hpp"
#include "pam/phonon.hpp"
#include "pam/spectral.hpp"

namespace pam {

// A vector on M0 (x) phonons is read fiberwise: for each position-frame node q,
// M_q[i][j] = coefficient of |i> (x) theta|j> (x) |q>.
struct ConeGeometry {
  int D;                  // one-species dimension
  long ph_dim;
  Eigen::MatrixXd frame;  // full position frame, columns = nodes
};

ConeGeometry cone_geometry(const SectorBasis& basis, const PhononSpace& ph);

std::vector<Mat> fibers(const Vec& phi, const ConeGeometry& g);

struct ConeCheck {
  bool member = true;
  double worst_eigenvalue = 0;  // min over fibers of the smallest eigenvalue of the Hermitian part
  double hermiticity = 0;       // max over fibers of |M - M^dag|
};

// member iff every fiber is Hermitian within tol and its eigenvalues are >= -tol
ConeCheck cone_membership(const Vec& phi, const ConeGeometry& g, double tol = 1e-8);

// G^dag G with G of shape rank x D, tensored with a nonnegative frame vector
Vec sample_cone_element(std::mt19937_64& rng, int rank, const ConeGeometry& g);

struct SemigroupReport {
  double beta = 0;
  int n_samples = 0;
  int n_fail = 0;
  double worst_eigenvalue = 0;
  double worst_hermiticity = 0;
  std::vector<double> per_sample;
  bool pass() const { return n_fail == 0; }
};

SemigroupReport semigroup_positivity_check(const SpMat& H, double beta, int n_samples, double tol,
                                           const ConeGeometry& g, std::uint64_t seed, int rank = 0);
SemigroupReport semigroup_positivity_check(const DenseSemigroup& sg, double beta, int n_samples, double tol,
                                           const ConeGeometry& g, std::uint64_t seed, int rank = 0);

// H with the spin-up hybridisation sign reversed: breaks the spin-reflection structure
SpMat negative_control_hamiltonian(const HamiltonianSet& hs, const ElectronSpace& space, const PhononSpace& ph,
                                   const ModelParams& p);

// <F,F;f| e^{-beta H} |F,F;g>, f and g given as nonnegative frame vectors
double ergodicity_witness(const SpMat& H, const Eigen::VectorXd& f_frame, const Eigen::VectorXd& g_frame,
                          double beta, const SectorBasis& basis, const ConeGeometry& geo);

// truncated phonon vacuum in frame coordinates
Eigen::VectorXd vacuum_frame(const ConeGeometry& g);

// P e^{-beta H0} Q e^{-beta H0} P on M0 (x) phonons
Mat F_beta(const Config& X, double beta, const DenseSemigroup& H0, const ElectronSpace& space,
           const PhononSpace& ph);

struct AsymptoticsReport {
  Config X;
  int exponent = 0;  // 4 |X|_sym
  std::vector<double> betas, residuals, ratios;
  double fitted_order = 0;  // slope of log residual vs log beta
  bool pass = false;
  bool outside_assumptions = false;  // V == 0
};

AsymptoticsReport asymptotic_check(const Config& X, const std::vector<double>& betas, const DenseSemigroup& H0,
                                   const ElectronSpace& space, const PhononSpace& ph, double V,
                                   double min_ratio = 1.5);

struct PathProductReport {
  std::vector<double> betas;
  int exponent = 0;                  // 2n + 2 for a path X_0..X_{n+1}
  std::vector<double> c;             // <F,F; phi | normalised output>
  std::vector<double> off_residual;  // norm of the electron components other than |F,F>
  std::vector<double> phonon_error;  // || phonon part / c - phi ||
  bool pass = false;
};

// path runs from F to X; applies beta^{-(2n+2)} E_beta(p) to |X,X> (x) phi
PathProductReport path_product_check(const ConfigPath& path, const Lattice& lat, const std::vector<double>& betas,
                                     const Vec& phi_number_basis, const DenseSemigroup& H0,
                                     const ElectronSpace& space, const SectorBasis& basis, const PhononSpace& ph,
                                     double off_tol = 1e-6);

struct DominantResult {
  Config X;
  double identity_residual = 0;  // || E_X phi - |X,X> (x) phi_XX ||
};

// throws std::logic_error when every diagonal fiber vanishes
DominantResult dominant_config(const Vec& phi, const ElectronSpace& space, const SectorBasis& basis,
                               const PhononSpace& ph);

}  // namespace pam
