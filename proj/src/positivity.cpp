#include "pam/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pam/operators.hpp"

namespace pam {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

long electron_dim(const ConeGeometry& g) { return long(g.D) * g.D; }

void check_dim(const Vec& phi, const ConeGeometry& g) {
  if (phi.size() != electron_dim(g) * g.ph_dim) throw std::invalid_argument("cone vector has the wrong dimension");
}

// rows: electron pair index, columns: phonon index
Eigen::Map<const RowMat> as_rows(const Vec& phi, const ConeGeometry& g) {
  return Eigen::Map<const RowMat>(phi.data(), electron_dim(g), g.ph_dim);
}

Vec number_from_frame(const Eigen::VectorXd& w, const ConeGeometry& g) {
  return (g.frame * w).cast<cplx>();
}

SpMat embedded_EE(const Config& X, const ElectronSpace& space, const PhononSpace& ph) {
  return embed_electron(projector(ProjKind::EE, X, space), ph);
}

}  // namespace

ConeGeometry cone_geometry(const SectorBasis& basis, const PhononSpace& ph) {
  return {basis.dim(), ph.dim(), position_frame(ph).full()};
}

std::vector<Mat> fibers(const Vec& phi, const ConeGeometry& g) {
  check_dim(phi, g);
  RowMat inframe = as_rows(phi, g) * g.frame.cast<cplx>();
  std::vector<Mat> out;
  out.reserve(g.frame.cols());
  for (Eigen::Index q = 0; q < g.frame.cols(); ++q) {
    Vec col = inframe.col(q);
    out.push_back(matricize<cplx>(col, g.D));
  }
  return out;
}

ConeCheck cone_membership(const Vec& phi, const ConeGeometry& g, double tol) {
  ConeCheck c;
  c.worst_eigenvalue = std::numeric_limits<double>::infinity();
  for (const Mat& M : fibers(phi, g)) {
    // floating-point floor: a PSD matrix assembled in double can show eigenvalues of order eps * |M|
    const double floor = 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, double(g.D)) * M.norm();
    const double h = (M - M.adjoint()).cwiseAbs().maxCoeff();
    c.hermiticity = std::max(c.hermiticity, h);
    Mat herm = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    c.worst_eigenvalue = std::min(c.worst_eigenvalue, lo);
    if (h > tol + floor || lo < -tol - floor) c.member = false;
  }
  return c;
}

Vec sample_cone_element(std::mt19937_64& rng, int rank, const ConeGeometry& g) {
  const int r = rank <= 0 ? g.D : rank;
  std::normal_distribution<double> nd;
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Mat G(r, g.D);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < g.D; ++j) {
      double re = nd(rng);
      G(i, j) = cplx(re, nd(rng));
    }
  Mat M = G.adjoint() * G;
  M /= M.norm();
  Eigen::VectorXd w(g.frame.cols());
  for (Eigen::Index q = 0; q < w.size(); ++q) w[q] = ud(rng);
  w /= w.norm();
  Vec e = unmatricize<cplx>(M);
  Vec ph = number_from_frame(w, g);
  Vec out(e.size() * ph.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) out.segment(i * ph.size(), ph.size()) = e[i] * ph;
  return out;
}

namespace {

template <class Apply>
SemigroupReport run_semigroup(Apply&& apply, double beta, int n_samples, double tol, const ConeGeometry& g,
                              std::uint64_t seed, int rank) {
  SemigroupReport r;
  r.beta = beta;
  r.n_samples = n_samples;
  r.worst_eigenvalue = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  for (int k = 0; k < n_samples; ++k) {
    Vec u = sample_cone_element(rng, rank, g);
    Vec out = beta == 0 ? u : apply(u);
    auto c = cone_membership(out, g, tol);
    r.per_sample.push_back(c.worst_eigenvalue);
    r.worst_eigenvalue = std::min(r.worst_eigenvalue, c.worst_eigenvalue);
    r.worst_hermiticity = std::max(r.worst_hermiticity, c.hermiticity);
    if (!c.member) ++r.n_fail;
  }
  if (n_samples == 0) r.worst_eigenvalue = 0;
  return r;
}

}  // namespace

SemigroupReport semigroup_positivity_check(const DenseSemigroup& sg, double beta, int n_samples, double tol,
                                           const ConeGeometry& g, std::uint64_t seed, int rank) {
  return run_semigroup([&](const Vec& u) { return sg.apply(u, beta); }, beta, n_samples, tol, g, seed, rank);
}

SemigroupReport semigroup_positivity_check(const SpMat& H, double beta, int n_samples, double tol,
                                           const ConeGeometry& g, std::uint64_t seed, int rank) {
  if (beta == 0)
    return run_semigroup([](const Vec& u) { return u; }, beta, n_samples, tol, g, seed, rank);
  if (H.rows() <= 5000) return semigroup_positivity_check(DenseSemigroup(H), beta, n_samples, tol, g, seed, rank);
  return run_semigroup([&](const Vec& u) { return krylov_expm_action(H, u, beta); }, beta, n_samples, tol, g, seed,
                       rank);
}

SpMat negative_control_hamiltonian(const HamiltonianSet& hs, const ElectronSpace& space, const PhononSpace& ph,
                                   const ModelParams& p) {
  if (p.model == Model::PAM) throw std::invalid_argument("negative control needs a coupled model");
  const int up_sign = p.model == Model::d_coupled ? +1 : -1;
  return hs.H - 2.0 * hybrid_block(space, ph, Spin::up, up_sign, p.V, p.g, p.w0);
}

Eigen::VectorXd vacuum_frame(const ConeGeometry& g) { return g.frame.row(0).transpose(); }

double ergodicity_witness(const SpMat& H, const Eigen::VectorXd& f_frame, const Eigen::VectorXd& g_frame,
                          double beta, const SectorBasis& basis, const ConeGeometry& geo) {
  const int n = basis.n_sites();
  const long at = long(pair_index(basis, full_f(n), full_f(n))) * geo.ph_dim;
  Vec v = Vec::Zero(H.rows());
  v.segment(at, geo.ph_dim) = number_from_frame(g_frame, geo);
  Vec out = beta == 0 ? v : expm_action(H, v, beta);
  return number_from_frame(f_frame, geo).dot(out.segment(at, geo.ph_dim)).real();
}

Mat F_beta(const Config& X, double beta, const DenseSemigroup& H0, const ElectronSpace& space,
           const PhononSpace& ph) {
  Mat P(embed_electron(projector(ProjKind::P, X, space), ph));
  Mat Q(embed_electron(projector(ProjKind::Q, X, space), ph));
  Mat S = H0.matrix(beta);
  return P * S * Q * S * P;
}

AsymptoticsReport asymptotic_check(const Config& X, const std::vector<double>& betas, const DenseSemigroup& H0,
                                   const ElectronSpace& space, const PhononSpace& ph, double V, double min_ratio) {
  if (betas.size() < 3) throw std::invalid_argument("asymptotic_check: need at least three beta values");
  for (std::size_t i = 0; i < betas.size(); ++i)
    if (betas[i] <= 0 || (i > 0 && betas[i] >= betas[i - 1]))
      throw std::invalid_argument("asymptotic_check: beta schedule must be positive and decreasing");
  AsymptoticsReport r;
  r.X = X;
  r.exponent = 4 * sym_diff(X);
  r.betas = betas;
  r.outside_assumptions = V == 0.0;
  Mat E(embedded_EE(X, space, ph));
  const double lead = std::pow(V, r.exponent);
  for (double b : betas) {
    Mat F = F_beta(X, b, H0, space, ph) / std::pow(b, r.exponent);
    r.residuals.push_back((F - lead * E).cwiseAbs().maxCoeff());
  }
  for (std::size_t i = 1; i < r.residuals.size(); ++i)
    r.ratios.push_back(r.residuals[i] > 0 ? r.residuals[i - 1] / r.residuals[i]
                                          : std::numeric_limits<double>::infinity());
  // least-squares slope of log residual against log beta
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    if (r.residuals[i] <= 0) continue;
    double x = std::log(betas[i]), y = std::log(r.residuals[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++m;
  }
  if (m >= 2) r.fitted_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  r.pass = !r.outside_assumptions && r.ratios.back() >= min_ratio;
  return r;
}

PathProductReport path_product_check(const ConfigPath& path, const Lattice& lat, const std::vector<double>& betas,
                                     const Vec& phi_number_basis, const DenseSemigroup& H0,
                                     const ElectronSpace& space, const SectorBasis& basis, const PhononSpace& ph,
                                     double off_tol) {
  const int n = basis.n_sites();
  if (path.empty() || !(path.front() == full_f(n)) || !validate_path(path, lat).valid)
    throw std::invalid_argument("path_product_check: path must be valid and start at the full-f configuration");
  const long pd = ph.dim();
  if (phi_number_basis.size() != pd) throw std::invalid_argument("path_product_check: phonon vector dimension");
  PathProductReport r;
  r.betas = betas;
  r.exponent = 2 * int(path.size() - 1);
  std::vector<SpMat> E;
  for (const Config& X : path) E.push_back(embedded_EE(X, space, ph));
  const long ff = long(pair_index(basis, full_f(n), full_f(n))) * pd;
  const long xx = long(pair_index(basis, path.back(), path.back())) * pd;
  const double phi2 = phi_number_basis.squaredNorm();
  for (double b : betas) {
    Vec v = Vec::Zero(long(basis.dim()) * basis.dim() * pd);
    v.segment(xx, pd) = phi_number_basis;
    v = E.back() * v;
    for (int j = int(path.size()) - 2; j >= 0; --j) v = E[j] * H0.apply(v, b);
    v /= std::pow(b, r.exponent);
    Vec u = v.segment(ff, pd);
    const double c = phi_number_basis.dot(u).real() / phi2;
    Vec rest = v;
    rest.segment(ff, pd).setZero();
    r.c.push_back(c);
    r.off_residual.push_back(v.norm() > 0 ? rest.norm() / v.norm() : 0.0);
    r.phonon_error.push_back(c != 0 ? (u / c - phi_number_basis).norm() : std::numeric_limits<double>::infinity());
  }
  r.pass = !r.c.empty() && std::all_of(r.c.begin(), r.c.end(), [](double c) { return c > 0; }) &&
           r.off_residual.back() < off_tol;
  const std::size_t m = r.phonon_error.size();
  if (m >= 2) r.pass = r.pass && (r.phonon_error[m - 1] < r.phonon_error[m - 2] || r.phonon_error[m - 1] < 1e-12);
  return r;
}

DominantResult dominant_config(const Vec& phi, const ElectronSpace& space, const SectorBasis& basis,
                               const PhononSpace& ph) {
  const int n = basis.n_sites();
  const long pd = ph.dim();
  if (phi.size() != long(basis.dim()) * basis.dim() * pd) throw std::invalid_argument("dominant_config: dimension");
  const double thresh = 1e-12 * phi.norm();
  std::optional<Config> best;
  for (const Config& Z : enumerate_configs(n)) {
    const long at = long(pair_index(basis, Z, Z)) * pd;
    if (phi.segment(at, pd).norm() <= thresh || phi.norm() == 0) continue;
    if (!best || sym_diff(Z) > sym_diff(*best)) best = Z;
  }
  if (!best) throw std::logic_error("dominant_config: every diagonal fiber vanishes");
  DominantResult r;
  r.X = *best;
  const long at = long(pair_index(basis, r.X, r.X)) * pd;
  Vec expect = Vec::Zero(phi.size());
  expect.segment(at, pd) = phi.segment(at, pd);
  r.identity_residual = (embedded_EE(r.X, space, ph) * phi - expect).norm();
  return r;
}

}  // namespace pam
