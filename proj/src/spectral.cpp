#include "pam/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "pam/operators.hpp"

namespace pam {

namespace {

template <class S>
VecT<S> random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> nd;
  VecT<S> v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if constexpr (std::is_same_v<S, double>) v[i] = nd(rng);
    else {
      double re = nd(rng);
      v[i] = S(re, nd(rng));
    }
  }
  return v;
}

template <class S>
double real_dot(const VecT<S>& a, const VecT<S>& b) {
  return std::real(a.dot(b));
}

// Gram-Schmidt twice against the columns of Q (first k of them)
template <class S>
void orthogonalise(VecT<S>& w, const DenseT<S>& Q, Eigen::Index k) {
  if (k == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    VecT<S> c = Q.leftCols(k).adjoint() * w;
    w -= Q.leftCols(k) * c;
  }
}

template <class S>
double pair_residual(const SparseT<S>& H, const VecT<S>& v, double e) {
  return (H * v - e * v).norm();
}

// deterministic phase: largest-modulus component real and positive
template <class S>
void fix_phase(VecT<S>& v) {
  Eigen::Index k;
  v.cwiseAbs().maxCoeff(&k);
  if (std::abs(v[k]) == 0) return;
  v *= std::abs(v[k]) / v[k];
}

}  // namespace

template <class S>
EigenPairs<S> dense_lowest(const SparseT<S>& H, int k) {
  Eigen::SelfAdjointEigenSolver<DenseT<S>> es{DenseT<S>(H)};
  if (es.info() != Eigen::Success) throw std::runtime_error("dense_lowest: eigensolver failed");
  const int m = std::min<int>(k, int(H.rows()));
  EigenPairs<S> out;
  out.solver = "dense";
  out.vectors = es.eigenvectors().leftCols(m);
  for (int i = 0; i < m; ++i) {
    out.values.push_back(es.eigenvalues()[i]);
    VecT<S> v = out.vectors.col(i);
    fix_phase(v);
    out.vectors.col(i) = v;
    out.residual = std::max(out.residual, pair_residual(H, v, out.values.back()));
  }
  return out;
}

template <class S>
EigenPairs<S> lanczos_lowest(const SparseT<S>& H, const SolverOptions& opt) {
  const Eigen::Index n = H.rows();
  const int k = std::min<int>(opt.n_eigs, int(n));
  const double hnorm = std::max(1.0, max_abs(H));
  const double tol_abs = opt.tol * hnorm * std::sqrt(double(n));
  std::mt19937_64 rng(opt.seed);

  EigenPairs<S> out;
  out.solver = "lanczos";
  DenseT<S> locked(n, k);
  std::vector<double> locked_vals;
  VecT<S> v = random_vector<S>(rng, n);
  DenseT<S> last_ritz;
  std::vector<double> last_vals;

  for (int cycle = 0; cycle <= opt.max_restarts && int(locked_vals.size()) < k; ++cycle) {
    const Eigen::Index L = Eigen::Index(locked_vals.size());
    out.restarts = cycle;
    orthogonalise(v, locked, L);
    if (v.norm() < 1e-14) v = random_vector<S>(rng, n), orthogonalise(v, locked, L);
    v.normalize();
    const Eigen::Index m = std::min<Eigen::Index>(opt.krylov_dim, n - L);
    if (m <= 0) break;
    DenseT<S> V(n, m);
    std::vector<double> alpha, beta;
    V.col(0) = v;
    Eigen::Index used = m;
    double beta_last = 0;
    for (Eigen::Index j = 0; j < m; ++j) {
      VecT<S> w = H * V.col(j);
      ++out.iterations;
      alpha.push_back(real_dot<S>(V.col(j), w));
      orthogonalise(w, V, j + 1);
      orthogonalise(w, locked, L);
      double b = w.norm();
      beta_last = b;
      if (j + 1 == m) break;
      if (b < 1e-12 * hnorm) {  // invariant subspace
        used = j + 1;
        beta_last = 0;
        break;
      }
      beta.push_back(b);
      V.col(j + 1) = w / b;
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
    for (Eigen::Index i = 0; i < used; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < used) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::MatrixXd& s = es.eigenvectors();
    const int want = k - int(L);
    last_vals.clear();
    last_ritz.resize(n, std::min<Eigen::Index>(want, used));
    int i = 0;
    bool locked_now = false;
    for (; i < want && i < used; ++i) {
      VecT<S> y = V.leftCols(used) * s.col(i).cast<S>();
      y.normalize();
      last_ritz.col(i) = y;
      last_vals.push_back(es.eigenvalues()[i]);
      double est = std::abs(beta_last * s(used - 1, i));
      if (est > tol_abs || pair_residual(H, y, es.eigenvalues()[i]) > tol_abs) break;
      locked.col(L + i) = y;
      locked_vals.push_back(es.eigenvalues()[i]);
      locked_now = true;
    }
    for (int r = i + 1; r < want && r < used; ++r) {
      VecT<S> y = V.leftCols(used) * s.col(r).cast<S>();
      last_ritz.col(r) = y.normalized();
      last_vals.push_back(es.eigenvalues()[r]);
    }
    if (int(locked_vals.size()) >= k) break;
    // restart from the lowest unconverged Ritz vector; a small random kick lets degenerate partners appear
    v = (i < used) ? VecT<S>(last_ritz.col(i)) : random_vector<S>(rng, n);
    VecT<S> kick = random_vector<S>(rng, n);
    v += (locked_now ? 1e-3 : 1e-8) * kick.normalized();
  }

  std::vector<std::pair<double, VecT<S>>> pairs;
  for (std::size_t i = 0; i < locked_vals.size(); ++i) pairs.emplace_back(locked_vals[i], locked.col(i));
  out.converged = int(locked_vals.size()) >= k;
  if (!out.converged)
    for (std::size_t i = 0; i < last_vals.size() && int(pairs.size()) < k; ++i)
      if (i < std::size_t(last_ritz.cols())) pairs.emplace_back(last_vals[i], last_ritz.col(i));
  std::sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.first < b.first; });
  out.vectors.resize(n, Eigen::Index(pairs.size()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    VecT<S> y = pairs[i].second;
    fix_phase(y);
    out.values.push_back(pairs[i].first);
    out.vectors.col(i) = y;
    out.residual = std::max(out.residual, pair_residual(H, y, pairs[i].first));
  }
  return out;
}

template EigenPairs<double> dense_lowest(const SparseT<double>&, int);
template EigenPairs<cplx> dense_lowest(const SparseT<cplx>&, int);
template EigenPairs<double> lanczos_lowest(const SparseT<double>&, const SolverOptions&);
template EigenPairs<cplx> lanczos_lowest(const SparseT<cplx>&, const SolverOptions&);

bool gap_is_unique(double E0, double gap) { return gap > 1e-6 * std::max(1.0, std::abs(E0)); }

namespace {

template <class S>
GroundStateResult finish(const EigenPairs<S>& ep, const SolverOptions& opt, long dim) {
  GroundStateResult r;
  r.lowest = ep.values;
  r.E0 = ep.values.at(0);
  if (ep.values.size() > 1) {
    r.E1 = ep.values[1];
    r.gap = r.E1 - r.E0;
    r.unique = gap_is_unique(r.E0, r.gap);
  } else {
    r.E1 = r.E0;
    r.gap = 0;
    r.unique = dim == 1;
  }
  if constexpr (std::is_same_v<S, double>) r.psi = ep.vectors.col(0).template cast<cplx>();
  else r.psi = ep.vectors.col(0);
  r.solver = ep.solver;
  r.iterations = ep.iterations;
  r.restarts = ep.restarts;
  r.residual = ep.residual;
  r.converged = ep.converged;
  r.seed = opt.seed;
  r.dim = dim;
  return r;
}

}  // namespace

GroundStateResult ground_state(const SpMat& H, const SolverOptions& opt) {
  const long dim = H.rows();
  if (dim == 0) throw std::invalid_argument("ground_state: empty operator");
  const bool dense = opt.force_dense || (!opt.force_lanczos && dim <= opt.dense_max);
  const int k = std::max(2, opt.n_eigs);
  SolverOptions o = opt;
  o.n_eigs = k;
  if (is_real(H)) {
    RealSp Hr = to_real(H);
    return finish(dense ? dense_lowest<double>(Hr, k) : lanczos_lowest<double>(Hr, o), opt, dim);
  }
  return finish(dense ? dense_lowest<cplx>(H, k) : lanczos_lowest<cplx>(H, o), opt, dim);
}

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// (A (x) 1) psi, with psi laid out electron-major
Vec apply_electron(const Vec& psi, const SpMat& A, long ph_dim) {
  const long e = A.cols();
  if (e * ph_dim != psi.size()) throw std::invalid_argument("electron operator does not match the state");
  Eigen::Map<const RowMat> M(psi.data(), e, ph_dim);
  RowMat out = A * M;
  return Eigen::Map<const Vec>(out.data(), out.size());
}

}  // namespace

cplx electron_expectation(const Vec& psi, const SpMat& A, long ph_dim) {
  return psi.dot(apply_electron(psi, A, ph_dim));
}

SpinResult total_spin_of(const Vec& psi, const SpMat& S2, long ph_dim, double tol) {
  SpinResult r;
  const double nrm2 = psi.squaredNorm();
  r.expectation = electron_expectation(psi, S2, ph_dim).real() / nrm2;
  double s = 0.5 * (std::sqrt(1.0 + 4.0 * std::max(0.0, r.expectation)) - 1.0);
  r.S = std::round(2.0 * s) / 2.0;
  r.residual = (apply_electron(psi, S2, ph_dim) - r.S * (r.S + 1) * psi).norm() / std::sqrt(nrm2);
  r.eigenvector = r.residual < tol;
  return r;
}

bool CorrelatorTable::all_positive() const {
  return std::all_of(rows.begin(), rows.end(), [](const CorrelatorRow& r) { return r.positive; });
}

double CorrelatorTable::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (auto& r : rows) m = std::min(m, r.value);
  return m;
}

std::string CorrelatorTable::to_csv() const {
  std::ostringstream os;
  os.precision(12);
  os << "x,y,species,sign,value,positive\n";
  for (auto& r : rows)
    os << r.x << "," << r.y << "," << r.species << "," << r.sign << "," << r.value << "," << (r.positive ? 1 : 0)
       << "\n";
  return os.str();
}

CorrelatorTable correlator_table(const Vec& psi, const ElectronSpace& space, const Lattice& lat, long ph_dim,
                                 double margin) {
  const int n = lat.n_sites();
  const std::pair<const char*, std::pair<Species, Species>> kinds[4] = {
      {"dd", {Species::d, Species::d}},
      {"ff", {Species::f, Species::f}},
      {"df", {Species::d, Species::f}},
      {"fd", {Species::f, Species::d}}};
  CorrelatorTable t;
  const double nrm2 = psi.squaredNorm();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (auto& [name, sp] : kinds)
        for (int pm = 0; pm < 2; ++pm) {
          SpinComp a = pm == 0 ? SpinComp::plus : SpinComp::minus, b = pm == 0 ? SpinComp::minus : SpinComp::plus;
          SpMat op = build_operator(space, product(spin_terms(n, sp.first, x, a), spin_terms(n, sp.second, y, b)));
          cplx v = double(sublattice_sign(lat, x) * sublattice_sign(lat, y)) * electron_expectation(psi, op, ph_dim) /
                   nrm2;
          t.rows.push_back({x, y, name, pm == 0 ? "+-" : "-+", v.real(), v.imag(), v.real() > margin});
        }
  return t;
}

DenseSemigroup::DenseSemigroup(const SpMat& H) {
  Eigen::SelfAdjointEigenSolver<Mat> es{Mat(H)};
  if (es.info() != Eigen::Success) throw std::runtime_error("DenseSemigroup: eigensolver failed");
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Vec DenseSemigroup::apply(const Vec& v, double beta) const {
  Vec c = evecs_.adjoint() * v;
  c.array() *= (-beta * evals_.array()).exp().cast<cplx>();
  return evecs_ * c;
}

Mat DenseSemigroup::matrix(double beta) const {
  Vec d = (-beta * evals_.array()).exp().cast<cplx>();
  return evecs_ * d.asDiagonal() * evecs_.adjoint();
}

Vec krylov_expm_action(const SpMat& H, const Vec& v, double beta, double tol) {
  const double nv = v.norm();
  if (nv == 0 || beta == 0) return v;
  const Eigen::Index n = H.rows();
  // split the time so each Krylov step stays well resolved
  const double hn = max_abs(H) * std::max<double>(1, std::sqrt(double(H.nonZeros()) / double(n)));
  const int steps = std::max(1, int(std::ceil(std::abs(beta) * hn / 20.0)));
  const double tau = beta / steps;
  const Eigen::Index mmax = std::min<Eigen::Index>(n, 120);
  Vec cur = v;
  for (int st = 0; st < steps; ++st) {
    const double nc = cur.norm();
    if (nc == 0) break;
    Mat V(n, mmax);
    std::vector<double> a, b;
    V.col(0) = cur / nc;
    Vec coef;
    for (Eigen::Index j = 0; j < mmax; ++j) {
      Vec w = H * V.col(j);
      a.push_back(V.col(j).dot(w).real());
      for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(j + 1) * (V.leftCols(j + 1).adjoint() * w);
      const double bj = w.norm();
      const Eigen::Index m = j + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        T(i, i) = a[i];
        if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = b[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      Eigen::VectorXd e1 = es.eigenvectors().row(0).transpose();
      Eigen::VectorXd c = es.eigenvectors() * (e1.array() * (-tau * es.eigenvalues().array()).exp()).matrix();
      coef = c.cast<cplx>();
      const bool done = bj < 1e-13 * std::max(1.0, max_abs(H)) || m == n ||
                        std::abs(bj * c[m - 1]) < tol * c.norm();
      if (done || m == mmax) break;
      b.push_back(bj);
      V.col(j + 1) = w / bj;
    }
    cur = nc * (V.leftCols(coef.size()) * coef);
  }
  return cur;
}

Vec expm_action(const SpMat& H, const Vec& v, double beta, long dense_max) {
  if (H.rows() <= dense_max) return DenseSemigroup(H).apply(v, beta);
  return krylov_expm_action(H, v, beta);
}

}  // namespace pam
