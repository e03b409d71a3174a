#include "pam/phonon.hpp"

#include <cmath>
#include <stdexcept>

namespace pam {

PhononSpace::PhononSpace(int n_sites, int n_max, long dim_cap) : n_(n_sites), nmax_(n_max) {
  if (n_max < 1) throw std::invalid_argument("PhononSpace: n_max must be at least 1");
  if (n_sites < 1) throw std::invalid_argument("PhononSpace: need at least one site");
  dim_ = 1;
  for (int x = 0; x < n_sites; ++x) {
    dim_ *= n_max + 1;
    if (dim_ > dim_cap) throw std::invalid_argument("PhononSpace: dimension exceeds cap");
  }
  const int m = n_max + 1;
  b_ = Mat::Zero(m, m);
  for (int k = 1; k < m; ++k) b_(k - 1, k) = std::sqrt(double(k));
  const double r = 1.0 / std::sqrt(2.0);
  q_ = r * (b_.adjoint() + b_);
  p_ = cplx(0, r) * (b_.adjoint() - b_);
}

SpMat PhononSpace::site_op(const Mat& single, int x) const {
  if (x < 0 || x >= n_) throw std::out_of_range("PhononSpace: site out of range");
  long left = 1, right = 1;
  for (int s = 0; s < x; ++s) left *= mode_dim();
  for (int s = x + 1; s < n_; ++s) right *= mode_dim();
  SpMat one = sparse_of<cplx>(single);
  return kron<cplx>(kron<cplx>(pam::identity<cplx>(left), one), pam::identity<cplx>(right));
}

SpMat PhononSpace::number() const {
  std::vector<cplx> d(dim_);
  for (long i = 0; i < dim_; ++i) d[i] = double(total_occupation(i));
  return diagonal_sparse(d);
}

int PhononSpace::occupation(long index, int x) const {
  for (int s = n_ - 1; s > x; --s) index /= mode_dim();
  return int(index % mode_dim());
}

int PhononSpace::total_occupation(long index) const {
  int t = 0;
  for (int s = 0; s < n_; ++s) {
    t += int(index % mode_dim());
    index /= mode_dim();
  }
  return t;
}

PhononSpace build_phonon_ops(int n_sites, int n_max) { return PhononSpace(n_sites, n_max); }

Eigen::MatrixXd PositionFrame::full() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int x = 0; x < n_sites; ++x) out = Eigen::kroneckerProduct(out, F).eval();
  return out;
}

PositionFrame position_frame(const PhononSpace& ph) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ph.q().real());
  PositionFrame fr{es.eigenvalues(), es.eigenvectors(), ph.n_sites()};
  for (int k = 0; k < fr.F.cols(); ++k)
    if (fr.F(0, k) < 0) fr.F.col(k) *= -1.0;
  return fr;
}

Mat expi_hermitian(const Mat& m, double a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Vec ph = (cplx(0, a) * es.eigenvalues().cast<cplx>()).array().exp();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

Mat phase_single(const PhononSpace& ph, int sign, double g, double w0) {
  if (w0 <= 0) throw std::invalid_argument("phase_single: w0 must be positive");
  return expi_hermitian(ph.q(), sign * std::sqrt(2.0) * g / w0);
}

SpMat phase_operator(const PhononSpace& ph, int x, int sign, double g, double w0) {
  if (g == 0.0) return ph.identity();
  return ph.site_op(phase_single(ph, sign, g, w0), x);
}

}  // namespace pam
