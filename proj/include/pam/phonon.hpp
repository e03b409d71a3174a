#pragma once

#include "pam/types.hpp"

namespace pam {

// Truncated oscillators, one per site; site 0 is the leftmost Kronecker factor.
class PhononSpace {
 public:
  PhononSpace(int n_sites, int n_max, long dim_cap = 200000);

  int n_sites() const { return n_; }
  int n_max() const { return nmax_; }
  int mode_dim() const { return nmax_ + 1; }
  long dim() const { return dim_; }

  const Mat& b() const { return b_; }
  const Mat& q() const { return q_; }
  const Mat& p() const { return p_; }
  Mat bdag() const { return b_.adjoint(); }

  SpMat site_op(const Mat& single, int x) const;
  SpMat b(int x) const { return site_op(b_, x); }
  SpMat q(int x) const { return site_op(q_, x); }
  SpMat p(int x) const { return site_op(p_, x); }
  SpMat number() const;  // N_p
  SpMat identity() const { return pam::identity<cplx>(dim_); }

  int occupation(long index, int x) const;
  int total_occupation(long index) const;
  long vacuum_index() const { return 0; }

 private:
  int n_, nmax_;
  long dim_;
  Mat b_, q_, p_;
};

PhononSpace build_phonon_ops(int n_sites, int n_max);

// Eigenbasis of the truncated q; column k is the k-th node, signs fixed so the vacuum amplitudes are positive.
struct PositionFrame {
  Eigen::VectorXd nodes;
  Eigen::MatrixXd F;
  int n_sites;

  Eigen::MatrixXd full() const;  // tensor frame over all sites
};

PositionFrame position_frame(const PhononSpace& ph);

// e^{sign * i (sqrt(2) g / w0) q} on one mode
Mat phase_single(const PhononSpace& ph, int sign, double g, double w0);
SpMat phase_operator(const PhononSpace& ph, int x, int sign, double g, double w0);

// exp(i a M) for a Hermitian single-mode matrix M
Mat expi_hermitian(const Mat& m, double a);

}  // namespace pam
