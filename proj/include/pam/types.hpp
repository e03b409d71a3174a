#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

namespace pam {

using cplx = std::complex<double>;

template <class S> using SparseT = Eigen::SparseMatrix<S>;
template <class S> using DenseT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using VecT = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using SpMat = SparseT<cplx>;
using RealSp = SparseT<double>;
using Mat = DenseT<cplx>;
using Vec = VecT<cplx>;

template <class S>
SparseT<S> identity(Eigen::Index n) {
  SparseT<S> I(n, n);
  I.setIdentity();
  return I;
}

template <class S>
SparseT<S> kron(const SparseT<S>& a, const SparseT<S>& b) {
  SparseT<S> out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

template <class S>
SparseT<S> sparse_of(const DenseT<S>& m, double drop = 0.0) {
  return m.sparseView(S(1), drop);
}

template <class S>
SparseT<S> diagonal_sparse(const std::vector<S>& d) {
  SparseT<S> m(Eigen::Index(d.size()), Eigen::Index(d.size()));
  std::vector<Eigen::Triplet<S>> tr;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != S(0)) tr.emplace_back(Eigen::Index(i), Eigen::Index(i), d[i]);
  m.setFromTriplets(tr.begin(), tr.end());
  return m;
}

// entrywise max |a_ij|; works for any sparse expression convertible to SparseT
template <class S>
double max_abs(const SparseT<S>& m) {
  double r = 0.0;
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (typename SparseT<S>::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
  return r;
}

template <class S>
double max_abs(const DenseT<S>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

template <class S>
double hermiticity_residual(const SparseT<S>& m) {
  SparseT<S> d = SparseT<S>(m.adjoint()) - m;
  return max_abs(d);
}

// real part of a complex operator, refusing if the imaginary part is not negligible
RealSp to_real(const SpMat& m, double tol = 1e-13);
SpMat to_complex(const RealSp& m);
bool is_real(const SpMat& m, double tol = 1e-13);

}  // namespace pam
