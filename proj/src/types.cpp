#include "pam/types.hpp"

namespace pam {

bool is_real(const SpMat& m, double tol) {
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      if (std::abs(it.value().imag()) > tol) return false;
  return true;
}

RealSp to_real(const SpMat& m, double tol) {
  if (!is_real(m, tol)) throw std::domain_error("to_real: operator has an imaginary part");
  RealSp r = m.real();
  r.makeCompressed();
  return r;
}

SpMat to_complex(const RealSp& m) { return m.cast<cplx>(); }

}  // namespace pam
