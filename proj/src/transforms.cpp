#include "pam/transforms.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "pam/operators.hpp"

namespace pam {

double UnitaryOp::unitarity_residual() const {
  SpMat d = SpMat(U.adjoint()) * U - identity<cplx>(U.cols());
  return max_abs(d);
}

UnitaryOp lang_firsov(const ElectronSpace& space, const PhononSpace& ph, Species s, double g, double w0) {
  if (w0 <= 0) throw std::invalid_argument("lang_firsov: w0 must be positive");
  const int n = space.n_sites();
  const double alpha = std::sqrt(2.0) * g / w0;
  // single-mode exp(-i alpha k p) for site occupations k = 0, 1, 2
  std::vector<Mat> single(3);
  for (int k = 0; k < 3; ++k)
    single[k] = (k == 0 || g == 0.0) ? Mat(Mat::Identity(ph.mode_dim(), ph.mode_dim())) : expi_hermitian(ph.p(), -alpha * k);
  // L is diagonal in the electron basis, so e^{L} is block diagonal with a product of site factors per block
  std::map<std::vector<int>, Mat> cache;
  const long dph = ph.dim();
  std::vector<Eigen::Triplet<cplx>> tr;
  for (int e = 0; e < space.dim(); ++e) {
    const Mask m = space.mask(e);
    std::vector<int> occ(n);
    for (int x = 0; x < n; ++x) {
      int up = global_mode(n, {s, x}, Spin::up);
      occ[x] = int(m >> up & 1);
      if (space.kind() != ElectronSpace::Kind::OneSpecies) occ[x] += int(m >> global_mode(n, {s, x}, Spin::down) & 1);
    }
    auto it = cache.find(occ);
    if (it == cache.end()) {
      Mat block = Mat::Identity(1, 1);
      for (int x = 0; x < n; ++x) block = Eigen::kroneckerProduct(block, single[occ[x]]).eval();
      it = cache.emplace(occ, std::move(block)).first;
    }
    const Mat& b = it->second;
    for (long j = 0; j < dph; ++j)
      for (long i = 0; i < dph; ++i)
        if (b(i, j) != cplx(0)) tr.emplace_back(e * dph + i, e * dph + j, b(i, j));
  }
  SpMat U(space.dim() * dph, space.dim() * dph);
  U.setFromTriplets(tr.begin(), tr.end());
  return {U, s == Species::d ? "exp(L_d)" : "exp(L_f)"};
}

UnitaryOp phonon_rotation(long e_dim, const PhononSpace& ph) {
  static const cplx pow_i[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  std::vector<cplx> d(ph.dim());
  for (long k = 0; k < ph.dim(); ++k) d[k] = pow_i[ph.total_occupation(k) % 4];
  return {embed_phonon(e_dim, diagonal_sparse(d)), "exp(i pi N_p / 2)"};
}

UnitaryOp hole_particle(const ElectronSpace& space, const Lattice& lat) {
  if (space.kind() == ElectronSpace::Kind::OneSpecies)
    throw std::invalid_argument("hole_particle: needs a two-species space");
  const int n = lat.n_sites();
  if (space.n_sites() != n) throw std::invalid_argument("hole_particle: lattice and space disagree on n_sites");
  // W = B_1 ... B_2n over the down modes, B_m = c_m + kappa_m c_m^dag; kappa = -g_x on d, +g_x on f
  std::vector<int> kappa(2 * n);
  for (int x = 0; x < n; ++x) {
    kappa[x] = -sublattice_sign(lat, x);
    kappa[n + x] = sublattice_sign(lat, x);
  }
  std::vector<Eigen::Triplet<cplx>> tr;
  for (int j = 0; j < space.dim(); ++j) {
    Mask s = space.mask(j);
    int sign = 1;
    for (int k = 2 * n - 1; k >= 0; --k) {
      const int mode = 2 * n + k;
      const bool occ = s >> mode & 1;
      auto r = apply_mode_op(s, mode, occ ? Ladder::annihilate : Ladder::create);
      s = r->state;
      sign *= r->sign * (occ ? 1 : kappa[k]);
    }
    int i = space.index(s);
    if (i < 0) throw std::domain_error("hole_particle: space is not closed under W");
    tr.emplace_back(i, j, double(sign));
  }
  SpMat W(space.dim(), space.dim());
  W.setFromTriplets(tr.begin(), tr.end());
  return {W, "W"};
}

double hole_particle_relation_residual(const Lattice& lat) {
  const int n = lat.n_sites();
  if (n > 4) throw std::invalid_argument("hole_particle_relation_residual: n_sites <= 4");
  auto fs = ElectronSpace::fock(n);
  SpMat W = hole_particle(fs, lat).U, Wd = W.adjoint();
  double worst = 0;
  for (int x = 0; x < n; ++x) {
    const int g = sublattice_sign(lat, x);
    for (Species sp : {Species::d, Species::f})
      for (Spin s : {Spin::up, Spin::down}) {
        const int m = global_mode(n, {sp, x}, s);
        SpMat c = build_operator(fs, c_op(m, Ladder::annihilate));
        SpMat expect = s == Spin::up ? c
                                     : SpMat(double(sp == Species::d ? g : -g) *
                                             build_operator(fs, c_op(m, Ladder::create)));
        worst = std::max(worst, max_abs(SpMat(Wd * c * W - expect)));
      }
  }
  return worst;
}

UnitaryOp composite(const ElectronSpace& space, const PhononSpace& ph, const Lattice& lat, Species s, double g,
                    double w0) {
  SpMat eL = lang_firsov(space, ph, s, g, w0).U;
  SpMat rot = phonon_rotation(space.dim(), ph).U;
  SpMat W = embed_electron(hole_particle(space, lat).U, ph);
  SpMat U = SpMat(eL.adjoint()) * SpMat(rot.adjoint()) * W;
  return {U, "U"};
}

SpMat occupancy_guard(long e_dim, const PhononSpace& ph, int max_occ) {
  std::vector<cplx> d(ph.dim());
  for (long k = 0; k < ph.dim(); ++k) d[k] = ph.total_occupation(k) <= max_occ ? 1.0 : 0.0;
  return embed_phonon(e_dim, diagonal_sparse(d));
}

double verify_conjugation(const SpMat& U, const SpMat& A, const SpMat& B, const SpMat& Pi) {
  const auto n = U.rows();
  for (const SpMat* m : {&U, &A, &B, &Pi})
    if (m->rows() != n || m->cols() != n) throw std::invalid_argument("verify_conjugation: dimension mismatch");
  SpMat d = Pi * SpMat(U * A * SpMat(U.adjoint()) - B) * Pi;
  return max_abs(d);
}

}  // namespace pam
