#pragma once

#include <string>

#include "pam/fock.hpp"
#include "pam/hamiltonian.hpp"
#include "pam/lattice.hpp"
#include "pam/phonon.hpp"

namespace pam {

struct UnitaryOp {
  SpMat U;
  std::string label;
  double unitarity_residual() const;  // max |U^dag U - I|
};

// e^{L}, L = -i (sqrt2 g / w0) sum_x n^s_x p_x, exponentiated on the truncated space
UnitaryOp lang_firsov(const ElectronSpace& space, const PhononSpace& ph, Species s, double g, double w0);

// 1 (x) e^{i pi N_p / 2}
UnitaryOp phonon_rotation(long e_dim, const PhononSpace& ph);

// Signed permutation W with W* d_up W = d_up, W* d_dn W = g_x d_dn^dag,
// W* f_up W = f_up, W* f_dn W = -g_x f_dn^dag. Works on the M0 and Fock spaces.
UnitaryOp hole_particle(const ElectronSpace& space, const Lattice& lat);

// Max residual of the four defining relations, checked on the Fock space (n_sites <= 4).
double hole_particle_relation_residual(const Lattice& lat);

// U = e^{-L} e^{-i pi N_p/2} W, so that H = U* Hmodel U + shift
UnitaryOp composite(const ElectronSpace& space, const PhononSpace& ph, const Lattice& lat, Species s, double g,
                    double w0);

// diagonal projector onto total phonon occupancy <= max_occ
SpMat occupancy_guard(long e_dim, const PhononSpace& ph, int max_occ);

// || Pi (U A U^dag - B) Pi ||_max
double verify_conjugation(const SpMat& U, const SpMat& A, const SpMat& B, const SpMat& Pi);

}  // namespace pam
