#pragma once

#include <ostream>
#include <string>

#include "pam/fock.hpp"
#include "pam/lattice.hpp"
#include "pam/phonon.hpp"

namespace pam {

enum class Model { PAM, d_coupled, f_coupled };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

struct ModelParams {
  Model model = Model::d_coupled;
  double eps_f = 0.0;
  double Uf = 2.0;
  double Ud = 1.0;
  double V = 1.0;
  double g = 0.0;
  double w0 = 1.0;
};

struct EffectiveCouplings {
  double Ud_eff, Uf_eff;
};

EffectiveCouplings effective_couplings(const ModelParams& p);
// d- and f-coupled branches; throws for PAM
double symmetric_epsilon_f(const ModelParams& p, Model model);
// -Uf/2
double symmetric_epsilon_f_pam(const ModelParams& p);
// value that puts the model inside its theorem regime
double theorem_epsilon_f(const ModelParams& p);
bool in_theorem_regime(const ModelParams& p, double tol = 1e-12);

// Throws std::invalid_argument for V == 0 or w0 <= 0.
void check_params(const ModelParams& p);

struct HamiltonianSet {
  SpMat H;           // full model or deformed H
  SpMat H0, H1, R;   // deformed only
  SpMat R0, R1;      // deformed only
  double shift = 0;  // spec(original) + shift = spec(deformed)
  long e_dim = 0, ph_dim = 1;
  std::string label;
};

// Electron-only H_PAM (plus U^d n n when include_Ud); any electron space closed under particle hopping.
SpMat build_pam(const Lattice& lat, const ElectronSpace& space, const ModelParams& p, bool include_Ud);

// Full model on space (x) phonons. PAM ignores phonons unless ph is given (then adds w0 N_p).
HamiltonianSet build_model(const Lattice& lat, const ElectronSpace& space, const PhononSpace* ph,
                           const ModelParams& p);

// H = H0 - R assembled from phase-dressed blocks; requires the symmetric eps_f.
HamiltonianSet build_deformed(const Lattice& lat, const ElectronSpace& space, const PhononSpace& ph,
                              const ModelParams& p);

// Right-hand side of the Lang-Firsov plus rotation identity, assembled directly (no conjugation).
SpMat build_lf_rotated(const Lattice& lat, const ElectronSpace& space, const PhononSpace& ph, const ModelParams& p);

// Phase-dressed blocks; sign selects +Phi or -Phi. g = 0 gives the bare operators.
SpMat hopping_block(const Lattice& lat, const ElectronSpace& space, const PhononSpace& ph, Spin s, int sign,
                    double g, double w0);
SpMat hybrid_block(const ElectronSpace& space, const PhononSpace& ph, Spin s, int sign, double V, double g,
                   double w0);

HamiltonianSet build_reference_hubbard(const Lattice& lat, const ElectronSpace& space, const PhononSpace* ph,
                                       double w0 = 1.0);

// electron (x) phonon embeddings, electron index major
SpMat embed_electron(const SpMat& e, const PhononSpace& ph);
SpMat embed_phonon(long e_dim, const SpMat& b);

void write_triplets(std::ostream& os, const SpMat& m);

}  // namespace pam
