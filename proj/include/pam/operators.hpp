#pragma once

#include <vector>

#include "pam/fock.hpp"
#include "pam/lattice.hpp"

namespace pam {

struct ModeOp {
  int mode;
  Ladder kind;
};

// coef * ops[0] ops[1] ... ops[k-1]; the rightmost operator acts first
struct Term {
  cplx coef;
  std::vector<ModeOp> ops;
};
using TermList = std::vector<Term>;

TermList product(const TermList& a, const TermList& b);
TermList sum(TermList a, const TermList& b);
TermList scaled(TermList a, cplx c);

// Throws std::domain_error if some term leaves the space.
SpMat build_operator(const ElectronSpace& space, const TermList& terms);

// mode helpers on a two-species space
TermList c_op(int mode, Ladder kind);
TermList number_terms(int mode);
TermList hop_terms(int to, int from);  // c_to^dag c_from

SpMat number_op(const ElectronSpace& space, int mode);
SpMat hop_op(const ElectronSpace& space, int to, int from);

enum class SpinComp { x, y, z, plus, minus };

TermList spin_terms(int n_sites, Species s, int x, SpinComp c);
TermList total_spin_terms(int n_sites, SpinComp c);
SpMat spin_op(const ElectronSpace& space, Species s, int x, SpinComp c);
SpMat total_spin(const ElectronSpace& space, SpinComp c);
SpMat spin_squared(const ElectronSpace& space);

// P, Q, EE act on a two-species space; E on the one-species space.
enum class ProjKind { P, Q, E, EE };
SpMat projector(ProjKind kind, const Config& c, const ElectronSpace& space);

enum class HybridKind { v_minus, v_plus, B_minus, B_plus };
// v ops are unweighted two-species ops at site x (y ignored); B ops are weighted one-species ops.
SpMat hybrid_op(HybridKind kind, int x, int y, Spin s, const ElectronSpace& space, const Lattice& lat, double V);
TermList hybrid_terms(HybridKind kind, int x, int y, Spin s, int n_sites, const Lattice& lat, double V);

struct InteractionOps {
  SpMat R0, R1;
};
// R0 = (Uf/2) sum [n_up n_dn + (1-n_up)(1-n_dn)]^f, R1 = Ud_eff sum (n_up n_dn)^d
InteractionOps interaction_projectors(const ElectronSpace& space, double Uf, double Ud_eff);

}  // namespace pam
