#include "pam/hamiltonian.hpp"

#include <cmath>
#include <iomanip>
#include <stdexcept>

#include "pam/operators.hpp"

namespace pam {

std::string to_string(Model m) {
  switch (m) {
    case Model::PAM: return "pam";
    case Model::d_coupled: return "d";
    case Model::f_coupled: return "f";
  }
  return "?";
}

Model model_from_string(const std::string& s) {
  if (s == "pam" || s == "PAM") return Model::PAM;
  if (s == "d" || s == "d_coupled") return Model::d_coupled;
  if (s == "f" || s == "f_coupled") return Model::f_coupled;
  throw std::invalid_argument("unknown model '" + s + "'");
}

EffectiveCouplings effective_couplings(const ModelParams& p) {
  const double shift = 2.0 * p.g * p.g / p.w0;
  return {p.Ud - shift, p.Uf - shift};
}

double symmetric_epsilon_f(const ModelParams& p, Model model) {
  const double base = 0.5 * (p.Ud - p.Uf), lf = 2.0 * p.g * p.g / p.w0;
  switch (model) {
    case Model::d_coupled: return base - lf;
    case Model::f_coupled: return base + lf;
    default: throw std::invalid_argument("symmetric_epsilon_f: the PAM uses -Uf/2");
  }
}

double symmetric_epsilon_f_pam(const ModelParams& p) { return -0.5 * p.Uf; }

double theorem_epsilon_f(const ModelParams& p) {
  return p.model == Model::PAM ? symmetric_epsilon_f_pam(p) : symmetric_epsilon_f(p, p.model);
}

bool in_theorem_regime(const ModelParams& p, double tol) {
  if (p.V == 0.0 || p.w0 <= 0.0) return false;
  if (std::abs(p.eps_f - theorem_epsilon_f(p)) > tol) return false;
  auto e = effective_couplings(p);
  switch (p.model) {
    case Model::PAM: return p.Uf > 0;
    case Model::d_coupled: return e.Ud_eff >= -tol && p.Uf > 0;
    case Model::f_coupled: return p.Ud >= 0 && e.Uf_eff > 0;
  }
  return false;
}

void check_params(const ModelParams& p) {
  if (p.V == 0.0) throw std::invalid_argument("V must be nonzero");
  if (!(p.w0 > 0.0)) throw std::invalid_argument("w0 must be positive");
  for (double v : {p.eps_f, p.Uf, p.Ud, p.V, p.g, p.w0})
    if (!std::isfinite(v)) throw std::invalid_argument("parameters must be finite");
}

namespace {

int dmode(int n, int x, Spin s) { return global_mode(n, {Species::d, x}, s); }
int fmode(int n, int x, Spin s) { return global_mode(n, {Species::f, x}, s); }
const Spin spins[2] = {Spin::up, Spin::down};

TermList pair_terms(int a, int b) { return product(number_terms(a), number_terms(b)); }

// sum_x n_{x,up} n_{x,dn} of one species
TermList double_occupancy(int n, Species sp) {
  TermList out;
  for (int x = 0; x < n; ++x)
    out = sum(std::move(out), pair_terms(global_mode(n, {sp, x}, Spin::up), global_mode(n, {sp, x}, Spin::down)));
  return out;
}

TermList species_number(int n, Species sp) {
  TermList out;
  for (int x = 0; x < n; ++x)
    for (Spin s : spins) out = sum(std::move(out), number_terms(global_mode(n, {sp, x}, s)));
  return out;
}

// sign * (t_xy d^dag_x d_y summed over bonds); sign = -1 for H_PAM
TermList hopping_terms(const Lattice& lat, Spin s, double sign) {
  const int n = lat.n_sites();
  TermList out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (x != y && lat.bond(x, y)) out = sum(std::move(out), scaled(hop_terms(dmode(n, x, s), dmode(n, y, s)), sign * lat.t(x, y)));
  return out;
}

TermList hybridisation_terms(int n, Spin s, double V) {
  TermList out;
  for (int x = 0; x < n; ++x) {
    out = sum(std::move(out), scaled(hop_terms(fmode(n, x, s), dmode(n, x, s)), V));
    out = sum(std::move(out), scaled(hop_terms(dmode(n, x, s), fmode(n, x, s)), V));
  }
  return out;
}

SpMat number_phonons(const PhononSpace& ph, double w0) { return SpMat(w0 * ph.number()); }

// g sum_x n^s_x (b_x + b_x^dag)
SpMat coupling(const ElectronSpace& space, const PhononSpace& ph, Species sp, double g) {
  const int n = space.n_sites();
  SpMat out(space.dim() * ph.dim(), space.dim() * ph.dim());
  if (g == 0.0) return out;
  const Mat x1 = ph.b() + ph.b().adjoint();
  for (int x = 0; x < n; ++x) {
    TermList nx = sum(number_terms(global_mode(n, {sp, x}, Spin::up)), number_terms(global_mode(n, {sp, x}, Spin::down)));
    out += g * kron<cplx>(build_operator(space, nx), ph.site_op(x1, x));
  }
  return out;
}

}  // namespace

SpMat embed_electron(const SpMat& e, const PhononSpace& ph) { return kron<cplx>(e, ph.identity()); }
SpMat embed_phonon(long e_dim, const SpMat& b) { return kron<cplx>(identity<cplx>(e_dim), b); }

SpMat build_pam(const Lattice& lat, const ElectronSpace& space, const ModelParams& p, bool include_Ud) {
  const int n = lat.n_sites();
  if (space.n_sites() != n) throw std::invalid_argument("build_pam: lattice and space disagree on n_sites");
  TermList h;
  for (Spin s : spins) {
    h = sum(std::move(h), hopping_terms(lat, s, -1.0));
    h = sum(std::move(h), hybridisation_terms(n, s, p.V));
  }
  h = sum(std::move(h), scaled(species_number(n, Species::f), p.eps_f));
  h = sum(std::move(h), scaled(double_occupancy(n, Species::f), p.Uf));
  if (include_Ud) h = sum(std::move(h), scaled(double_occupancy(n, Species::d), p.Ud));
  return build_operator(space, h);
}

HamiltonianSet build_model(const Lattice& lat, const ElectronSpace& space, const PhononSpace* ph,
                           const ModelParams& p) {
  check_params(p);
  HamiltonianSet hs;
  hs.e_dim = space.dim();
  const bool pam = p.model == Model::PAM;
  SpMat He = build_pam(lat, space, p, !pam);
  hs.label = pam ? "H_PAM" : (p.model == Model::d_coupled ? "H_d" : "H_f");
  if (!ph) {
    if (!pam && p.g != 0.0) throw std::invalid_argument("build_model: phonon space required for g != 0");
    hs.H = He;
    return hs;
  }
  if (ph->n_sites() != lat.n_sites()) throw std::invalid_argument("build_model: phonon space has wrong n_sites");
  hs.ph_dim = ph->dim();
  hs.H = embed_electron(He, *ph) + embed_phonon(hs.e_dim, number_phonons(*ph, p.w0));
  if (!pam) hs.H += coupling(space, *ph, p.model == Model::d_coupled ? Species::d : Species::f, p.g);
  hs.H.makeCompressed();
  return hs;
}

SpMat hopping_block(const Lattice& lat, const ElectronSpace& space, const PhononSpace& ph, Spin s, int sign,
                    double g, double w0) {
  const int n = lat.n_sites();
  SpMat out(space.dim() * ph.dim(), space.dim() * ph.dim());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !lat.bond(x, y)) continue;
      SpMat phase = phase_operator(ph, x, sign, g, w0) * phase_operator(ph, y, -sign, g, w0);
      out += -lat.t(x, y) * kron<cplx>(hop_op(space, dmode(n, x, s), dmode(n, y, s)), phase);
    }
  return out;
}

// V sum_x (f^dag d e^{-i sign Phi_x} + d^dag f e^{i sign Phi_x})
SpMat hybrid_block(const ElectronSpace& space, const PhononSpace& ph, Spin s, int sign, double V, double g,
                   double w0) {
  const int n = space.n_sites();
  SpMat out(space.dim() * ph.dim(), space.dim() * ph.dim());
  for (int x = 0; x < n; ++x) {
    out += V * kron<cplx>(hop_op(space, fmode(n, x, s), dmode(n, x, s)), phase_operator(ph, x, -sign, g, w0));
    out += V * kron<cplx>(hop_op(space, dmode(n, x, s), fmode(n, x, s)), phase_operator(ph, x, sign, g, w0));
  }
  return out;
}

HamiltonianSet build_deformed(const Lattice& lat, const ElectronSpace& space, const PhononSpace& ph,
                              const ModelParams& p) {
  check_params(p);
  if (p.model == Model::PAM) throw std::invalid_argument("build_deformed: needs the d- or f-coupled model");
  const double eps = symmetric_epsilon_f(p, p.model);
  if (std::abs(p.eps_f - eps) > 1e-12)
    throw std::invalid_argument("build_deformed: eps_f must equal the symmetric value");
  const int n = lat.n_sites();
  const auto e = effective_couplings(p);
  const bool dm = p.model == Model::d_coupled;
  // d-model: phases on T and V, down spin reversed; f-model: phases on V only, up spin reversed
  const double gt = dm ? p.g : 0.0;
  const int up = dm ? +1 : -1;
  const double Ud_on_site = dm ? e.Ud_eff : p.Ud;

  HamiltonianSet hs;
  hs.e_dim = space.dim();
  hs.ph_dim = ph.dim();
  hs.label = dm ? "deformed H" : "deformed H_f";
  hs.H1 = hopping_block(lat, space, ph, Spin::up, +1, gt, p.w0) + hopping_block(lat, space, ph, Spin::down, -1, gt, p.w0) +
          hybrid_block(space, ph, Spin::up, up, p.V, p.g, p.w0) + hybrid_block(space, ph, Spin::down, -up, p.V, p.g, p.w0) +
          embed_electron(build_operator(space, scaled(species_number(n, Species::d), 0.5 * Ud_on_site)), ph);
  hs.H0 = hs.H1 + embed_phonon(hs.e_dim, number_phonons(ph, p.w0));
  auto R = interaction_projectors(space, dm ? p.Uf : e.Uf_eff, Ud_on_site);
  hs.R0 = embed_electron(R.R0, ph);
  hs.R1 = embed_electron(R.R1, ph);
  hs.R = hs.R0 + hs.R1;
  hs.H = hs.H0 - hs.R;
  for (SpMat* m : {&hs.H, &hs.H0, &hs.H1, &hs.R, &hs.R0, &hs.R1}) m->makeCompressed();
  hs.shift = dm ? 2.0 * p.g * p.g * n / p.w0 - 0.5 * e.Ud_eff * n : -0.5 * p.Ud * n;
  return hs;
}

SpMat build_lf_rotated(const Lattice& lat, const ElectronSpace& space, const PhononSpace& ph, const ModelParams& p) {
  check_params(p);
  if (p.model == Model::PAM) throw std::invalid_argument("build_lf_rotated: needs the d- or f-coupled model");
  const int n = lat.n_sites();
  const auto e = effective_couplings(p);
  const bool dm = p.model == Model::d_coupled;
  const double lf = p.g * p.g / p.w0;
  const double gt = dm ? p.g : 0.0;
  const int sv = dm ? +1 : -1;
  SpMat H(space.dim() * ph.dim(), space.dim() * ph.dim());
  for (Spin s : spins) {
    H += hopping_block(lat, space, ph, s, +1, gt, p.w0);
    H += hybrid_block(space, ph, s, sv, p.V, p.g, p.w0);
  }
  TermList el = scaled(species_number(n, Species::f), dm ? p.eps_f + lf : p.eps_f - lf);
  el = sum(std::move(el), scaled(double_occupancy(n, Species::f), dm ? p.Uf : e.Uf_eff));
  el = sum(std::move(el), scaled(double_occupancy(n, Species::d), dm ? e.Ud_eff : p.Ud));
  H += embed_electron(build_operator(space, el), ph);
  H += embed_phonon(space.dim(), number_phonons(ph, p.w0));
  if (dm) H -= 2.0 * lf * n * identity<cplx>(H.rows());
  H.makeCompressed();
  return H;
}

HamiltonianSet build_reference_hubbard(const Lattice& lat, const ElectronSpace& space, const PhononSpace* ph,
                                       double w0) {
  const int n = lat.n_sites();
  TermList h;
  for (Spin s : spins) {
    h = sum(std::move(h), hopping_terms(lat, s, +1.0));
    h = sum(std::move(h), hybridisation_terms(n, s, 1.0));
  }
  h = sum(std::move(h), double_occupancy(n, Species::d));
  h = sum(std::move(h), double_occupancy(n, Species::f));
  HamiltonianSet hs;
  hs.label = ph ? "H'_H" : "H_H";
  hs.e_dim = space.dim();
  SpMat He = build_operator(space, h);
  if (!ph) {
    hs.H = He;
    return hs;
  }
  hs.ph_dim = ph->dim();
  hs.H = embed_electron(He, *ph) + embed_phonon(hs.e_dim, number_phonons(*ph, w0));
  return hs;
}

void write_triplets(std::ostream& os, const SpMat& m) {
  os << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  auto old = os.precision(17);
  for (Eigen::Index k = 0; k < m.outerSize(); ++k)
    for (SpMat::InnerIterator it(m, k); it; ++it)
      os << it.row() << " " << it.col() << " " << it.value().real() << " " << it.value().imag() << "\n";
  os.precision(old);
}

}  // namespace pam
