#include "pam/operators.hpp"

#include <functional>
#include <stdexcept>

namespace pam {

TermList product(const TermList& a, const TermList& b) {
  TermList out;
  out.reserve(a.size() * b.size());
  for (auto& x : a)
    for (auto& y : b) {
      Term t{x.coef * y.coef, x.ops};
      t.ops.insert(t.ops.end(), y.ops.begin(), y.ops.end());
      out.push_back(std::move(t));
    }
  return out;
}

TermList sum(TermList a, const TermList& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

TermList scaled(TermList a, cplx c) {
  for (auto& t : a) t.coef *= c;
  return a;
}

SpMat build_operator(const ElectronSpace& space, const TermList& terms) {
  const int dim = space.dim();
  std::vector<Eigen::Triplet<cplx>> tr;
  for (int j = 0; j < dim; ++j)
    for (auto& t : terms) {
      if (t.coef == cplx(0)) continue;
      Mask s = space.mask(j);
      int sign = 1;
      bool alive = true;
      for (auto it = t.ops.rbegin(); it != t.ops.rend() && alive; ++it) {
        if (it->mode < 0 || it->mode >= space.n_modes()) throw std::invalid_argument("build_operator: mode out of range");
        auto r = apply_mode_op(s, it->mode, it->kind);
        if (!r) alive = false;
        else {
          s = r->state;
          sign *= r->sign;
        }
      }
      if (!alive) continue;
      int i = space.index(s);
      if (i < 0) throw std::domain_error("build_operator: operator leaves the state space");
      tr.emplace_back(i, j, double(sign) * t.coef);
    }
  SpMat m(dim, dim);
  m.setFromTriplets(tr.begin(), tr.end());
  m.prune(cplx(0.0), 0.0);
  m.makeCompressed();
  return m;
}

TermList c_op(int mode, Ladder kind) { return {{1.0, {{mode, kind}}}}; }
TermList number_terms(int mode) { return {{1.0, {{mode, Ladder::create}, {mode, Ladder::annihilate}}}}; }
TermList hop_terms(int to, int from) { return {{1.0, {{to, Ladder::create}, {from, Ladder::annihilate}}}}; }

SpMat number_op(const ElectronSpace& space, int mode) { return build_operator(space, number_terms(mode)); }
SpMat hop_op(const ElectronSpace& space, int to, int from) { return build_operator(space, hop_terms(to, from)); }

TermList spin_terms(int n_sites, Species s, int x, SpinComp c) {
  const int up = global_mode(n_sites, {s, x}, Spin::up), dn = global_mode(n_sites, {s, x}, Spin::down);
  TermList plus = hop_terms(up, dn), minus = hop_terms(dn, up);
  switch (c) {
    case SpinComp::plus: return plus;
    case SpinComp::minus: return minus;
    case SpinComp::z: return sum(scaled(number_terms(up), 0.5), scaled(number_terms(dn), -0.5));
    case SpinComp::x: return scaled(sum(plus, minus), 0.5);
    case SpinComp::y: return sum(scaled(plus, cplx(0, -0.5)), scaled(minus, cplx(0, 0.5)));
  }
  throw std::invalid_argument("spin_terms: bad component");
}

TermList total_spin_terms(int n_sites, SpinComp c) {
  TermList out;
  for (Species s : {Species::d, Species::f})
    for (int x = 0; x < n_sites; ++x) out = sum(std::move(out), spin_terms(n_sites, s, x, c));
  return out;
}

namespace {

void require_two_species(const ElectronSpace& space, const char* what) {
  if (space.kind() == ElectronSpace::Kind::OneSpecies)
    throw std::invalid_argument(std::string(what) + ": needs a two-species space");
}

}  // namespace

SpMat spin_op(const ElectronSpace& space, Species s, int x, SpinComp c) {
  require_two_species(space, "spin_op");
  return build_operator(space, spin_terms(space.n_sites(), s, x, c));
}

SpMat total_spin(const ElectronSpace& space, SpinComp c) {
  require_two_species(space, "total_spin");
  return build_operator(space, total_spin_terms(space.n_sites(), c));
}

// S^2 = Sz^2 + (S+S- + S-S+)/2; every term conserves the magnetisation
SpMat spin_squared(const ElectronSpace& space) {
  require_two_species(space, "spin_squared");
  const int n = space.n_sites();
  TermList z = total_spin_terms(n, SpinComp::z), p = total_spin_terms(n, SpinComp::plus),
           m = total_spin_terms(n, SpinComp::minus);
  TermList all = sum(product(z, z), scaled(sum(product(p, m), product(m, p)), 0.5));
  return build_operator(space, all);
}

namespace {

// one species: d bits 0..n-1, f bits n..2n-1
bool in_E(Mask s, const Config& c, int n) {
  const Mask all = (Mask(1) << n) - 1;
  const Mask d = s & all, f = (s >> n) & all;
  if (f != c.f) return false;
  const Mask must = c.d & ~c.f, never = c.f & ~c.d;
  return (d & must) == must && (d & never) == 0;
}

SpMat diagonal_from(const ElectronSpace& space, const std::function<bool(Mask)>& keep) {
  std::vector<cplx> d(space.dim());
  for (int i = 0; i < space.dim(); ++i) d[i] = keep(space.mask(i)) ? 1.0 : 0.0;
  return diagonal_sparse(d);
}

}  // namespace

SpMat projector(ProjKind kind, const Config& c, const ElectronSpace& space) {
  const int n = space.n_sites();
  if (!in_C(c, n)) throw std::invalid_argument("projector: configuration not in C");
  const Mask all = (Mask(1) << n) - 1;
  const Mask species_mask = (Mask(1) << (2 * n)) - 1;
  if (kind == ProjKind::E) {
    if (space.kind() != ElectronSpace::Kind::OneSpecies)
      throw std::invalid_argument("projector: E acts on the one-species space");
    return diagonal_from(space, [&](Mask s) { return in_E(s, c, n); });
  }
  require_two_species(space, "projector");
  auto f_of = [&](Mask s, int spin) { return (s >> (2 * n * spin + n)) & all; };
  switch (kind) {
    case ProjKind::P:
      return diagonal_from(space, [&](Mask s) { return f_of(s, 0) == c.f && f_of(s, 1) == c.f; });
    case ProjKind::Q:
      return diagonal_from(space, [&](Mask s) { return f_of(s, 0) == c.d && f_of(s, 1) == c.d; });
    default:
      return diagonal_from(space, [&](Mask s) {
        return popcount(s & species_mask) == n && in_E(s & species_mask, c, n) && in_E(s >> (2 * n), c, n);
      });
  }
}

TermList hybrid_terms(HybridKind kind, int x, int y, Spin s, int n_sites, const Lattice& lat, double V) {
  if (x < 0 || y < 0 || x >= n_sites || y >= n_sites) throw std::out_of_range("hybrid_terms: site out of range");
  auto d = [&](int z) { return global_mode(n_sites, {Species::d, z}, s); };
  auto f = [&](int z) { return global_mode(n_sites, {Species::f, z}, s); };
  switch (kind) {
    case HybridKind::v_minus: return hop_terms(f(x), d(x));
    case HybridKind::v_plus: return hop_terms(d(x), f(x));
    case HybridKind::B_minus:
      return x == y ? scaled(hop_terms(f(x), d(x)), V) : scaled(hop_terms(d(x), d(y)), lat.t(x, y));
    case HybridKind::B_plus:
      return x == y ? scaled(hop_terms(d(x), f(x)), V) : scaled(hop_terms(d(y), d(x)), lat.t(x, y));
  }
  throw std::invalid_argument("hybrid_terms: bad kind");
}

SpMat hybrid_op(HybridKind kind, int x, int y, Spin s, const ElectronSpace& space, const Lattice& lat, double V) {
  const bool weighted = kind == HybridKind::B_minus || kind == HybridKind::B_plus;
  if (weighted && space.kind() != ElectronSpace::Kind::OneSpecies)
    throw std::invalid_argument("hybrid_op: B acts on the one-species space");
  if (!weighted) require_two_species(space, "hybrid_op");
  // on the one-species space the spin label only selects the mode block, so use the up block
  Spin use = weighted ? Spin::up : s;
  return build_operator(space, hybrid_terms(kind, x, y, use, space.n_sites(), lat, V));
}

InteractionOps interaction_projectors(const ElectronSpace& space, double Uf, double Ud_eff) {
  require_two_species(space, "interaction_projectors");
  const int n = space.n_sites();
  std::vector<cplx> r0(space.dim()), r1(space.dim());
  for (int i = 0; i < space.dim(); ++i) {
    Mask m = space.mask(i);
    double a = 0, b = 0;
    for (int x = 0; x < n; ++x) {
      bool fu = m >> (n + x) & 1, fd = m >> (3 * n + x) & 1;
      bool du = m >> x & 1, dd = m >> (2 * n + x) & 1;
      a += (fu && fd) + (!fu && !fd);
      b += du && dd;
    }
    r0[i] = 0.5 * Uf * a;
    r1[i] = Ud_eff * b;
  }
  return {diagonal_sparse(r0), diagonal_sparse(r1)};
}

}  // namespace pam
