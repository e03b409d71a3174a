#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "pam/graph.hpp"
#include "pam/operators.hpp"

using namespace pam;
using doctest::Approx;

namespace {

double dist(const SpMat& a, const SpMat& b) { return max_abs(SpMat(a - b)); }

Vec basis_vec(int dim, int i) {
  Vec v = Vec::Zero(dim);
  v[i] = 1.0;
  return v;
}

int md(int n, int x, Spin s) { return global_mode(n, {Species::d, x}, s); }
int mf(int n, int x, Spin s) { return global_mode(n, {Species::f, x}, s); }

}  // namespace

TEST_CASE("single spin and su(2) identities") {
  auto fs = ElectronSpace::fock(1);
  SpMat Sz = spin_op(fs, Species::f, 0, SpinComp::z);
  Vec v = basis_vec(fs.dim(), fs.index(Mask(1) << mf(1, 0, Spin::up)));
  CHECK((Sz * v - 0.5 * v).norm() < 1e-15);

  for (Species s : {Species::d, Species::f}) {
    SpMat Sx = spin_op(fs, s, 0, SpinComp::x), Sy = spin_op(fs, s, 0, SpinComp::y);
    SpMat Sz2 = spin_op(fs, s, 0, SpinComp::z);
    SpMat Sp = spin_op(fs, s, 0, SpinComp::plus), Sm = spin_op(fs, s, 0, SpinComp::minus);
    CHECK(hermiticity_residual(Sx) < 1e-15);
    CHECK(hermiticity_residual(Sy) < 1e-15);
    SpMat lhs = Sp * Sm + Sm * Sp + 2.0 * Sz2 * Sz2;
    SpMat rhs = 2.0 * (Sx * Sx + Sy * Sy + Sz2 * Sz2);
    CHECK(dist(lhs, rhs) < 1e-14);
    CHECK(dist(SpMat(Sx + cplx(0, 1) * Sy), Sp) < 1e-15);
  }
}

TEST_CASE("total spin algebra on the fixed-N space") {
  auto sp = ElectronSpace::fixed_n(2);
  SpMat X = total_spin(sp, SpinComp::x), Y = total_spin(sp, SpinComp::y), Z = total_spin(sp, SpinComp::z);
  CHECK(dist(SpMat(X * Y - Y * X), SpMat(cplx(0, 1) * Z)) < 1e-13);
  CHECK(dist(SpMat(Y * Z - Z * Y), SpMat(cplx(0, 1) * X)) < 1e-13);
  CHECK(dist(SpMat(Z * X - X * Z), SpMat(cplx(0, 1) * Y)) < 1e-13);
  SpMat S2 = spin_squared(sp);
  CHECK(dist(S2, SpMat(X * X + Y * Y + Z * Z)) < 1e-13);
  Eigen::SelfAdjointEigenSolver<Mat> es{Mat(S2)};
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    double e = es.eigenvalues()[i];
    double S = 0.5 * (std::sqrt(1 + 4 * std::max(e, 0.0)) - 1);
    CHECK(e > -1e-12);
    CHECK(std::abs(2 * S - std::round(2 * S)) < 1e-9);
  }
}

TEST_CASE("singlet of one site's d,f pair has S^2 = 0") {
  auto sp = ElectronSpace::fixed_n(1);
  // (d_up^dag f_dn^dag - d_dn^dag f_up^dag)|0> / sqrt2
  auto fock = ElectronSpace::fock(1);
  TermList t1{{1.0, {{md(1, 0, Spin::up), Ladder::create}, {mf(1, 0, Spin::down), Ladder::create}}}};
  TermList t2{{-1.0, {{md(1, 0, Spin::down), Ladder::create}, {mf(1, 0, Spin::up), Ladder::create}}}};
  SpMat A = build_operator(fock, sum(t1, t2));
  Vec vac = basis_vec(fock.dim(), 0);
  Vec psi_f = A * vac / std::sqrt(2.0);
  Vec psi = Vec::Zero(sp.dim());
  for (int i = 0; i < fock.dim(); ++i)
    if (std::abs(psi_f[i]) > 0) psi[sp.index(fock.mask(i))] = psi_f[i];
  CHECK(psi.norm() == Approx(1.0));
  CHECK((spin_squared(sp) * psi).norm() < 1e-14);
  // fully polarised up pair: S = 1
  SpMat B = build_operator(fock, TermList{{1.0, {{md(1, 0, Spin::up), Ladder::create},
                                                   {mf(1, 0, Spin::up), Ladder::create}}}});
  Vec t_f = B * vac;
  Vec t = Vec::Zero(sp.dim());
  for (int i = 0; i < fock.dim(); ++i)
    if (std::abs(t_f[i]) > 0) t[sp.index(fock.mask(i))] = t_f[i];
  CHECK((spin_squared(sp) * t - 2.0 * t).norm() < 1e-14);
}

TEST_CASE("projectors") {
  const int n = 2;
  auto m0 = ElectronSpace::m0(n);
  auto one = ElectronSpace::one_species(n);
  SectorBasis b(n);
  Config F = full_f(n);
  SpMat PF = projector(ProjKind::P, F, m0);
  Vec ff = basis_vec(m0.dim(), pair_index(b, F, F));
  CHECK((PF * ff - ff).norm() == 0.0);
  for (const Config& X : enumerate_configs(n)) {
    for (ProjKind k : {ProjKind::P, ProjKind::Q, ProjKind::EE}) {
      SpMat P = projector(k, X, m0);
      CHECK(dist(SpMat(P * P), P) < 1e-14);
      CHECK(hermiticity_residual(P) == 0.0);
    }
    SpMat E = projector(ProjKind::E, X, one);
    CHECK(dist(SpMat(E * E), E) < 1e-14);
    Vec x = basis_vec(one.dim(), config_vector(X, b));
    CHECK((E * x - x).norm() == 0.0);
    // rank of E_X from a direct count of the free d-sites
    const int free_sites = n - sym_diff(X);
    const int free_d = popcount(X.d & X.f);
    CHECK(std::lround(Mat(E).trace().real()) == oracle::binom(free_sites, free_d));
    SpMat EE = projector(ProjKind::EE, X, m0);
    CHECK(std::lround(Mat(EE).trace().real()) == oracle::binom(free_sites, free_d) * oracle::binom(free_sites, free_d));
  }
  // E_X |Y> = 0 for a d-edge neighbour whose hop changes a constrained d-site
  auto lat = chain(2);
  Config X = config_of({0}, {1}), Y = config_of({1}, {1});
  REQUIRE(classify_edge(X, Y, lat).kind == EdgeKind::d_edge);
  CHECK((projector(ProjKind::E, X, one) * basis_vec(one.dim(), config_vector(Y, b))).norm() == 0.0);
  // but E_X does not separate d-edges that only move a d-electron between unconstrained sites:
  // X = ({0},{0}) and Y = ({1},{0}) both lie in the range of E_X
  Config X2 = config_of({0}, {0}), Y2 = config_of({1}, {0});
  REQUIRE(classify_edge(X2, Y2, lat).kind == EdgeKind::d_edge);
  Vec y = basis_vec(one.dim(), config_vector(Y2, b));
  CHECK((projector(ProjKind::E, X2, one) * y - y).norm() == 0.0);
  CHECK(std::lround(Mat(projector(ProjKind::EE, config_of({0}, {1}), m0)).trace().real()) == 1);
}

TEST_CASE("hybridisation operators") {
  const int n = 2;
  auto fs = ElectronSpace::fock(n);
  auto lat = chain(n);
  for (int x = 0; x < n; ++x)
    for (Spin s : {Spin::up, Spin::down}) {
      SpMat vm = hybrid_op(HybridKind::v_minus, x, x, s, fs, lat, 1.0);
      SpMat vp = hybrid_op(HybridKind::v_plus, x, x, s, fs, lat, 1.0);
      SpMat nf = number_op(fs, mf(n, x, s)), nd = number_op(fs, md(n, x, s));
      SpMat I = identity<cplx>(fs.dim());
      CHECK(dist(SpMat(vm * vp), SpMat(nf * (I - nd))) == 0.0);
      CHECK(dist(SpMat(vp * vm), SpMat((I - nf) * nd)) == 0.0);
      CHECK(max_abs(SpMat(vm * vm)) == 0.0);
    }
  // B^-_{1,1}|{d1}> = +-V|{f1}>
  auto one = ElectronSpace::one_species(1);
  SectorBasis b1(1);
  SpMat B = hybrid_op(HybridKind::B_minus, 0, 0, Spin::up, one, chain(1), 0.7);
  Vec d1 = basis_vec(2, config_vector(config_of({0}, {}), b1));
  Vec f1 = basis_vec(2, config_vector(config_of({}, {0}), b1));
  Vec out = B * d1;
  CHECK(std::abs(std::abs(out.dot(f1)) - 0.7) < 1e-15);
  CHECK((out - out.dot(f1) * f1).norm() == 0.0);
}

TEST_CASE("Lemma A.1 identities hold exactly") {
  const int n = 2;
  auto fs = ElectronSpace::fock(n);
  auto lat = chain(n);
  const SpMat I = identity<cplx>(fs.dim());
  const Spin spins[2] = {Spin::up, Spin::down};
  auto v = [&](int sgn, int x, Spin s) {
    return hybrid_op(sgn < 0 ? HybridKind::v_minus : HybridKind::v_plus, x, x, s, fs, lat, 1.0);
  };
  double worst = 0;
  for (int x = 0; x < n; ++x)
    for (Spin s : spins) {
      SpMat nf = number_op(fs, mf(n, x, s)), nbf = I - nf;
      SpMat nd = number_op(fs, md(n, x, s)), nbd = I - nd;
      for (int y = 0; y < n; ++y)
        for (Spin t : spins) {
          const bool same = (x == y && s == t);
          worst = std::max(worst, dist(SpMat(nf * v(-1, y, t) * nbf), same ? v(-1, x, s) : SpMat(I * 0.0)));
          worst = std::max(worst, max_abs(SpMat(nf * v(+1, y, t) * nbf)));
          worst = std::max(worst, dist(SpMat(nbf * v(+1, y, t) * nf), same ? v(+1, x, s) : SpMat(I * 0.0)));
          worst = std::max(worst, max_abs(SpMat(nbf * v(-1, y, t) * nf)));
          for (int y2 = 0; y2 < n; ++y2)
            for (Spin t2 : spins) {
              const bool both = same && y2 == x && t2 == s;
              worst = std::max(worst, dist(SpMat(nf * v(-1, y, t) * nbf * v(+1, y2, t2) * nf),
                                           both ? SpMat(nf * nbd) : SpMat(I * 0.0)));
              worst = std::max(worst, max_abs(SpMat(nf * v(-1, y, t) * nbf * v(-1, y2, t2) * nf)));
              worst = std::max(worst, max_abs(SpMat(nf * v(+1, y, t) * nbf * v(+1, y2, t2) * nf)));
              worst = std::max(worst, max_abs(SpMat(nf * v(+1, y, t) * nbf * v(-1, y2, t2) * nf)));
              worst = std::max(worst, dist(SpMat(nbf * v(+1, y, t) * nf * v(-1, y2, t2) * nbf),
                                           both ? SpMat(nbf * nd) : SpMat(I * 0.0)));
              worst = std::max(worst, max_abs(SpMat(nbf * v(-1, y, t) * nf * v(-1, y2, t2) * nbf)));
              worst = std::max(worst, max_abs(SpMat(nbf * v(+1, y, t) * nf * v(+1, y2, t2) * nbf)));
              // v^- then v^+: the ordering mirrored from the n^f block (the v^+ v^- ordering is the nonzero case above)
              worst = std::max(worst, max_abs(SpMat(nbf * v(-1, y, t) * nf * v(+1, y2, t2) * nbf)));
            }
        }
    }
  CHECK(worst == 0.0);
}

namespace {

// v^eps_{Y,s} as a product over the sites of Y in site order
SpMat v_product(const ElectronSpace& sp, const Lattice& lat, Mask Y, const std::vector<int>& eps, Spin s) {
  SpMat out = identity<cplx>(sp.dim());
  int k = 0;
  for (int x = 0; x < lat.n_sites(); ++x)
    if (Y >> x & 1) {
      out = SpMat(out * hybrid_op(eps[k++] < 0 ? HybridKind::v_minus : HybridKind::v_plus, x, x, s, sp, lat, 1.0));
    }
  return out;
}

SpMat P1_of(const ElectronSpace& sp, const Config& X, int n) {
  // f occupied on X_d & X_f, f empty outside X_d | X_f, both spins
  std::vector<cplx> d(sp.dim());
  const Mask in = X.d & X.f, out = ~(X.d | X.f) & ((Mask(1) << n) - 1);
  for (int i = 0; i < sp.dim(); ++i) {
    Mask m = sp.mask(i);
    bool ok = true;
    for (int s = 0; s < 2; ++s) {
      Mask f = (m >> (2 * n * s + n)) & ((Mask(1) << n) - 1);
      ok = ok && ((f & in) == in) && ((f & out) == 0);
    }
    d[i] = ok ? 1.0 : 0.0;
  }
  return diagonal_sparse(d);
}

}  // namespace

TEST_CASE("Lemma A.2 selection rule and K*K = EE") {
  for (int n : {1, 2}) {
    auto m0 = ElectronSpace::m0(n);
    auto lat = chain(n);
    double worst = 0;
    for (const Config& X : enumerate_configs(n)) {
      const int N = sym_diff(X);
      SpMat P = projector(ProjKind::P, X, m0), Q = projector(ProjKind::Q, X, m0);
      const Mask dX = X.d ^ X.f;
      std::vector<int> epsX;
      for (int x = 0; x < n; ++x)
        if (dX >> x & 1) epsX.push_back((X.d >> x & 1) ? -1 : +1);
      const Mask dmf = X.d & ~X.f, fmd = X.f & ~X.d;
      SpMat K = v_product(m0, lat, dmf, std::vector<int>(popcount(dmf), -1), Spin::up) *
                v_product(m0, lat, dmf, std::vector<int>(popcount(dmf), -1), Spin::down) *
                v_product(m0, lat, fmd, std::vector<int>(popcount(fmd), +1), Spin::up) *
                v_product(m0, lat, fmd, std::vector<int>(popcount(fmd), +1), Spin::down) * P1_of(m0, X, n);
      worst = std::max(worst, dist(SpMat(K.adjoint() * K), projector(ProjKind::EE, X, m0)));
      for (Mask Y = 0; Y < (Mask(1) << n); ++Y) {
        if (popcount(Y) > N) continue;
        for (Mask Yp = 0; Yp < (Mask(1) << n); ++Yp) {
          if (popcount(Yp) > N) continue;
          for (int e = 0; e < (1 << popcount(Y)); ++e)
            for (int ep = 0; ep < (1 << popcount(Yp)); ++ep) {
              std::vector<int> eps, epsp;
              for (int k = 0; k < popcount(Y); ++k) eps.push_back((e >> k & 1) ? +1 : -1);
              for (int k = 0; k < popcount(Yp); ++k) epsp.push_back((ep >> k & 1) ? +1 : -1);
              SpMat lhs = Q * v_product(m0, lat, Y, eps, Spin::up) * v_product(m0, lat, Yp, epsp, Spin::down) * P;
              const bool match = Y == dX && Yp == dX && eps == epsX && epsp == epsX;
              worst = std::max(worst, match ? dist(lhs, K) : max_abs(lhs));
            }
        }
      }
    }
    CHECK(worst == 0.0);
  }
}

TEST_CASE("interaction projectors") {
  auto m0 = ElectronSpace::m0(1);
  SectorBasis b(1);
  Config F = full_f(1);
  auto R = interaction_projectors(m0, 2.0, 0.0);
  Vec ff = basis_vec(m0.dim(), pair_index(b, F, F));
  // only the doubly occupied f term contributes: (U^f/2) * 1
  CHECK((R.R0 * ff - 1.0 * ff).norm() < 1e-15);
  CHECK(max_abs(R.R1) == 0.0);
  auto m2 = ElectronSpace::m0(2);
  auto R2 = interaction_projectors(m2, 3.0, 0.5);
  CHECK(hermiticity_residual(R2.R0) == 0.0);
  for (int i = 0; i < m2.dim(); ++i) {
    double e = R2.R0.coeff(i, i).real();
    CHECK(e >= 0.0);
    CHECK(e <= 1.5 * 2 + 1e-12);
    CHECK(std::abs(e / 1.5 - std::round(e / 1.5)) < 1e-12);
    CHECK(R2.R1.coeff(i, i).real() >= 0.0);
  }
}

TEST_CASE("operators leaving the space are refused") {
  auto m0 = ElectronSpace::m0(1);
  CHECK_THROWS_AS(spin_op(m0, Species::d, 0, SpinComp::x), std::domain_error);
}
