#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pam/operators.hpp"
#include "pam/positivity.hpp"

using namespace pam;

namespace {

ModelParams params(Model m, double g) {
  ModelParams p;
  p.model = m;
  p.Uf = 2.0;
  p.Ud = 1.0;
  p.V = 1.0;
  p.g = g;
  p.w0 = 1.0;
  p.eps_f = symmetric_epsilon_f(p, m);
  return p;
}

// |X,Y> (x) phonon number state k
Vec product_state(const Config& X, const Config& Y, const SectorBasis& b, long ph_dim, long k = 0) {
  const int D = b.dim();
  Vec v = Vec::Zero(long(D) * D * ph_dim);
  v[(long(config_vector(X, b)) * D + config_vector(Y, b)) * ph_dim + k] = 1.0;
  return v;
}

struct Setup {
  Lattice lat;
  ElectronSpace m0;
  SectorBasis basis;
  PhononSpace ph;
  ConeGeometry geo;
  Setup(int n, int nmax)
      : lat(chain(n)), m0(ElectronSpace::m0(n)), basis(n), ph(build_phonon_ops(n, nmax)),
        geo(cone_geometry(basis, ph)) {}
};

}  // namespace

TEST_CASE("cone membership examples") {
  Setup s(1, 4);
  auto X = config_of({0}, {}), F = full_f(1);
  auto c = cone_membership(product_state(X, X, s.basis, s.ph.dim()), s.geo);
  CHECK(c.member);
  CHECK(c.worst_eigenvalue >= 0.0);
  auto bad = cone_membership(Vec(product_state(X, F, s.basis, s.ph.dim()) + product_state(F, X, s.basis, s.ph.dim())),
                             s.geo);
  CHECK_FALSE(bad.member);
  CHECK(bad.worst_eigenvalue < -0.01);
  CHECK(cone_membership(Vec::Zero(4 * 5), s.geo).member);
  // antihermitian fiber is rejected
  Vec ah = cplx(0, 1) * (product_state(X, F, s.basis, s.ph.dim()) + product_state(F, X, s.basis, s.ph.dim()));
  CHECK_FALSE(cone_membership(ah, s.geo).member);
  auto fb = fibers(product_state(X, X, s.basis, s.ph.dim()), s.geo);
  CHECK(fb.size() == 5);
  for (auto& m : fb) CHECK(m(0, 0).real() > 0.0);
}

TEST_CASE("cone samples") {
  Setup s(1, 4);
  std::mt19937_64 r1(7), r2(7);
  Vec a = sample_cone_element(r1, 1, s.geo), b = sample_cone_element(r2, 1, s.geo);
  CHECK((a - b).norm() == 0.0);
  for (int rank : {1, 2, 4}) {
    for (int k = 0; k < 20; ++k) {
      Vec u = sample_cone_element(r1, rank, s.geo), v = sample_cone_element(r1, rank, s.geo);
      CHECK(cone_membership(u, s.geo, 0.0).member);
      CHECK(cone_membership(Vec(0.5 * (u + v)), s.geo, 1e-14).member);
    }
  }
}

TEST_CASE("semigroup positivity on the deformed Hamiltonian") {
  Setup s(1, 4);
  for (Model m : {Model::d_coupled, Model::f_coupled}) {
    auto hs = build_deformed(s.lat, s.m0, s.ph, params(m, 0.3));
    auto id = semigroup_positivity_check(hs.H, 0.0, 20, 1e-12, s.geo, 3);
    CHECK(id.pass());
    DenseSemigroup sg(hs.H);
    for (double beta : {0.1, 0.5, 1.0}) {
      auto rep = semigroup_positivity_check(sg, beta, 100, 1e-8, s.geo, 20240601);
      CHECK(rep.pass());
      CHECK(rep.n_samples == 100);
      CHECK(rep.per_sample.size() == 100);
      CHECK(rep.worst_hermiticity < 1e-10);
    }
    // the sparse entry point agrees with the cached one
    auto a = semigroup_positivity_check(hs.H, 0.5, 10, 1e-8, s.geo, 5);
    auto b = semigroup_positivity_check(sg, 0.5, 10, 1e-8, s.geo, 5);
    for (int k = 0; k < 10; ++k) CHECK(std::abs(a.per_sample[k] - b.per_sample[k]) < 1e-10);
  }
}

TEST_CASE("negative control produces failures") {
  Setup s(1, 4);
  ModelParams p = params(Model::d_coupled, 0.3);
  auto hs = build_deformed(s.lat, s.m0, s.ph, p);
  SpMat bad = negative_control_hamiltonian(hs, s.m0, s.ph, p);
  CHECK(hermiticity_residual(bad) < 1e-12);
  CHECK(max_abs(SpMat(bad - hs.H)) > 0.1);
  int fails = 0;
  for (double beta : {0.1, 0.5, 1.0}) fails += semigroup_positivity_check(bad, beta, 100, 1e-8, s.geo, 20240601).n_fail;
  CHECK(fails > 0);
}

TEST_CASE("ground state of the deformed Hamiltonian is in the cone") {
  Setup s(1, 4);
  auto hs = build_deformed(s.lat, s.m0, s.ph, params(Model::d_coupled, 0.3));
  auto gs = ground_state(hs.H);
  CHECK(gs.unique);
  // fix the global phase by the |F,F;vac> component
  Vec psi = gs.psi;
  cplx ref = psi[(long(config_vector(full_f(1), s.basis)) * 2 + config_vector(full_f(1), s.basis)) * s.ph.dim()];
  REQUIRE(std::abs(ref) > 1e-8);
  psi *= std::conj(ref) / std::abs(ref);
  auto c = cone_membership(psi, s.geo);
  CHECK(c.member);
  CHECK(c.worst_eigenvalue > 0.0);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    Vec u = sample_cone_element(rng, 0, s.geo);
    CHECK(psi.dot(u).real() > 0.0);
  }
}

TEST_CASE("monotonicity against the free semigroup") {
  Setup s(1, 4);
  auto hs = build_deformed(s.lat, s.m0, s.ph, params(Model::d_coupled, 0.3));
  DenseSemigroup full(hs.H), free(hs.H0);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    Vec u = sample_cone_element(rng, 0, s.geo), v = sample_cone_element(rng, 0, s.geo);
    double a = u.dot(full.apply(v, 0.5)).real(), b = u.dot(free.apply(v, 0.5)).real();
    CHECK(a >= b - 1e-12);
    CHECK(b >= -1e-12);
  }
  // R0 and R1 preserve the cone
  for (int k = 0; k < 20; ++k) {
    Vec u = sample_cone_element(rng, 0, s.geo);
    CHECK(cone_membership(Vec(hs.R0 * u), s.geo).member);
    CHECK(cone_membership(Vec(hs.R1 * u), s.geo).member);
  }
}

TEST_CASE("ergodicity witness") {
  for (int n : {1, 2}) {
    Setup s(n, n == 1 ? 4 : 2);
    auto hs = build_deformed(s.lat, s.m0, s.ph, params(Model::d_coupled, 0.3));
    Eigen::VectorXd vac = vacuum_frame(s.geo);
    CHECK(vac.minCoeff() > 0.0);
    CHECK(std::abs(ergodicity_witness(hs.H, vac, vac, 0.0, s.basis, s.geo) - vac.squaredNorm()) < 1e-12);
    CHECK(ergodicity_witness(hs.H, vac, vac, 0.05, s.basis, s.geo) > 0.0);
  }
}

TEST_CASE("F_beta at beta = 0 and asymptotics") {
  Setup s2(2, 1);
  auto h2 = build_deformed(s2.lat, s2.m0, s2.ph, params(Model::d_coupled, 0.3));
  DenseSemigroup sg2(h2.H0);
  auto X = config_of({0}, {0});
  Mat F0 = F_beta(X, 0.0, sg2, s2.m0, s2.ph);
  SpMat EE = embed_electron(projector(ProjKind::EE, X, s2.m0), s2.ph);
  CHECK((F0 - Mat(EE)).cwiseAbs().maxCoeff() < 1e-14);
  auto lin = asymptotic_check(X, {0.05, 0.025, 0.0125, 0.00625}, sg2, s2.m0, s2.ph, 1.0);
  CHECK(lin.exponent == 0);
  CHECK(lin.fitted_order > 0.8);
  CHECK(lin.fitted_order < 1.2);

  Setup s(1, 4);
  auto hs = build_deformed(s.lat, s.m0, s.ph, params(Model::d_coupled, 0.3));
  DenseSemigroup sg(hs.H0);
  auto Y = config_of({0}, {});
  auto rep = asymptotic_check(Y, {0.05, 0.025, 0.0125, 0.00625}, sg, s.m0, s.ph, 1.0);
  CHECK(rep.exponent == 4);
  CHECK(rep.pass);
  for (std::size_t i = 1; i < rep.residuals.size(); ++i) CHECK(rep.residuals[i] < rep.residuals[i - 1]);
  for (double r : rep.ratios) CHECK(r >= 1.5);
  CHECK_FALSE(rep.outside_assumptions);
  CHECK_THROWS_AS(asymptotic_check(Y, {0.2, 0.1}, sg, s.m0, s.ph, 1.0), std::invalid_argument);

  // F_beta maps cone samples into the cone
  std::mt19937_64 rng(3);
  Mat Fb = F_beta(Y, 0.3, sg, s.m0, s.ph);
  for (int k = 0; k < 10; ++k) CHECK(cone_membership(Vec(Fb * sample_cone_element(rng, 0, s.geo)), s.geo).member);

  // V = 0: leading term absent, flagged
  ModelParams p0 = params(Model::d_coupled, 0.3);
  p0.V = 0.0;
  SpMat H0v = hs.H0 - hybrid_block(s.m0, s.ph, Spin::up, +1, 1.0, 0.3, 1.0) -
              hybrid_block(s.m0, s.ph, Spin::down, -1, 1.0, 0.3, 1.0);
  DenseSemigroup sg0(H0v);
  auto out = asymptotic_check(Y, {0.2, 0.1, 0.05, 0.025}, sg0, s.m0, s.ph, 0.0);
  CHECK(out.outside_assumptions);
  CHECK_FALSE(out.pass);
}

TEST_CASE("path products") {
  Setup s(1, 4);
  auto hs = build_deformed(s.lat, s.m0, s.ph, params(Model::d_coupled, 0.3));
  DenseSemigroup sg(hs.H0);
  Vec vac = Vec::Zero(s.ph.dim());
  vac[0] = 1.0;
  auto triv = path_product_check({full_f(1)}, s.lat, {0.1, 0.05}, vac, sg, s.m0, s.basis, s.ph);
  CHECK(triv.pass);
  CHECK(triv.exponent == 0);
  for (double c : triv.c) CHECK(std::abs(c - 1.0) < 1e-12);
  auto X = config_of({0}, {});
  ConfigPath path{full_f(1), X};
  REQUIRE(validate_path(path, s.lat).valid);
  auto rep = path_product_check(path, s.lat, {0.2, 0.1, 0.05, 0.025}, vac, sg, s.m0, s.basis, s.ph);
  CHECK(rep.exponent == 2);
  for (double c : rep.c) CHECK(c > 0.0);
  CHECK(rep.off_residual.back() < 1e-6);
  for (std::size_t i = 1; i < rep.phonon_error.size(); ++i) CHECK(rep.phonon_error[i] < rep.phonon_error[i - 1]);
  CHECK(rep.pass);
  CHECK_THROWS_AS(path_product_check({full_f(1), full_f(1)}, s.lat, {0.1}, vac, sg, s.m0, s.basis, s.ph),
                  std::invalid_argument);
}

TEST_CASE("dominant configuration") {
  Setup s(1, 3);
  auto X = config_of({0}, {}), F = full_f(1);
  auto r = dominant_config(product_state(X, X, s.basis, s.ph.dim()), s.m0, s.basis, s.ph);
  CHECK(r.X == X);
  CHECK(r.identity_residual < 1e-14);
  // tie: both have |sym diff| = 1, enumeration order decides
  Vec mix = product_state(X, X, s.basis, s.ph.dim()) + product_state(F, F, s.basis, s.ph.dim());
  CHECK(dominant_config(mix, s.m0, s.basis, s.ph).X == enumerate_configs(1)[0]);
  CHECK(dominant_config(product_state(F, F, s.basis, s.ph.dim()), s.m0, s.basis, s.ph).X == F);
  CHECK_THROWS_AS(dominant_config(Vec::Zero(4 * s.ph.dim()), s.m0, s.basis, s.ph), std::logic_error);
  Setup s2(2, 1);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 10; ++k) {
    auto d = dominant_config(sample_cone_element(rng, 0, s2.geo), s2.m0, s2.basis, s2.ph);
    CHECK(d.identity_residual < 1e-10);
  }
}
