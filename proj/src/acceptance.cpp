#include "pam/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pam/graph.hpp"
#include "pam/hamiltonian.hpp"
#include "pam/operators.hpp"
#include "pam/positivity.hpp"
#include "pam/spectral.hpp"
#include "pam/transforms.hpp"

namespace pam {

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "FAILED " << what << "; ";
    }
  }
};

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

ModelParams regime_params(Model m, double g, double Ud = 1.0) {
  ModelParams p;
  p.model = m;
  p.Uf = 2.0;
  p.Ud = Ud;
  p.V = 1.0;
  p.g = g;
  p.w0 = 1.0;
  p.eps_f = theorem_epsilon_f(p);
  return p;
}

std::vector<double> lowest_dense(const SpMat& H, int k) {
  Eigen::SelfAdjointEigenSolver<Mat> es{Mat(H), Eigen::EigenvaluesOnly};
  std::vector<double> out;
  for (int i = 0; i < k && i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

struct ModelRun {
  GroundStateResult gs;
  SpinResult spin;
  CorrelatorTable tab;
};

ModelRun run_model(Model m, double g, int nmax, int n = 2) {
  auto lat = chain(n);
  auto m0 = ElectronSpace::m0(n);
  auto ph = build_phonon_ops(n, nmax);
  auto hs = build_model(lat, m0, &ph, regime_params(m, g));
  ModelRun r;
  r.gs = ground_state(hs.H);
  r.spin = total_spin_of(r.gs.psi, spin_squared(m0), ph.dim());
  r.tab = correlator_table(r.gs.psi, m0, lat, ph.dim(), 1e-10);
  return r;
}

const double kG[] = {0.0, 0.3, 0.5};

Outcome uniqueness(Model m) {
  Outcome o;
  for (double g : kG) {
    auto a = run_model(m, g, 4), b = run_model(m, g, 6);
    double rel = std::abs(b.gs.gap / a.gs.gap - 1.0);
    o.detail << "g=" << g << ": gap " << sci(a.gs.gap) << ", <S^2> " << sci(std::abs(a.spin.expectation))
             << ", gap drift " << sci(rel) << "; ";
    o.require(a.gs.gap > 1e-6 && b.gs.gap > 1e-6, "gap > 1e-6");
    o.require(std::abs(a.spin.expectation) < 1e-8 && std::abs(b.spin.expectation) < 1e-8, "<S^2> < 1e-8");
    o.require(rel <= 0.2, "gap stable within 20% between n_max 4 and 6");
  }
  return o;
}

Outcome correlators() {
  Outcome o;
  for (Model m : {Model::d_coupled, Model::f_coupled})
    for (double g : kG) {
      auto r = run_model(m, g, 4);
      double same = std::numeric_limits<double>::infinity(), mixed = -same;
      for (auto& row : r.tab.rows)
        if (row.species == "dd" || row.species == "ff")
          same = std::min(same, row.value);
        else
          mixed = std::max(mixed, row.value);
      o.detail << to_string(m) << " g=" << g << ": min dd/ff " << sci(same) << ", max df/fd " << sci(mixed) << "; ";
      o.require(r.tab.rows.size() == 32 && r.tab.all_positive(), "all 32 entries > 1e-10");
    }
  return o;
}

Outcome g0_reduction() {
  Outcome o;
  auto lat = chain(2);
  auto m0 = ElectronSpace::m0(2);
  auto ph = build_phonon_ops(2, 4);
  // U^d = 0 makes the electronic part exactly the symmetric PAM
  ModelParams p = regime_params(Model::d_coupled, 0.0, 0.0);
  ModelParams pam = p;
  pam.model = Model::PAM;
  pam.eps_f = symmetric_epsilon_f_pam(pam);
  o.require(std::abs(p.eps_f - pam.eps_f) < 1e-15, "eps_f reduces to -Uf/2");
  auto full = lowest_dense(build_model(lat, m0, &ph, p).H, 10);
  auto el = lowest_dense(build_model(lat, m0, nullptr, pam).H, m0.dim());
  std::vector<double> sums;
  for (double e : el)
    for (long k = 0; k < ph.dim(); ++k) sums.push_back(e + p.w0 * ph.total_occupation(k));
  std::sort(sums.begin(), sums.end());
  double diff = 0;
  for (int i = 0; i < 10; ++i) diff = std::max(diff, std::abs(full[i] - sums[i]));
  o.detail << "lowest 10 levels vs PAM + phonon ladder: " << sci(diff) << "; ";
  o.require(diff < 1e-10, "spectrum match to 1e-10");
  // symmetric PAM theorem checks
  auto H = build_model(lat, m0, nullptr, pam).H;
  auto gs = ground_state(H);
  auto spin = total_spin_of(gs.psi, spin_squared(m0));
  auto tab = correlator_table(gs.psi, m0, lat, 1, 1e-10);
  o.detail << "PAM gap " << sci(gs.gap) << ", S " << spin.S << ", min correlator " << sci(tab.min_value()) << "; ";
  o.require(gs.unique && spin.S == 0.0 && spin.eigenvector, "symmetric PAM uniqueness with S=0");
  o.require(tab.all_positive(), "symmetric PAM correlators all > 1e-10");
  return o;
}

Outcome transformation_lemmas() {
  Outcome o;
  auto lat = chain(1);
  auto m0 = ElectronSpace::m0(1);
  const double g = 0.1;
  for (Model m : {Model::d_coupled, Model::f_coupled}) {
    Species s = m == Model::d_coupled ? Species::d : Species::f;
    ModelParams p = regime_params(m, g);
    auto ph = build_phonon_ops(1, 8);
    auto full = build_model(lat, m0, &ph, p);
    SpMat guard = occupancy_guard(m0.dim(), ph, ph.n_max() - 2);
    SpMat U = SpMat(phonon_rotation(m0.dim(), ph).U * lang_firsov(m0, ph, s, g, p.w0).U);
    double lf = verify_conjugation(U, full.H, build_lf_rotated(lat, m0, ph, p), guard);
    auto def = build_deformed(lat, m0, ph, p);
    auto C = composite(m0, ph, lat, s, g, p.w0);
    SpMat shifted = SpMat(def.H) - def.shift * identity<cplx>(def.H.rows());
    double comp = verify_conjugation(SpMat(C.U.adjoint()), full.H, shifted, guard);
    o.detail << to_string(m) << ": Lang-Firsov identity " << sci(lf) << ", deformation identity " << sci(comp)
             << "; ";
    o.require(lf < 1e-5, to_string(m) + " Lang-Firsov identity < 1e-5 on occupancy <= n_max-2");
    o.require(comp < 1e-5, to_string(m) + " deformation identity < 1e-5 on occupancy <= n_max-2");
    std::vector<double> diffs;
    for (int nmax : {6, 8, 10}) {
      auto ph2 = build_phonon_ops(1, nmax);
      auto f2 = build_model(lat, m0, &ph2, p);
      auto d2 = build_deformed(lat, m0, ph2, p);
      auto C2 = composite(m0, ph2, lat, s, g, p.w0);
      auto a = lowest_dense(SpMat(SpMat(C2.U.adjoint()) * f2.H * C2.U), 5);
      auto b = lowest_dense(d2.H, 5);
      double d = 0;
      for (int i = 0; i < 5; ++i) d = std::max(d, std::abs(a[i] + d2.shift - b[i]));
      diffs.push_back(d);
    }
    o.detail << "spectral gap to deformed H at n_max 6/8/10: " << sci(diffs[0]) << "/" << sci(diffs[1]) << "/"
             << sci(diffs[2]) << "; ";
    o.require(diffs[0] < 1e-8, to_string(m) + " spectral equivalence at n_max=6 < 1e-8");
    o.require(diffs[1] <= diffs[0] * 1.01 + 1e-13 && diffs[2] <= diffs[1] * 1.01 + 1e-13,
              to_string(m) + " agreement improves with n_max");
  }
  return o;
}

bool has_b_witness(const Config& X, const Config& Y, const Lattice& lat, const ElectronSpace& one,
                   const SectorBasis& b) {
  const int n = lat.n_sites();
  int ix = config_vector(X, b), iy = config_vector(Y, b);
  for (HybridKind k : {HybridKind::B_minus, HybridKind::B_plus})
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        Vec v = Vec(hybrid_op(k, x, y, Spin::up, one, lat, 1.0).col(ix));
        double on = std::abs(v[iy]);
        v[iy] = 0;
        if (on > 1e-14 && v.norm() < 1e-14) return true;
      }
  return false;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome config_graph() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    auto cs = enumerate_configs(n);
    bool ok = long(cs.size()) == binom(2 * n, n);
    for (auto& c : cs) ok = ok && in_C(c, n);
    o.require(ok, "|C| = C(2n,n) for n=" + std::to_string(n));
  }
  long pairs = 0, bad_paths = 0, bad_equiv = 0, bad_len = 0;
  for (int n = 1; n <= 3; ++n) {
    auto lat = chain(n);
    auto one = ElectronSpace::one_species(n);
    SectorBasis b(n);
    auto cs = enumerate_configs(n);
    for (auto& X : cs) {
      if (long(simplify_path(X).size()) != popcount(X.d & ~X.f) + 1) ++bad_len;
      for (auto& Y : cs) {
        ++pairs;
        auto r = connect(X, Y, lat);
        if (!r.ok || !(r.path.front() == X) || !(r.path.back() == Y) || !validate_path(r.path, lat).valid)
          ++bad_paths;
        if ((classify_edge(X, Y, lat).kind != EdgeKind::none) != has_b_witness(X, Y, lat, one, b)) ++bad_equiv;
      }
    }
  }
  o.detail << pairs << " ordered pairs for n<=3: " << bad_paths << " bad paths, " << bad_equiv
           << " edge/witness mismatches, " << bad_len << " wrong simplification lengths";
  o.require(bad_paths == 0 && bad_equiv == 0 && bad_len == 0, "graph checks");
  return o;
}

struct SmallSetup {
  Lattice lat;
  ElectronSpace m0;
  SectorBasis basis;
  PhononSpace ph;
  ConeGeometry geo;
  SmallSetup(int n, int nmax)
      : lat(chain(n)), m0(ElectronSpace::m0(n)), basis(n), ph(build_phonon_ops(n, nmax)),
        geo(cone_geometry(basis, ph)) {}
};

const std::vector<double> kSchedule{0.2, 0.1, 0.05, 0.025};

Outcome asymptotics() {
  Outcome o;
  SmallSetup s(1, 4);
  auto hs = build_deformed(s.lat, s.m0, s.ph, regime_params(Model::d_coupled, 0.3));
  auto rep = asymptotic_check(config_of({0}, {}), kSchedule, DenseSemigroup(hs.H0), s.m0, s.ph, 1.0);
  o.detail << "residuals";
  for (double r : rep.residuals) o.detail << " " << sci(r);
  o.detail << "; ratios";
  for (double r : rep.ratios) o.detail << " " << sci(r);
  bool ok = rep.exponent == 4 && !rep.outside_assumptions;
  for (double r : rep.ratios) ok = ok && r >= 1.5;
  o.detail << "; last-pair rule " << (rep.pass ? "met" : "not met");
  // the O(beta) regime only sets in below beta ~ 0.1; show where the ratio heads
  auto fine = asymptotic_check(config_of({0}, {}), {0.0125, 0.00625, 0.003125}, DenseSemigroup(hs.H0), s.m0, s.ph, 1.0);
  o.detail << "; finer ratios";
  for (double r : fine.ratios) o.detail << " " << sci(r);
  o.detail << "; ";
  o.require(ok, "monotone decrease with every ratio >= 1.5");
  return o;
}

Outcome path_products() {
  Outcome o;
  SmallSetup s(1, 4);
  auto hs = build_deformed(s.lat, s.m0, s.ph, regime_params(Model::d_coupled, 0.3));
  Vec vac = Vec::Zero(s.ph.dim());
  vac[0] = 1.0;
  ConfigPath path{full_f(1), config_of({0}, {})};
  auto rep = path_product_check(path, s.lat, kSchedule, vac, DenseSemigroup(hs.H0), s.m0, s.basis, s.ph);
  o.detail << "beta exponent " << rep.exponent << "; c";
  for (double c : rep.c) o.detail << " " << sci(c);
  o.detail << "; phonon error";
  for (double e : rep.phonon_error) o.detail << " " << sci(e);
  o.detail << "; off-component at beta=0.025 " << sci(rep.off_residual.back());
  bool ok = std::all_of(rep.c.begin(), rep.c.end(), [](double c) { return c > 0; });
  o.require(ok, "c > 0");
  o.require(rep.off_residual.back() < 1e-6, "off-component residual < 1e-6");
  o.require(rep.pass, "phonon part converges to the input vector");
  return o;
}

Outcome cone_positivity() {
  Outcome o;
  SmallSetup s(1, 4);
  for (Model m : {Model::d_coupled, Model::f_coupled}) {
    ModelParams p = regime_params(m, 0.3);
    auto hs = build_deformed(s.lat, s.m0, s.ph, p);
    DenseSemigroup sg(hs.H);
    int fails = 0;
    double worst = 0;
    for (double b : {0.1, 0.5, 1.0}) {
      auto r = semigroup_positivity_check(sg, b, 100, 1e-8, s.geo, 20240601);
      fails += r.n_fail;
      worst = std::min(worst, r.worst_eigenvalue);
    }
    auto gs = ground_state(hs.H);
    Vec psi = gs.psi;
    const long ff = long(pair_index(s.basis, full_f(1), full_f(1))) * s.ph.dim();
    psi *= std::conj(psi[ff]) / std::abs(psi[ff]);
    auto cm = cone_membership(psi, s.geo, 1e-8);
    std::mt19937_64 rng(20240601);
    double min_overlap = 1e300;
    for (int k = 0; k < 100; ++k) min_overlap = std::min(min_overlap, psi.dot(sample_cone_element(rng, 0, s.geo)).real());
    int neg = 0;
    SpMat bad = negative_control_hamiltonian(hs, s.m0, s.ph, p);
    for (double b : {0.1, 0.5, 1.0}) neg += semigroup_positivity_check(bad, b, 100, 1e-8, s.geo, 20240601).n_fail;
    o.detail << to_string(m) << ": " << fails << " semigroup failures (worst " << sci(worst)
             << "), ground state worst fiber eigenvalue " << sci(cm.worst_eigenvalue) << ", min overlap "
             << sci(min_overlap) << ", negative control failures " << neg << "; ";
    o.require(fails == 0, "semigroup keeps samples in the cone");
    o.require(cm.member && min_overlap > 0, "ground state positive");
    o.require(neg > 0, "negative control fails");
  }
  return o;
}

Outcome ergodicity() {
  Outcome o;
  for (int n : {1, 2}) {
    SmallSetup s(n, n == 1 ? 4 : 3);
    for (Model m : {Model::d_coupled, Model::f_coupled}) {
      auto hs = build_deformed(s.lat, s.m0, s.ph, regime_params(m, 0.3));
      auto vac = vacuum_frame(s.geo);
      double lo = 1e300;
      for (double b : {0.05, 0.02, 0.01}) lo = std::min(lo, ergodicity_witness(hs.H, vac, vac, b, s.basis, s.geo));
      o.detail << "n=" << n << " " << to_string(m) << ": min " << sci(lo) << "; ";
      o.require(lo > 0, "witness positive");
    }
  }
  return o;
}

Outcome solver_equivalence() {
  Outcome o;
  double worst = 0;
  int count = 0;
  auto check = [&](const SpMat& H) {
    if (H.rows() > 5000) return;
    SolverOptions lz;
    lz.force_lanczos = true;
    auto d = ground_state(H), l = ground_state(H, lz);
    worst = std::max(worst, std::abs(d.E0 - l.E0));
    ++count;
    o.require(l.converged, "Lanczos converged");
  };
  auto lat = chain(2);
  auto m0 = ElectronSpace::m0(2);
  for (Model m : {Model::d_coupled, Model::f_coupled})
    for (double g : kG)
      for (int nmax : {4, 6}) {
        auto ph = build_phonon_ops(2, nmax);
        check(build_model(lat, m0, &ph, regime_params(m, g)).H);
      }
  ModelParams pam = regime_params(Model::PAM, 0.0);
  check(build_model(lat, m0, nullptr, pam).H);
  auto ph = build_phonon_ops(2, 4);
  check(build_deformed(lat, m0, ph, regime_params(Model::d_coupled, 0.3)).H);
  o.detail << count << " instances, max |E0 dense - E0 Lanczos| = " << sci(worst);
  o.require(worst < 1e-9, "E0 agreement to 1e-9");
  return o;
}

struct Criterion {
  int id;
  const char* title;
  Outcome (*run)();
};

Outcome c1() { return uniqueness(Model::d_coupled); }
Outcome c2() { return uniqueness(Model::f_coupled); }

const Criterion kCriteria[] = {
    {1, "d-coupled model: unique M=0 ground state with S=0", c1},
    {2, "f-coupled model: unique M=0 ground state with S=0", c2},
    {3, "correlator signs", correlators},
    {4, "g=0 reduction to the symmetric PAM", g0_reduction},
    {5, "transformation identities", transformation_lemmas},
    {6, "configuration graph", config_graph},
    {7, "F_beta asymptotics", asymptotics},
    {8, "path products", path_products},
    {9, "cone positivity", cone_positivity},
    {10, "ergodicity witness", ergodicity},
    {11, "Lanczos vs dense", solver_equivalence},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& only,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r{c.id, c.title, false, "", 0};
    try {
      Outcome o = c.run();
      r.pass = o.pass;
      r.detail = o.detail.str();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " (%.1fs)", r.seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.title + ": " + r.detail + buf;
}

}  // namespace pam
