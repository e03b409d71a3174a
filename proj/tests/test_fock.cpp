#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "pam/fock.hpp"
#include "pam/operators.hpp"

using namespace pam;

TEST_CASE("sector dimensions") {
  for (int n = 1; n <= 6; ++n) {
    SectorBasis b(n);
    CHECK(b.dim() == oracle::binom(2 * n, n));
    for (int i = 1; i < b.dim(); ++i) CHECK(b.state(i - 1) < b.state(i));
    for (int i = 0; i < b.dim(); ++i) CHECK(b.index(b.state(i)) == i);
  }
  SectorBasis b1(1);
  CHECK(b1.states() == std::vector<Mask>{0b01, 0b10});  // {d1}, {f1}
  CHECK_THROWS_AS(SectorBasis(7), std::invalid_argument);
  CHECK_NOTHROW(SectorBasis(7, 7));
}

TEST_CASE("Jordan-Wigner mode action") {
  auto r = apply_mode_op(0, 0, Ladder::create);
  REQUIRE(r);
  CHECK(r->state == 1);
  CHECK(r->sign == 1);
  CHECK_FALSE(apply_mode_op(1, 0, Ladder::create));
  CHECK_FALSE(apply_mode_op(0, 1, Ladder::annihilate));
  // n = 1: annihilate f1 (mode 1) on {d1, f1}
  r = apply_mode_op(0b11, 1, Ladder::annihilate);
  REQUIRE(r);
  CHECK(r->state == 0b01);
  CHECK(r->sign == -1);
}

TEST_CASE("CAR relations on the Fock space are exact") {
  auto fs = ElectronSpace::fock(1);
  const int k = fs.n_modes();
  std::vector<SpMat> c(k), cd(k);
  for (int m = 0; m < k; ++m) {
    c[m] = build_operator(fs, c_op(m, Ladder::annihilate));
    cd[m] = build_operator(fs, c_op(m, Ladder::create));
  }
  const SpMat I = identity<cplx>(fs.dim());
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      SpMat ac = c[a] * cd[b] + cd[b] * c[a];
      SpMat aa = c[a] * c[b] + c[b] * c[a];
      CHECK(max_abs(SpMat(ac - (a == b ? I : SpMat(fs.dim(), fs.dim())))) == 0.0);
      CHECK(max_abs(aa) == 0.0);
    }
}

TEST_CASE("mode operators agree with a Pauli-string construction") {
  auto fs = ElectronSpace::fock(1);
  const int k = fs.n_modes();
  for (int m = 0; m < k; ++m) {
    Mat ours(build_operator(fs, c_op(m, Ladder::annihilate)));
    auto ref = oracle::annihilator(m, k);
    for (int i = 0; i < fs.dim(); ++i)
      for (int j = 0; j < fs.dim(); ++j)
        CHECK(ours(i, j).real() ==
              ref(oracle::index_of_mask(fs.mask(i), k), oracle::index_of_mask(fs.mask(j), k)));
  }
}

TEST_CASE("config vectors") {
  SectorBasis b1(1), b2(2);
  CHECK(b1.state(config_vector(config_of({}, {0}), b1)) == 0b10);
  CHECK(b2.state(config_vector(config_of({}, {0, 1}), b2)) == 0b1100);
  CHECK(b2.state(config_vector(config_of({0}, {1}), b2)) == 0b1001);
  CHECK_THROWS_AS(config_vector(config_of({0}, {0, 1}), b2), std::invalid_argument);
  for (int i = 0; i < b2.dim(); ++i) CHECK(config_vector(config_of_state(b2.state(i), 2), b2) == i);
}

TEST_CASE("|X> is created with sign +1 by the fixed product order") {
  // apply d^dag over X_d then f^dag over X_f (site order, leftmost first) to the vacuum
  const int n = 3;
  SectorBasis b(n);
  for (Mask s : b.states()) {
    Config c = config_of_state(s, n);
    std::vector<int> modes;
    for (int x = 0; x < n; ++x)
      if (c.d >> x & 1) modes.push_back(x);
    for (int x = 0; x < n; ++x)
      if (c.f >> x & 1) modes.push_back(n + x);
    Mask st = 0;
    int sign = 1;
    for (auto it = modes.rbegin(); it != modes.rend(); ++it) {
      auto r = apply_mode_op(st, *it, Ladder::create);
      REQUIRE(r);
      st = r->state;
      sign *= r->sign;
    }
    CHECK(st == s);
    CHECK(sign == 1);
  }
}

TEST_CASE("matricize round trip and examples") {
  SectorBasis b(2);
  const int D = b.dim();
  Vec v = Vec::Zero(D * D);
  CHECK(matricize(v, D).isZero());
  for (int i = 0; i < D; ++i) v[i * D + i] = 1.0;
  CHECK((matricize(v, D) - Mat::Identity(D, D)).norm() == 0.0);
  Vec w = Vec::Random(D * D);
  CHECK((unmatricize(matricize(w, D)) - w).norm() == 0.0);
  Vec x = Vec::Zero(D * D);
  int i = config_vector(config_of({0}, {1}), b);
  x[i * D + i] = 1.0;
  Mat m = matricize(x, D);
  CHECK(m(i, i) == cplx(1.0));
  CHECK(m.norm() == 1.0);
  CHECK_THROWS_AS(matricize(Vec(Vec::Zero(5)), D), std::invalid_argument);
}

TEST_CASE("M0 space layout and the spin-down identification") {
  const int n = 1;
  auto m0 = ElectronSpace::m0(n);
  SectorBasis b(n);
  CHECK(m0.dim() == b.dim() * b.dim());
  for (int a = 0; a < b.dim(); ++a)
    for (int c = 0; c < b.dim(); ++c) CHECK(m0.mask(a * b.dim() + c) == (b.state(a) | (b.state(c) << (2 * n))));
  // on the Fock space of two species: c_up(m) = c(m) (x) 1 and c_dn(m) = (-1)^N (x) c(m)
  auto fs = ElectronSpace::fock(n);
  const int K = 2 * n;
  const int d1 = 1 << K;
  auto single = [&](int mode) {
    Mat c = Mat::Zero(d1, d1);
    for (Mask s = 0; s < Mask(d1); ++s) {
      auto r = apply_mode_op(s, mode, Ladder::annihilate);
      if (r) c(r->state, s) = r->sign;
    }
    return c;
  };
  Mat parity = Mat::Zero(d1, d1);
  for (Mask s = 0; s < Mask(d1); ++s) parity(s, s) = popcount(s) % 2 ? -1.0 : 1.0;
  // tensor index (a, b) <-> mask a | b << K
  auto tensor = [&](const Mat& A, const Mat& B) {
    Mat out = Mat::Zero(fs.dim(), fs.dim());
    for (int i = 0; i < fs.dim(); ++i)
      for (int j = 0; j < fs.dim(); ++j) {
        Mask mi = fs.mask(i), mj = fs.mask(j);
        out(i, j) = A(mi & (d1 - 1), mj & (d1 - 1)) * B(mi >> K, mj >> K);
      }
    return out;
  };
  for (int m = 0; m < K; ++m) {
    Mat up(build_operator(fs, c_op(m, Ladder::annihilate)));
    Mat dn(build_operator(fs, c_op(m + K, Ladder::annihilate)));
    CHECK((up - tensor(single(m), Mat::Identity(d1, d1))).norm() == 0.0);
    CHECK((dn - tensor(parity, single(m))).norm() == 0.0);
  }
}

TEST_CASE("fixed-N space contains every magnetisation") {
  auto s = ElectronSpace::fixed_n(2);
  CHECK(s.dim() == oracle::binom(8, 4));
  CHECK(ElectronSpace::fock(2).dim() == 256);
  CHECK(s.index(0) == -1);
}
