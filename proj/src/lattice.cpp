#include "pam/lattice.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>

namespace pam {

std::vector<int> Lattice::neighbors(int x) const {
  std::vector<int> out;
  for (int y = 0; y < n_sites(); ++y)
    if (y != x && bond(x, y)) out.push_back(y);
  return out;
}

namespace {

// BFS two-colouring; components start on sublattice 1. Conflicts are left for validation to report.
std::vector<int> colour(const Eigen::MatrixXd& t) {
  const int n = int(t.rows());
  std::vector<int> lab(n, 0);
  for (int s = 0; s < n; ++s) {
    if (lab[s]) continue;
    lab[s] = 1;
    std::deque<int> q{s};
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y = 0; y < n; ++y)
        if (y != x && t(x, y) != 0.0 && !lab[y]) {
          lab[y] = 3 - lab[x];
          q.push_back(y);
        }
    }
  }
  return lab;
}

}  // namespace

Lattice from_matrix(const Eigen::MatrixXd& t, std::vector<int> sublattice, std::string name) {
  if (t.rows() == 0 || t.cols() == 0) throw std::invalid_argument("lattice: empty hopping matrix");
  if (t.rows() != t.cols()) throw std::invalid_argument("lattice: hopping matrix is not square");
  if (t != t.transpose()) throw std::invalid_argument("lattice: hopping matrix is not symmetric");
  if (sublattice.empty()) sublattice = colour(t);
  if (int(sublattice.size()) != t.rows()) throw std::invalid_argument("lattice: wrong number of sublattice labels");
  for (int s : sublattice)
    if (s != 1 && s != 2) throw std::invalid_argument("lattice: sublattice labels must be 1 or 2");
  return Lattice{t, std::move(sublattice), std::move(name)};
}

Lattice chain(int n, double t) {
  if (n < 1) throw std::invalid_argument("chain: need at least one site");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x + 1 < n; ++x) m(x, x + 1) = m(x + 1, x) = t;
  return from_matrix(m, {}, "chain(" + std::to_string(n) + ")");
}

Lattice ring(int n, double t) {
  if (n < 2 || n % 2) throw std::invalid_argument("ring: need an even number of sites");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    int y = (x + 1) % n;
    m(x, y) = m(y, x) = t;
  }
  return from_matrix(m, {}, "ring(" + std::to_string(n) + ")");
}

// site index x + lx*y, open boundaries
Lattice square(int lx, int ly, double t) {
  if (lx < 1 || ly < 1) throw std::invalid_argument("square: empty lattice");
  const int n = lx * ly;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  std::vector<int> lab(n);
  for (int y = 0; y < ly; ++y)
    for (int x = 0; x < lx; ++x) {
      int s = x + lx * y;
      lab[s] = (x + y) % 2 ? 2 : 1;
      if (x + 1 < lx) m(s, s + 1) = m(s + 1, s) = t;
      if (y + 1 < ly) m(s, s + lx) = m(s + lx, s) = t;
    }
  return from_matrix(m, lab, "square(" + std::to_string(lx) + "x" + std::to_string(ly) + ")");
}

bool ValidationReport::pass() const {
  for (auto& it : items)
    if (!it.pass) return false;
  return true;
}

ValidationReport validate_assumptions(const Lattice& lat) {
  ValidationReport r;
  const int n = lat.n_sites();
  bool sym = lat.t.rows() == lat.t.cols() && lat.t == lat.t.transpose();
  r.items.push_back({"A.1(i) symmetric", sym, sym ? "" : "t is not symmetric"});
  bool finite = lat.t.allFinite();
  r.items.push_back({"A.1(i) real", finite, finite ? "" : "non-finite hopping entry"});

  std::ostringstream bad;
  bool zeros = true;
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      if (lat.t(x, y) != 0.0 && lat.sublattice[x] == lat.sublattice[y]) {
        zeros = false;
        bad << "(" << x << "," << y << ") ";
      }
  r.items.push_back({"A.2(ii) intra-sublattice zeros", zeros, zeros ? "" : "nonzero hops " + bad.str()});

  std::vector<char> seen(n, 0);
  std::deque<int> q{0};
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : lat.neighbors(x))
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        q.push_back(y);
      }
  }
  bool conn = reached == n;
  r.items.push_back({"A.2(i) connected", conn,
                     conn ? "" : std::to_string(reached) + " of " + std::to_string(n) + " sites reachable from 0"});
  return r;
}

int sublattice_sign(const Lattice& lat, int x) {
  if (x < 0 || x >= lat.n_sites()) throw std::out_of_range("sublattice_sign: site out of range");
  return lat.sublattice[x] == 1 ? 1 : -1;
}

}  // namespace pam
