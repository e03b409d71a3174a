#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pam {

// Sites are 0-based everywhere in the library and in reports.
struct Lattice {
  Eigen::MatrixXd t;            // real symmetric hopping t_xy
  std::vector<int> sublattice;  // 1 or 2 per site
  std::string name;

  int n_sites() const { return int(t.rows()); }
  bool bond(int x, int y) const { return t(x, y) != 0.0; }
  std::vector<int> neighbors(int x) const;
};

Lattice chain(int n, double t = 1.0);
Lattice ring(int n, double t = 1.0);  // even n only
Lattice square(int lx, int ly, double t = 1.0);
// explicit matrix; sublattice labels from a BFS two-colouring unless supplied
Lattice from_matrix(const Eigen::MatrixXd& t, std::vector<int> sublattice = {}, std::string name = "explicit");

struct CheckItem {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckItem> items;
  bool pass() const;
};

ValidationReport validate_assumptions(const Lattice& lat);

int sublattice_sign(const Lattice& lat, int x);

}  // namespace pam
