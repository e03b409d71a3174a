#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pam/fock.hpp"
#include "pam/lattice.hpp"

namespace pam {

std::vector<Config> enumerate_configs(int n_sites, int cap = default_site_cap);

enum class EdgeKind { none, d_edge, df_edge };

struct ConfigEdge {
  EdgeKind kind = EdgeKind::none;
  int x = -1, y = -1;  // df-edge: x == y
};

// Throws std::invalid_argument for configurations outside C.
ConfigEdge classify_edge(const Config& X, const Config& Y, const Lattice& lat);

struct EdgeWitness {
  int x, y;
  int eps;    // -1 or +1 for B^-/B^+
  double c;   // B^eps_{x,y}|X> = c|Y>
};

EdgeWitness edge_witness_operator(const Config& X, const Config& Y, const Lattice& lat, double V);

using ConfigPath = std::vector<Config>;

ConfigPath simplify_path(const Config& X);

struct PathResult {
  ConfigPath path;
  bool ok = true;
  std::string note;  // stall description when !ok
};

PathResult path_to_full_f(const Config& X, const Lattice& lat);
PathResult connect(const Config& X, const Config& Y, const Lattice& lat);

struct PathValidation {
  bool valid = true;
  int first_violation = -1;  // index i where (path[i], path[i+1]) is not an edge
};

PathValidation validate_path(const ConfigPath& p, const Lattice& lat);

inline Config full_f(int n_sites) { return Config{0, (Mask(1) << n_sites) - 1}; }

}  // namespace pam
