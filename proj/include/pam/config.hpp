#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pam/hamiltonian.hpp"
#include "pam/lattice.hpp"

namespace pam {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat "key = value" file; '#' starts a comment. Unknown keys are rejected.
struct RunConfig {
  std::string lattice = "chain";  // chain | ring | square | explicit
  int n_sites = 2;
  int lx = 2, ly = 2;
  double t = 1.0;
  std::string hopping;  // explicit: rows separated by ';'
  std::string model = "d";  // pam | d | f
  double Uf = 2.0, Ud = 1.0, V = 1.0, g = 0.3, w0 = 1.0;
  std::optional<double> eps_f;
  int n_max = 4;
  double tol = 1e-8;
  std::uint64_t seed = 20240601;
  int samples = 100;
  std::vector<double> betas{0.1, 0.5, 1.0};
  std::string from, to;  // graph endpoints, "d=0,1;f=" style
  int site_cap = 6;

  std::string source_text;  // raw file contents, hashed into reports
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

std::vector<std::string> config_keys();
std::map<std::string, std::string> config_values(const RunConfig& c);

Lattice make_lattice(const RunConfig& c);
ModelParams make_params(const RunConfig& c, bool* outside_regime = nullptr);
Config parse_config_sites(const std::string& s, int n_sites);

// SHA-1 of "blob <size>\0<content>", hex encoded
std::string git_blob_hash(const std::string& content);

const char* library_version();

}  // namespace pam
