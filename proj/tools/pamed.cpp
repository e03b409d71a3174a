// pamed: batch front end for the periodic Anderson model toolkit.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <utility>

#include "pam/cli.hpp"
#include "pam/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact diagonalization checks for the periodic Anderson model with phonons"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<int> nmax;

  const std::pair<const char*, const char*> commands[] = {
      {"validate", "check the lattice and parameter assumptions"},
      {"spectrum", "M=0 ground state, gap and total spin"},
      {"correlators", "signed spin correlator table as CSV"},
      {"graph", "configuration graph paths"},
      {"positivity", "cone positivity and ergodicity checks"},
      {"verify", "run the acceptance criteria"},
  };
  for (auto [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "flat key = value config file");
    sub->add_option("--out", out_path, "write the report here instead of stdout");
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--tol", tol, "override the config tolerance");
    sub->add_option("--nmax", nmax, "override the phonon cutoff");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : pam::exit_invalid;
  }

  try {
    pam::RunConfig cfg = config_path.empty() ? pam::parse_config("") : pam::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (tol) cfg.tol = *tol;
    if (nmax) cfg.n_max = *nmax;
    auto res = pam::run_command(app.get_subcommands().front()->get_name(), cfg);
    if (out_path.empty()) {
      std::cout << res.body;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) {
        std::cerr << "pamed: cannot write " << out_path << "\n";
        return pam::exit_invalid;
      }
      out << res.body;
    }
    if (res.exit_code == pam::exit_invalid) std::cerr << res.body;
    return res.exit_code;
  } catch (const pam::ConfigError& e) {
    std::cerr << "pamed: " << e.what() << "\n";
    return pam::exit_invalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "pamed: " << e.what() << "\n";
    return pam::exit_invalid;
  }
}
