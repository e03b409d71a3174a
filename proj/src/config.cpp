#include "pam/config.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pam/fock.hpp"

#ifndef PAM_VERSION
#define PAM_VERSION "0.0.0"
#endif

namespace pam {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& v, const char* what) {
  throw ConfigError("config: " + key + " = '" + v + "': " + what);
}

double to_double(const std::string& key, const std::string& v) {
  double x;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x)) bad(key, v, "expected a number");
  return x;
}

template <class I>
I to_int(const std::string& key, const std::string& v) {
  I x;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v, "expected an integer");
  return x;
}

std::string fmt(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

void set_key(RunConfig& c, const std::string& k, const std::string& v) {
  if (k == "lattice") {
    if (v != "chain" && v != "ring" && v != "square" && v != "explicit") bad(k, v, "expected chain|ring|square|explicit");
    c.lattice = v;
  } else if (k == "n_sites") c.n_sites = to_int<int>(k, v);
  else if (k == "lx") c.lx = to_int<int>(k, v);
  else if (k == "ly") c.ly = to_int<int>(k, v);
  else if (k == "t") c.t = to_double(k, v);
  else if (k == "hopping") c.hopping = v;
  else if (k == "model") {
    if (v != "pam" && v != "d" && v != "f") bad(k, v, "expected pam|d|f");
    c.model = v;
  } else if (k == "Uf") c.Uf = to_double(k, v);
  else if (k == "Ud") c.Ud = to_double(k, v);
  else if (k == "V") c.V = to_double(k, v);
  else if (k == "g") c.g = to_double(k, v);
  else if (k == "w0") c.w0 = to_double(k, v);
  else if (k == "eps_f") c.eps_f = to_double(k, v);
  else if (k == "n_max") c.n_max = to_int<int>(k, v);
  else if (k == "tol") c.tol = to_double(k, v);
  else if (k == "seed") c.seed = to_int<std::uint64_t>(k, v);
  else if (k == "samples") c.samples = to_int<int>(k, v);
  else if (k == "betas") {
    c.betas.clear();
    for (auto& b : split(v, ',')) c.betas.push_back(to_double(k, b));
    if (c.betas.empty()) bad(k, v, "expected a comma separated list");
  } else if (k == "from") c.from = v;
  else if (k == "to") c.to = v;
  else if (k == "site_cap") c.site_cap = to_int<int>(k, v);
  else throw ConfigError("config: unknown key '" + k + "'");
}

}  // namespace

std::vector<std::string> config_keys() {
  return {"lattice", "n_sites", "lx", "ly", "t", "hopping", "model", "Uf", "Ud", "V", "g", "w0", "eps_f",
          "n_max", "tol", "seed", "samples", "betas", "from", "to", "site_cap"};
}

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  c.source_text = text;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (!seen.insert(k).second) throw ConfigError("config: duplicate key '" + k + "'");
    set_key(c, k, v);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::map<std::string, std::string> config_values(const RunConfig& c) {
  std::string betas;
  for (std::size_t i = 0; i < c.betas.size(); ++i) betas += (i ? "," : "") + fmt(c.betas[i]);
  return {{"lattice", c.lattice},
          {"n_sites", std::to_string(c.n_sites)},
          {"lx", std::to_string(c.lx)},
          {"ly", std::to_string(c.ly)},
          {"t", fmt(c.t)},
          {"hopping", c.hopping},
          {"model", c.model},
          {"Uf", fmt(c.Uf)},
          {"Ud", fmt(c.Ud)},
          {"V", fmt(c.V)},
          {"g", fmt(c.g)},
          {"w0", fmt(c.w0)},
          {"eps_f", c.eps_f ? fmt(*c.eps_f) : ""},
          {"n_max", std::to_string(c.n_max)},
          {"tol", fmt(c.tol)},
          {"seed", std::to_string(c.seed)},
          {"samples", std::to_string(c.samples)},
          {"betas", betas},
          {"from", c.from},
          {"to", c.to},
          {"site_cap", std::to_string(c.site_cap)}};
}

Lattice make_lattice(const RunConfig& c) {
  if (c.lattice == "chain") return chain(c.n_sites, c.t);
  if (c.lattice == "ring") return ring(c.n_sites, c.t);
  if (c.lattice == "square") return square(c.lx, c.ly, c.t);
  // explicit: rows separated by ';', entries by whitespace
  auto rows = split(c.hopping, ';');
  if (c.hopping.empty() || rows.empty()) throw ConfigError("config: explicit lattice needs a hopping matrix");
  std::vector<std::vector<double>> vals;
  for (auto& r : rows) {
    std::istringstream is(r);
    std::vector<double> row;
    std::string tok;
    while (is >> tok) row.push_back(to_double("hopping", tok));
    vals.push_back(row);
  }
  const int n = int(vals.size());
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (int(vals[i].size()) != n) throw ConfigError("config: hopping matrix is not square");
    for (int j = 0; j < n; ++j) m(i, j) = vals[i][j];
  }
  return from_matrix(m);
}

ModelParams make_params(const RunConfig& c, bool* outside_regime) {
  ModelParams p;
  p.model = model_from_string(c.model);
  p.Uf = c.Uf;
  p.Ud = c.Ud;
  p.V = c.V;
  p.g = p.model == Model::PAM ? 0.0 : c.g;
  p.w0 = c.w0;
  p.eps_f = theorem_epsilon_f(p);
  if (c.eps_f) p.eps_f = *c.eps_f;
  if (outside_regime) *outside_regime = !in_theorem_regime(p);
  return p;
}

Config parse_config_sites(const std::string& s, int n_sites) {
  Config c;
  bool have_d = false, have_f = false;
  for (auto& part : split(s, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("config sites '" + s + "': expected d=...;f=...");
    std::string k = trim(part.substr(0, eq)), v = trim(part.substr(eq + 1));
    Mask m = 0;
    if (!v.empty())
      for (auto& x : split(v, ',')) {
        int site = to_int<int>("sites", x);
        if (site < 0 || site >= n_sites) throw ConfigError("config sites '" + s + "': site out of range");
        m |= Mask(1) << site;
      }
    if (k == "d" && !have_d) c.d = m, have_d = true;
    else if (k == "f" && !have_f) c.f = m, have_f = true;
    else throw ConfigError("config sites '" + s + "': expected d=...;f=...");
  }
  if (!have_d || !have_f) throw ConfigError("config sites '" + s + "': need both d and f");
  if (!in_C(c, n_sites)) throw ConfigError("config sites '" + s + "': |X_d| + |X_f| must equal the site count");
  return c;
}

std::string git_blob_hash(const std::string& content) {
  std::string data = "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char md[SHA_DIGEST_LENGTH];
  SHA1(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned char b : md) out += hex[b >> 4], out += hex[b & 15];
  return out;
}

const char* library_version() { return PAM_VERSION; }

}  // namespace pam
