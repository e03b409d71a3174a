#include "pam/fock.hpp"

#include <stdexcept>

namespace pam {

std::optional<ModeResult> apply_mode_op(Mask state, int mode, Ladder kind) {
  const Mask bit = Mask(1) << mode;
  const bool occ = state & bit;
  if (occ == (kind == Ladder::create)) return std::nullopt;
  int sign = popcount(state & (bit - 1)) % 2 ? -1 : 1;
  return ModeResult{state ^ bit, sign};
}

bool in_C(const Config& c, int n_sites) {
  const Mask all = (Mask(1) << n_sites) - 1;
  return (c.d & ~all) == 0 && (c.f & ~all) == 0 && popcount(c.d) + popcount(c.f) == n_sites;
}

// same "d=..;f=.." format the config file uses
std::string to_string(const Config& c, int n_sites) {
  auto list = [&](Mask m) {
    std::string s;
    for (int x = 0; x < n_sites; ++x)
      if (m >> x & 1) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  return "d=" + list(c.d) + ";f=" + list(c.f);
}

Config config_of(std::vector<int> xd, std::vector<int> xf) {
  Config c;
  for (int x : xd) c.d |= Mask(1) << x;
  for (int x : xf) c.f |= Mask(1) << x;
  return c;
}

SectorBasis::SectorBasis(int n_sites, int cap) : n_(n_sites) {
  if (n_sites < 1) throw std::invalid_argument("SectorBasis: need at least one site");
  if (n_sites > cap) throw std::invalid_argument("SectorBasis: n_sites exceeds the configured cap");
  const Mask top = Mask(1) << (2 * n_sites);
  lookup_.assign(top, -1);
  for (Mask m = 0; m < top; ++m)
    if (popcount(m) == n_sites) {
      lookup_[m] = int(states_.size());
      states_.push_back(m);
    }
}

int SectorBasis::index(Mask m) const { return m < lookup_.size() ? lookup_[m] : -1; }

int config_vector(const Config& c, const SectorBasis& b) {
  if (!in_C(c, b.n_sites())) throw std::invalid_argument("config_vector: configuration not in C");
  return b.index(c.d | (c.f << b.n_sites()));
}

Config config_of_state(Mask state, int n_sites) {
  const Mask all = (Mask(1) << n_sites) - 1;
  return Config{state & all, (state >> n_sites) & all};
}

ElectronSpace::ElectronSpace(Kind k, int n, std::vector<Mask> masks) : kind_(k), n_(n), masks_(std::move(masks)) {
  index_.reserve(masks_.size());
  for (int i = 0; i < int(masks_.size()); ++i) index_.emplace(masks_[i], i);
}

ElectronSpace ElectronSpace::one_species(int n_sites, int cap) {
  SectorBasis b(n_sites, cap);
  return ElectronSpace(Kind::OneSpecies, n_sites, b.states());
}

ElectronSpace ElectronSpace::m0(int n_sites, int cap) {
  SectorBasis b(n_sites, cap);
  std::vector<Mask> masks;
  masks.reserve(std::size_t(b.dim()) * b.dim());
  for (Mask a : b.states())
    for (Mask c : b.states()) masks.push_back(a | (c << (2 * n_sites)));
  return ElectronSpace(Kind::M0, n_sites, std::move(masks));
}

ElectronSpace ElectronSpace::fixed_n(int n_sites, int cap) {
  if (n_sites < 1 || n_sites > cap) throw std::invalid_argument("fixed_n: n_sites outside [1, cap]");
  std::vector<Mask> masks;
  for (Mask m = 0; m < (Mask(1) << (4 * n_sites)); ++m)
    if (popcount(m) == 2 * n_sites) masks.push_back(m);
  return ElectronSpace(Kind::FixedN, n_sites, std::move(masks));
}

ElectronSpace ElectronSpace::fock(int n_sites, int cap) {
  if (n_sites < 1 || n_sites > cap) throw std::invalid_argument("fock: n_sites outside [1, cap]");
  std::vector<Mask> masks(std::size_t(1) << (4 * n_sites));
  for (std::size_t m = 0; m < masks.size(); ++m) masks[m] = m;
  return ElectronSpace(Kind::Fock, n_sites, std::move(masks));
}

int ElectronSpace::index(Mask m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int pair_index(const SectorBasis& b, const Config& x, const Config& y) {
  return config_vector(x, b) * b.dim() + config_vector(y, b);
}

}  // namespace pam
