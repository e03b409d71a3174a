#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pam/types.hpp"

namespace pam {

using Mask = std::uint64_t;

enum class Species { d, f };
enum class Spin { up, down };
enum class Ladder { create, annihilate };

struct ModeIndex {
  Species species;
  int site;
};

// One spin species: d-modes 0..n-1 then f-modes n..2n-1.
inline int local_mode(int n_sites, ModeIndex m) { return m.species == Species::d ? m.site : n_sites + m.site; }
// Two species: every up mode precedes every down mode.
inline int global_mode(int n_sites, ModeIndex m, Spin s) {
  return local_mode(n_sites, m) + (s == Spin::down ? 2 * n_sites : 0);
}

inline int popcount(Mask m) { return __builtin_popcountll(m); }

struct ModeResult {
  Mask state;
  int sign;
};

// Jordan-Wigner action; nullopt when Pauli blocked
std::optional<ModeResult> apply_mode_op(Mask state, int mode, Ladder kind);

// Electron configuration X = (X_d, X_f) as site bitmasks.
struct Config {
  Mask d = 0;
  Mask f = 0;
  bool operator==(const Config&) const = default;
};

inline int sym_diff(const Config& c) { return popcount(c.d ^ c.f); }
bool in_C(const Config& c, int n_sites);
std::string to_string(const Config& c, int n_sites);
Config config_of(std::vector<int> xd, std::vector<int> xf);

inline constexpr int default_site_cap = 6;

// Half-filled basis of one spin species: popcount n over 2n modes, ascending.
class SectorBasis {
 public:
  explicit SectorBasis(int n_sites, int cap = default_site_cap);
  int n_sites() const { return n_; }
  int dim() const { return int(states_.size()); }
  Mask state(int i) const { return states_[i]; }
  int index(Mask m) const;  // -1 if absent
  const std::vector<Mask>& states() const { return states_; }

 private:
  int n_;
  std::vector<Mask> states_;
  std::vector<int> lookup_;
};

int config_vector(const Config& c, const SectorBasis& b);
Config config_of_state(Mask state, int n_sites);

// Electron state spaces as ordered lists of occupation masks.
//   OneSpecies: the sector basis above (2n modes).
//   M0:         SectorBasis (x) SectorBasis, index a*D + b, mask a | b << 2n.
//   FixedN:     all 4n-mode masks with popcount 2n (every magnetisation).
//   Fock:       every 4n-mode mask.
class ElectronSpace {
 public:
  enum class Kind { OneSpecies, M0, FixedN, Fock };

  static ElectronSpace one_species(int n_sites, int cap = default_site_cap);
  static ElectronSpace m0(int n_sites, int cap = default_site_cap);
  static ElectronSpace fixed_n(int n_sites, int cap = 4);
  static ElectronSpace fock(int n_sites, int cap = 4);

  Kind kind() const { return kind_; }
  int n_sites() const { return n_; }
  int n_modes() const { return kind_ == Kind::OneSpecies ? 2 * n_ : 4 * n_; }
  int dim() const { return int(masks_.size()); }
  Mask mask(int i) const { return masks_[i]; }
  int index(Mask m) const;  // -1 if absent
  const std::vector<Mask>& masks() const { return masks_; }

 private:
  ElectronSpace(Kind k, int n, std::vector<Mask> masks);
  Kind kind_;
  int n_;
  std::vector<Mask> masks_;
  std::unordered_map<Mask, int> index_;
};

// Pair basis index of |X> (x) |Y> in the M0 space.
int pair_index(const SectorBasis& b, const Config& x, const Config& y);

template <class S>
DenseT<S> matricize(const VecT<S>& v, int d) {
  if (v.size() != Eigen::Index(d) * d) throw std::invalid_argument("matricize: dimension mismatch");
  DenseT<S> m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v[Eigen::Index(i) * d + j];
  return m;
}

template <class S>
VecT<S> unmatricize(const DenseT<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("unmatricize: matrix not square");
  const Eigen::Index d = m.rows();
  VecT<S> v(d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) v[i * d + j] = m(i, j);
  return v;
}

}  // namespace pam
