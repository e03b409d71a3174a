#include "pam/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "pam/operators.hpp"

namespace pam {

std::vector<Config> enumerate_configs(int n_sites, int cap) {
  if (n_sites < 1 || n_sites > cap) throw std::invalid_argument("enumerate_configs: site count outside [1, cap]");
  SectorBasis b(n_sites, cap);
  std::vector<Config> out;
  out.reserve(b.dim());
  for (Mask s : b.states()) out.push_back(config_of_state(s, n_sites));
  return out;
}

namespace {

int lowest_site(Mask m) { return __builtin_ctzll(m); }

void require_in_C(const Config& c, int n) {
  if (!in_C(c, n)) throw std::invalid_argument("configuration outside C: " + to_string(c, n));
}

Mask state_of(const Config& c, int n) { return c.d | (c.f << n); }

// apply a one-species term list to a basis state; returns the single image or nothing
std::optional<std::pair<Mask, cplx>> apply_single(const TermList& terms, Mask s) {
  std::optional<std::pair<Mask, cplx>> out;
  for (auto& t : terms) {
    Mask cur = s;
    int sign = 1;
    bool alive = true;
    for (auto it = t.ops.rbegin(); it != t.ops.rend() && alive; ++it) {
      auto r = apply_mode_op(cur, it->mode, it->kind);
      if (!r) alive = false;
      else cur = r->state, sign *= r->sign;
    }
    if (!alive || t.coef == cplx(0)) continue;
    if (out && out->first != cur) return std::nullopt;
    if (out) out->second += double(sign) * t.coef;
    else out = std::make_pair(cur, double(sign) * t.coef);
  }
  return out;
}

Mask boundary(Mask Z, const Lattice& lat) {
  const int n = lat.n_sites();
  Mask out = 0;
  for (int z = 0; z < n; ++z) {
    if (!(Z >> z & 1)) continue;
    for (int x = 0; x < n; ++x)
      if (!(Z >> x & 1) && lat.t(x, z) != 0.0) {
        out |= Mask(1) << z;
        break;
      }
  }
  return out;
}

// shortest path w -> z whose interior lies in `inner`; BFS with neighbours in site order
std::vector<int> shortest_path(int w, int z, Mask inner, const Lattice& lat) {
  const int n = lat.n_sites();
  std::vector<int> parent(n, -2);
  std::deque<int> q{w};
  parent[w] = -1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v = 0; v < n; ++v) {
      if (parent[v] != -2 || lat.t(u, v) == 0.0) continue;
      if (v == z) {
        parent[v] = u;
        std::vector<int> p{z};
        for (int a = u; a != -1; a = parent[a]) p.push_back(a);
        std::reverse(p.begin(), p.end());
        return p;
      }
      if (inner >> v & 1) {
        parent[v] = u;
        q.push_back(v);
      }
    }
  }
  return {};
}

}  // namespace

ConfigEdge classify_edge(const Config& X, const Config& Y, const Lattice& lat) {
  const int n = lat.n_sites();
  require_in_C(X, n);
  require_in_C(Y, n);
  const Mask dd = X.d ^ Y.d, df = X.f ^ Y.f;
  if (df == 0 && popcount(dd) == 2 && popcount(X.d & dd) == 1) {
    int x = lowest_site(X.d & dd), y = lowest_site(Y.d & dd);
    if (lat.t(x, y) != 0.0) return {EdgeKind::d_edge, x, y};
    return {};
  }
  if (popcount(dd) == 1 && dd == df) {
    int x = lowest_site(dd);
    return {EdgeKind::df_edge, x, x};
  }
  return {};
}

EdgeWitness edge_witness_operator(const Config& X, const Config& Y, const Lattice& lat, double V) {
  if (classify_edge(X, Y, lat).kind == EdgeKind::none) throw std::invalid_argument("edge_witness_operator: not an edge");
  const int n = lat.n_sites();
  const Mask sx = state_of(X, n), sy = state_of(Y, n);
  for (int eps : {-1, 1})
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        auto k = eps < 0 ? HybridKind::B_minus : HybridKind::B_plus;
        auto r = apply_single(hybrid_terms(k, x, y, Spin::up, n, lat, V), sx);
        if (r && r->first == sy && std::abs(r->second) > 0) return {x, y, eps, r->second.real()};
      }
  throw std::logic_error("edge_witness_operator: edge without a witness");
}

ConfigPath simplify_path(const Config& X) {
  ConfigPath p{X};
  Config cur = X;
  for (Mask extra = X.d & ~X.f; extra; extra &= extra - 1) {
    Mask bit = extra & (~extra + 1);
    cur.d &= ~bit;
    cur.f |= bit;
    p.push_back(cur);
  }
  return p;
}

PathResult path_to_full_f(const Config& X, const Lattice& lat) {
  const int n = lat.n_sites();
  require_in_C(X, n);
  if (X.d & ~X.f) throw std::invalid_argument("path_to_full_f: configuration is not f-dominated");
  const Mask all = (Mask(1) << n) - 1;
  PathResult res;
  res.path.push_back(X);
  Config cur = X;
  while (Mask Y = all & ~(cur.d | cur.f)) {
    const Mask both = cur.d & cur.f;
    if (both == 0) {
      res.ok = false;
      res.note = "no doubly occupied site while empty sites remain at " + to_string(cur, n);
      return res;
    }
    const Mask bY = boundary(Y, lat), bB = boundary(both, lat), inner = cur.f & ~cur.d;
    std::vector<int> best;
    for (int z = 0; z < n && best.empty(); ++z) {
      if (!(bY >> z & 1)) continue;
      for (int w = 0; w < n && best.empty(); ++w)
        if (bB >> w & 1) best = shortest_path(w, z, inner, lat);
    }
    if (best.empty()) {
      res.ok = false;
      res.note = "no boundary pair with a connecting path at " + to_string(cur, n);
      return res;
    }
    for (std::size_t j = 1; j < best.size(); ++j) {
      cur.d = (cur.d & ~(Mask(1) << best[j - 1])) | (Mask(1) << best[j]);
      res.path.push_back(cur);
    }
    const Mask zb = Mask(1) << best.back();
    cur.d &= ~zb;
    cur.f |= zb;
    res.path.push_back(cur);
  }
  return res;
}

PathResult connect(const Config& X, const Config& Y, const Lattice& lat) {
  auto half = [&](const Config& A) {
    ConfigPath s = simplify_path(A);
    PathResult r = path_to_full_f(s.back(), lat);
    s.insert(s.end(), r.path.begin() + 1, r.path.end());
    r.path = std::move(s);
    return r;
  };
  PathResult a = half(X), b = half(Y);
  if (!a.ok) return a;
  if (!b.ok) return b;
  a.path.insert(a.path.end(), b.path.rbegin() + 1, b.path.rend());
  return a;
}

PathValidation validate_path(const ConfigPath& p, const Lattice& lat) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (classify_edge(p[i], p[i + 1], lat).kind == EdgeKind::none) return {false, int(i)};
  return {};
}

}  // namespace pam
