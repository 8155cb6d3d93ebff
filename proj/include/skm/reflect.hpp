#pragma once

#include "skm/cartan.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace skm {

class ReflectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RootVec = std::vector<long long>;

namespace detail {
inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw ReflectError("root coefficient overflow");
  return r;
}
inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ReflectError("root coefficient overflow");
  return r;
}
}  // namespace detail

struct Step {
  int vertex;
  bool odd;
  friend bool operator==(const Step&, const Step&) = default;
};

/** @brief Current simple roots and coroots, expressed in the original bases. */
struct Base {
  Diagram diagram;
  std::vector<RootVec> roots;  // roots[j] = alpha'_j in alpha_1..alpha_n
  Matrix coroots;              // coroots[i] = h'_i in h_1..h_n (raw input coroots)
  std::vector<Step> path;
  std::shared_ptr<const Diagram> origin;  // raw, possibly unnormalized

  int n() const { return diagram.n(); }
};

/// Base at the start of a walk. The raw matrix is kept as origin; rows are
/// normalized by rescaling the coroots.
inline Base make_base(const Diagram& raw) {
  check_shape(raw.a, raw.parity);
  Base b;
  b.origin = std::make_shared<const Diagram>(raw);
  Matrix m = raw.a;
  std::vector<Scalar> scales = normalize_rows(m);
  b.diagram = Diagram{std::move(m), raw.parity, raw.name};
  int n = raw.n();
  for (int i = 0; i < n; ++i) {
    RootVec r(n, 0);
    r[i] = 1;
    b.roots.push_back(std::move(r));
    Vec c(n, Scalar(0));
    c[i] = scales[i];
    b.coroots.push_back(std::move(c));
  }
  return b;
}

inline int root_parity(const Diagram& origin, const RootVec& r) {
  long long s = 0;
  for (size_t i = 0; i < r.size(); ++i)
    if (origin.parity[i]) s += r[i];
  return int(((s % 2) + 2) % 2);
}

/// alpha(h) for root alpha and coroot h, both in the original bases.
inline Scalar pair(const Diagram& origin, const Vec& h, const RootVec& alpha) {
  Scalar acc;
  for (int i = 0; i < origin.n(); ++i) {
    if (h[i].is_zero()) continue;
    Scalar row;
    for (int j = 0; j < origin.n(); ++j)
      if (alpha[j] != 0) row += origin(i, j) * Scalar(alpha[j]);
    acc += h[i] * row;
  }
  return acc;
}

/// Recompute A' from coroots and roots (C * A_origin * R^T).
inline Matrix consistency_matrix(const Base& b) {
  Matrix m(b.n(), Vec(b.n()));
  for (int i = 0; i < b.n(); ++i)
    for (int j = 0; j < b.n(); ++j) m[i][j] = pair(*b.origin, b.coroots[i], b.roots[j]);
  return m;
}

inline Vec lincomb(const Scalar& s, const Vec& x, const Scalar& t, const Vec& y) {
  Vec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = s * x[i] + t * y[i];
  return out;
}

inline Base odd_reflect(const Base& b, int k) {
  const Diagram& d = b.diagram;
  int n = d.n();
  if (k < 0 || k >= n) throw ReflectError("vertex out of range");
  if (!d.isotropic(k)) throw ReflectError("odd reflection needs an isotropic vertex");
  if (!d.regular(k)) throw ReflectError("isotropic vertex is not regular; reflection refused");
  auto nb = [&](int i) { return i != k && (!d(i, k).is_zero() || !d(k, i).is_zero()); };

  Matrix a(n, Vec(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == k) a[i][j] = d(k, j);
      else if (j == k) a[i][j] = -(d(k, i) * d(i, k));
      else if (!nb(i)) a[i][j] = d(i, j);
      else if (!nb(j)) a[i][j] = d(k, i) * d(i, j);
      else a[i][j] = d(k, i) * d(i, j) + d(i, k) * d(k, j) + d(k, i) * d(i, k);
    }
  }

  Base out;
  out.origin = b.origin;
  out.path = b.path;
  out.path.push_back({k, true});
  out.roots = b.roots;
  out.coroots = b.coroots;
  for (int i = 0; i < n; ++i) {
    if (i == k) {
      for (auto& x : out.roots[i]) x = -x;
    } else if (nb(i)) {
      for (int l = 0; l < n; ++l)
        out.roots[i][l] = detail::checked_add(b.roots[i][l], b.roots[k][l]);
      // coroot matching the row above: a_ik h_k + a_ki h_i
      out.coroots[i] = lincomb(d(i, k), b.coroots[k], d(k, i), b.coroots[i]);
    }
  }
  std::vector<int> par(n);
  for (int i = 0; i < n; ++i) par[i] = root_parity(*b.origin, out.roots[i]);
  std::vector<Scalar> scales = normalize_rows(a);
  for (int i = 0; i < n; ++i)
    if (!scales[i].is_one())
      for (auto& x : out.coroots[i]) x *= scales[i];
  out.diagram = Diagram{std::move(a), std::move(par), {}};
  return out;
}

inline Base even_reflect(const Base& b, int k) {
  const Diagram& d = b.diagram;
  int n = d.n();
  if (k < 0 || k >= n) throw ReflectError("vertex out of range");
  if (d(k, k).is_zero()) throw ReflectError("even reflection needs a non-isotropic vertex");
  Base out = b;
  out.path.push_back({k, false});
  for (int i = 0; i < n; ++i) {
    if (i == k) {
      for (auto& x : out.roots[k]) x = -x;
      for (auto& x : out.coroots[k]) x = -x;
      continue;
    }
    auto c = d(k, i).as_integer();
    if (!c) throw ReflectError("even reflection needs integer a_ki");
    if (*c < LLONG_MIN / 2 || *c > LLONG_MAX / 2) throw ReflectError("root coefficient overflow");
    long long ci = static_cast<long long>(*c);
    for (int l = 0; l < n; ++l)
      out.roots[i][l] = detail::checked_add(b.roots[i][l], -detail::checked_mul(ci, b.roots[k][l]));
    out.coroots[i] = lincomb(Scalar(1), b.coroots[i], -d(i, k), b.coroots[k]);
  }
  return out;
}

inline Base replay(const Base& start, const std::vector<Step>& path) {
  Base b = start;
  for (const Step& s : path) b = s.odd ? odd_reflect(b, s.vertex) : even_reflect(b, s.vertex);
  return b;
}

// ---- canonical forms ----

enum class CanonMode { Exact, ModShift };

namespace detail {

inline std::string serialize(const Diagram& d) {
  std::string s;
  for (int p : d.parity) s += char('0' + p);
  return s + "|" + matrix_str(d);
}

/// Isomorphism-invariant vertex labels, refined twice over neighborhoods.
inline std::vector<std::string> vertex_keys(const Diagram& d) {
  int n = d.n();
  std::vector<std::string> key(n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> parts;
    if (d.isotropic(i)) {
      for (const auto& r : isotropic_ratios(d, i)) parts.push_back(r.str());
    } else {
      for (int j = 0; j < n; ++j)
        if (j != i && !d(i, j).is_zero()) parts.push_back(d(i, j).str());
    }
    std::sort(parts.begin(), parts.end());
    std::string k = std::string(kind_symbol(d.kind(i))) + "/" + std::to_string(neighbors(d, i).size());
    for (const auto& p : parts) k += "," + p;
    key[i] = k;
  }
  for (int round = 0; round < 2; ++round) {
    std::vector<std::string> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> nk;
      for (int j : neighbors(d, i)) nk.push_back(key[j]);
      std::sort(nk.begin(), nk.end());
      next[i] = key[i] + "{";
      for (const auto& s : nk) next[i] += s + ";";
      next[i] += "}";
    }
    key = std::move(next);
  }
  return key;
}

inline std::string exact_canonical(const Diagram& d) {
  int n = d.n();
  if (n > 12) throw DiagramError("canonical form limited to 12 vertices");
  std::vector<std::string> key = vertex_keys(d);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return key[x] < key[y]; });
  // blocks of equal keys; permutations act within blocks only
  std::vector<std::pair<int, int>> blocks;
  for (int s = 0; s < n;) {
    int e = s;
    while (e < n && key[order[e]] == key[order[s]]) ++e;
    blocks.push_back({s, e});
    s = e;
  }
  std::string best;
  bool have = false;
  std::vector<int> perm = order;
  for (auto& [s, e] : blocks) std::sort(perm.begin() + s, perm.begin() + e);
  for (;;) {
    std::string cand = serialize(subdiagram(d, perm));
    if (!have || cand < best) {
      best = std::move(cand);
      have = true;
    }
    size_t b = 0;
    for (; b < blocks.size(); ++b) {
      auto [s, e] = blocks[b];
      if (std::next_permutation(perm.begin() + s, perm.begin() + e)) break;
    }
    if (b == blocks.size()) break;
  }
  return best;
}

/// Scalars whose multiset is unchanged by relabeling and row rescaling.
inline Vec shift_invariant_data(const Diagram& d) {
  Vec out;
  for (int i = 0; i < d.n(); ++i) {
    if (d.isotropic(i)) {
      for (auto& r : isotropic_ratios(d, i)) out.push_back(r);
    } else {
      for (int j = 0; j < d.n(); ++j)
        if (j != i && !d(i, j).is_zero()) out.push_back(d(i, j));
    }
  }
  return out;
}

}  // namespace detail

inline Diagram shift_parameter(const Diagram& d, const Rational& k) {
  Diagram out = d;
  for (auto& row : out.a)
    for (auto& x : row) x = x.shifted(k);
  return normalize(out);
}

/// Integer shift that moves d to its shift-class representative.
inline BigInt centering_shift(const Diagram& d) {
  Rational sum;
  long long deg = 0;
  for (const Scalar& s : detail::shift_invariant_data(d)) {
    if (!s.is_ratfunc()) continue;
    for (const Poly* p : {&s.ratfunc_value().num, &s.ratfunc_value().den}) {
      if (p->degree() < 1) continue;
      sum += p->root_sum();
      deg += p->degree();
    }
  }
  if (deg == 0) throw DiagramError("mod_shift canonical form needs a parametric diagram");
  return (sum / Rational(deg)).floor();
}

inline std::string canonical_form(const Diagram& d, CanonMode mode = CanonMode::Exact) {
  Diagram nd = normalize(d);
  if (mode == CanonMode::Exact) return detail::exact_canonical(nd);
  if (!nd.parametric()) throw DiagramError("mod_shift canonical form needs a parametric diagram");
  return "~" + detail::exact_canonical(shift_parameter(nd, Rational(centering_shift(nd))));
}

/// Key used for orbit deduplication; non-parametric members fall back to exact.
inline std::string orbit_key(const Diagram& d, CanonMode mode) {
  if (mode == CanonMode::ModShift && d.parametric()) return canonical_form(d, mode);
  return canonical_form(d, CanonMode::Exact);
}

// ---- orbits ----

enum class OrbitStatus { Complete, Truncated, ClosedModuloShift };

inline const char* status_name(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Complete: return "complete";
    case OrbitStatus::Truncated: return "truncated";
    case OrbitStatus::ClosedModuloShift: return "closed-modulo-shift";
  }
  return "?";
}

struct OrbitMember {
  std::string key;
  Base base;
  int depth;
};

struct OrbitEdge {
  int from;
  int to;
  int vertex;
};

struct Refusal {
  int member;
  int vertex;
};

struct Orbit {
  std::vector<OrbitMember> members;
  std::vector<OrbitEdge> edges;
  std::vector<Refusal> refused;
  OrbitStatus status = OrbitStatus::Complete;
  CanonMode mode = CanonMode::Exact;
  int size() const { return int(members.size()); }
};

inline constexpr int kDefaultMaxDepth = 64;

inline Orbit orbit(const Base& start, int max_depth = kDefaultMaxDepth,
                   CanonMode mode = CanonMode::Exact) {
  if (mode == CanonMode::ModShift && !start.diagram.parametric())
    throw DiagramError("mod_shift orbit needs a parametric diagram");
  Orbit o;
  o.mode = mode;
  std::map<std::string, int> index;
  std::string k0 = orbit_key(start.diagram, mode);
  index[k0] = 0;
  o.members.push_back({k0, start, 0});
  bool truncated = false;
  for (size_t cur = 0; cur < o.members.size(); ++cur) {
    int depth = o.members[cur].depth;
    for (int k = 0; k < o.members[cur].base.n(); ++k) {
      const Base& b = o.members[cur].base;
      if (!b.diagram.isotropic(k)) continue;
      if (!b.diagram.regular(k)) {
        o.refused.push_back({int(cur), k});
        continue;
      }
      Base nb = odd_reflect(b, k);
      std::string key = orbit_key(nb.diagram, mode);
      auto it = index.find(key);
      if (it != index.end()) {
        o.edges.push_back({int(cur), it->second, k});
        continue;
      }
      if (depth >= max_depth) {
        truncated = true;
        continue;
      }
      int id = int(o.members.size());
      index[key] = id;
      o.edges.push_back({int(cur), id, k});
      o.members.push_back({key, std::move(nb), depth + 1});
    }
  }
  if (truncated) o.status = OrbitStatus::Truncated;
  else o.status = mode == CanonMode::ModShift ? OrbitStatus::ClosedModuloShift : OrbitStatus::Complete;
  return o;
}

inline Orbit orbit(const Diagram& d, int max_depth = kDefaultMaxDepth,
                   CanonMode mode = CanonMode::Exact) {
  return orbit(make_base(d), max_depth, mode);
}

// ---- principal roots ----

struct PrincipalRoot {
  RootVec root;
  Vec coroot;                               // normalized so that root(coroot) = 2
  std::vector<Step> path;                   // first odd-reflection path found
  int target = -1;                          // simple root index at the end of path
  bool doubled = false;                     // root is twice an odd simple root
  std::vector<std::vector<Step>> witnesses; // every distinct path found, first included
};

struct PrincipalRootSet {
  std::vector<PrincipalRoot> roots;
  bool complete = true;
};

namespace detail {

inline std::string labeled_key(const Diagram& d, CanonMode mode) {
  Diagram nd = normalize(d);
  if (mode == CanonMode::ModShift && nd.parametric())
    return "~" + serialize(shift_parameter(nd, Rational(centering_shift(nd))));
  return serialize(nd);
}

inline void harvest(const Base& b, PrincipalRootSet& out, size_t max_witnesses) {
  for (int i = 0; i < b.n(); ++i) {
    VertexKind kind = b.diagram.kind(i);
    if (kind != VertexKind::EvenSl2 && kind != VertexKind::OddOsp) continue;
    bool twice = kind == VertexKind::OddOsp;
    RootVec r = b.roots[i];
    Vec h = b.coroots[i];
    if (twice) {
      for (auto& x : r) x = checked_mul(x, 2);
      for (auto& x : h) x = x / Scalar(2);
    }
    auto it = std::find_if(out.roots.begin(), out.roots.end(),
                           [&](const PrincipalRoot& p) { return p.root == r; });
    if (it == out.roots.end()) {
      out.roots.push_back({r, h, b.path, i, twice, {b.path}});
    } else if (it->witnesses.size() < max_witnesses &&
               std::find(it->witnesses.begin(), it->witnesses.end(), b.path) == it->witnesses.end()) {
      it->witnesses.push_back(b.path);
    }
  }
}

}  // namespace detail

/// Even simple roots (and doubled odd non-isotropic ones) over every base reached
/// by odd reflections. Exploration deduplicates labeled diagrams, so bases that are
/// only isomorphic are still expanded.
inline PrincipalRootSet principal_roots(const Base& start, int max_depth = kDefaultMaxDepth,
                                        size_t max_witnesses = 16) {
  CanonMode mode = start.diagram.parametric() ? CanonMode::ModShift : CanonMode::Exact;
  PrincipalRootSet out;
  std::set<std::string> seen{detail::labeled_key(start.diagram, mode)};
  std::deque<std::pair<Base, int>> queue;
  queue.push_back({start, 0});
  detail::harvest(start, out, max_witnesses);
  while (!queue.empty()) {
    auto [b, depth] = std::move(queue.front());
    queue.pop_front();
    for (int k = 0; k < b.n(); ++k) {
      if (!b.diagram.isotropic(k) || !b.diagram.regular(k)) continue;
      Base nb = odd_reflect(b, k);
      detail::harvest(nb, out, max_witnesses);
      if (!seen.insert(detail::labeled_key(nb.diagram, mode)).second) continue;
      if (depth + 1 > max_depth) {
        out.complete = false;
        continue;
      }
      queue.push_back({std::move(nb), depth + 1});
    }
  }
  return out;
}

inline PrincipalRootSet principal_roots(const Diagram& d, int max_depth = kDefaultMaxDepth) {
  return principal_roots(make_base(d), max_depth);
}

// ---- chains ----

/// Vertices 0..n-1 in order form a chain when only consecutive ones are adjacent.
inline bool is_chain_in_order(const Diagram& d) {
  for (int i = 0; i < d.n(); ++i)
    for (int j = i + 1; j < d.n(); ++j)
      if (d.adjacent(i, j) != (j == i + 1)) return false;
  return true;
}

/// Odd reflections at v_n, v_{n-1}, ..., v_3 moving the isotropic end to v_2.
inline std::vector<Step> drag_isotropic(const Base& b) {
  const Diagram& d = b.diagram;
  int n = d.n();
  if (!is_chain_in_order(d)) throw ReflectError("diagram is not a chain in vertex order");
  if (!d.isotropic(n - 1)) throw ReflectError("last chain vertex is not isotropic");
  for (int i = 1; i + 1 < n; ++i)
    if (d.isotropic(i)) throw ReflectError("interior chain vertex is isotropic");
  std::vector<Step> path;
  Base cur = b;
  for (int k = n - 1; k >= 2; --k) {
    if (!cur.diagram.isotropic(k)) throw ReflectError("reflection chain broke: vertex not isotropic");
    cur = odd_reflect(cur, k);
    path.push_back({k, true});
  }
  Base check = replay(b, path);
  if (n >= 2 && !check.diagram.isotropic(1)) throw ReflectError("replay: v_2 is not isotropic");
  if (n >= 2 && !(check.diagram(0, 1) == d(0, 1))) throw ReflectError("replay: a_12 changed");
  if (!(check.diagram.a[0] == d.a[0]) || check.roots[0] != b.roots[0])
    throw ReflectError("replay: v_1 changed");
  return path;
}

}  // namespace skm
