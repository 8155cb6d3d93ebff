#pragma once

#include "skm/io.hpp"
#include "skm/reflect.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#ifndef SKM_FIXTURE_DIR
#define SKM_FIXTURE_DIR "fixtures"
#endif

namespace skm {

class ClassifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Tri { True, False, Inconclusive };

inline const char* tri_name(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---- exact linear algebra ----

inline Scalar determinant(Matrix m) {
  int n = int(m.size());
  Scalar det(1);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return Scalar(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    Scalar inv = m[col][col].inverse();
    for (int r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      Scalar f = m[r][col] * inv;
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

inline Matrix principal_submatrix(const Matrix& m, const std::vector<int>& J) {
  Matrix out;
  for (int i : J) {
    Vec row;
    for (int j : J) row.push_back(m[i][j]);
    out.push_back(std::move(row));
  }
  return out;
}

enum class GcmType { Finite, Affine, Indefinite };

inline const char* gcm_type_name(GcmType t) {
  switch (t) {
    case GcmType::Finite: return "finite";
    case GcmType::Affine: return "affine";
    case GcmType::Indefinite: return "indefinite";
  }
  return "?";
}

/// Principal-minor test for an indecomposable even GCM.
inline GcmType gcm_type(const Matrix& b) {
  int n = int(b.size());
  bool proper_positive = true;
  for (unsigned mask = 1; mask < (1u << n) - 1; ++mask) {
    std::vector<int> J;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) J.push_back(i);
    if (determinant(principal_submatrix(b, J)).sign() <= 0) {
      proper_positive = false;
      break;
    }
  }
  if (!proper_positive) return GcmType::Indefinite;
  int s = determinant(b).sign();
  if (s > 0) return GcmType::Finite;
  if (s == 0) return GcmType::Affine;
  return GcmType::Indefinite;
}

// ---- Q(m,n,t) ----

struct QmntSolution {
  int m = 0, n = 0, t = 0;
  bool plus = true;
  BigInt D;
  Scalar a, b, c;
  Diagram raw;      // rows (0,1,a), (b,0,1), (1,c,0) as written
  Diagram diagram;  // normalized
};

struct QmntSolutions {
  QmntSolution plus;
  QmntSolution minus;
  Poly f;                  // (NT-1)a^2 + (MNT-M+N-T)a + (MN-1)
  BigInt disc;             // discriminant of f
  Rational square_factor;  // disc = square_factor^2 * D
};

inline Diagram qmnt_raw(const Scalar& a, const Scalar& b, const Scalar& c, std::string name = {}) {
  return Diagram{Matrix{{Scalar(0), Scalar(1), a}, {b, Scalar(0), Scalar(1)}, {Scalar(1), c, Scalar(0)}},
                 {1, 1, 1}, std::move(name)};
}

inline std::string qmnt_name(bool plus, int m, int n, int t) {
  return std::string(plus ? "Q+" : "Q-") + "(" + std::to_string(m) + "," + std::to_string(n) + "," +
         std::to_string(t) + ")";
}

/// The three defining combinations 1+a+1/b, 1+b+1/c, 1+c+1/a.
inline std::array<Scalar, 3> qmnt_combinations(const Scalar& a, const Scalar& b, const Scalar& c) {
  Scalar one(1);
  return {one + a + b.inverse(), one + b + c.inverse(), one + c + a.inverse()};
}

inline QmntSolutions solve_qmnt(int m, int n, int t) {
  if (m > -1 || n > -1 || t > -1) throw ClassifyError("m, n, t must be integers <= -1");
  if (m == -1 && n == -1 && t == -1) throw ClassifyError("m = n = t = -1 is q(3)^(2), not Q(m,n,t)");
  BigInt M = 1 - m, N = 1 - n, T = 1 - t;
  BigInt A0 = N * T - 1, B0 = M * N * T - M + N - T, C0 = M * N - 1;
  BigInt disc = B0 * B0 - 4 * A0 * C0;
  BigInt k = M * N * T - M - N - T;
  BigInt D = k * k - 4;
  if (disc <= 0 || D <= 0 || !is_perfect_square(disc * D))
    throw ClassifyError("internal: discriminant is not a square multiple of D");
  Rational s(isqrt_floor(disc * D), D);
  QmntSolutions out;
  out.f = Poly(std::vector<Rational>{Rational(C0), Rational(B0), Rational(A0)});
  out.disc = disc;
  out.square_factor = s;
  Rational x = Rational(-B0, 2 * A0);
  Rational y = s / Rational(2 * A0);
  bool have_plus = false, have_minus = false;
  for (int sgn : {1, -1}) {
    Scalar a = Scalar::quad(D, x, y * Rational(sgn));
    Scalar b = (Scalar(m - 1) - a).inverse();
    Scalar c = Scalar(t - 1) - a.inverse();
    auto comb = qmnt_combinations(a, b, c);
    if (!(comb[0] == Scalar(m) && comb[1] == Scalar(n) && comb[2] == Scalar(t)))
      throw ClassifyError("internal: defining equations fail");
    if (!(Scalar(1) + a * b * c).sign()) throw ClassifyError("internal: 1+abc vanishes");
    auto in_plus = [](const Scalar& v) { return v.sign() < 0 && (v + Scalar(1)).sign() > 0; };
    auto in_minus = [](const Scalar& v) { return (v + Scalar(1)).sign() < 0; };
    QmntSolution sol{m, n, t, true, D, a, b, c, {}, {}};
    if (in_plus(a) && in_plus(b) && in_plus(c)) {
      sol.plus = true;
      have_plus = true;
    } else if (in_minus(a) && in_minus(b) && in_minus(c)) {
      sol.plus = false;
      have_minus = true;
    } else {
      throw ClassifyError("internal: root satisfies neither branch inequality");
    }
    sol.raw = qmnt_raw(a, b, c, qmnt_name(sol.plus, m, n, t));
    sol.diagram = normalize(sol.raw);
    (sol.plus ? out.plus : out.minus) = sol;
  }
  if (!have_plus || !have_minus) throw ClassifyError("internal: branches not separated");
  return out;
}

struct QmntReport {
  Scalar det;
  bool symmetrizable = false;
  Matrix B;
  GcmType b_type = GcmType::Indefinite;
  bool finite_growth_B = false;
  bool hyperbolic = false;
  bool in_hyperbolic_table = false;
};

inline bool qmnt_hyperbolic_table(int m, int n, int t) {
  std::array<int, 3> v{m, n, t};
  std::sort(v.begin(), v.end(), std::greater<int>());
  static const std::array<std::array<int, 3>, 5> table{
      {{-1, -1, -2}, {-1, -1, -3}, {-1, -1, -4}, {-1, -2, -2}, {-2, -2, -2}}};
  return std::find(table.begin(), table.end(), v) != table.end();
}

inline QmntReport qmnt_report(const QmntSolution& s) {
  QmntReport r;
  r.det = Scalar(1) + s.a * s.b * s.c;
  if (!(determinant(s.raw.a) == r.det)) throw ClassifyError("internal: determinant mismatch");
  r.symmetrizable = is_symmetrizable(s.diagram).symmetrizable;
  Scalar M(s.m), N(s.n), T(s.t), two(2);
  r.B = {{two, M, M}, {N, two, N}, {T, T, two}};
  r.b_type = gcm_type(r.B);
  r.finite_growth_B = r.b_type != GcmType::Indefinite;
  r.hyperbolic = true;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (gcm_type(principal_submatrix(r.B, {i, j})) == GcmType::Indefinite) r.hyperbolic = false;
  r.in_hyperbolic_table = qmnt_hyperbolic_table(s.m, s.n, s.t);
  return r;
}

// ---- family labels ----

struct FamilyLabel {
  std::string family;               // "Unknown" when nothing matches
  std::vector<std::string> params;
  std::string source;               // "structure" or the template file

  bool known() const { return family != "Unknown"; }
  std::string text() const {
    if (params.empty()) return family;
    std::string s = family + "[";
    for (size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + params[i];
    return s + "]";
  }
};

struct TriangleData {
  Scalar a, b, c, m, n, t;
};

/// The defining combinations of an all-isotropic triangle in the given vertex order.
inline std::optional<TriangleData> triangle_data(const Diagram& d) {
  if (d.n() != 3) return std::nullopt;
  for (int i = 0; i < 3; ++i) {
    if (!d.isotropic(i)) return std::nullopt;
    for (int j = 0; j < 3; ++j)
      if (i != j && d(i, j).is_zero()) return std::nullopt;
  }
  TriangleData td;
  td.a = d(0, 2) / d(0, 1);
  td.b = d(1, 0) / d(1, 2);
  td.c = d(2, 1) / d(2, 0);
  auto comb = qmnt_combinations(td.a, td.b, td.c);
  td.m = comb[0];
  td.n = comb[1];
  td.t = comb[2];
  return td;
}

inline std::vector<std::vector<int>> triangle_orders() {
  return {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
}

inline bool is_d21_triangle(const Diagram& d) {
  auto td = triangle_data(d);
  return td && td->m.is_zero() && td->n.is_zero() && td->t.is_zero();
}

inline std::optional<FamilyLabel> recognize_triangle(const Diagram& d) {
  if (d.n() != 3) return std::nullopt;
  for (const auto& ord : triangle_orders()) {
    auto td = triangle_data(permuted(d, ord));
    if (!td) return std::nullopt;
    if (td->m.is_zero() && td->n.is_zero() && td->t.is_zero())
      return FamilyLabel{"D(2,1,alpha)", {td->a.str()}, "structure"};
    auto mi = td->m.as_integer(), ni = td->n.as_integer(), ti = td->t.as_integer();
    if (!mi || !ni || !ti || *mi > -1 || *ni > -1 || *ti > -1) continue;
    if (*mi == -1 && *ni == -1 && *ti == -1) return FamilyLabel{"q(n)^(2)", {"3"}, "structure"};
    if (td->a.is_ratfunc()) continue;
    bool plus = (td->a + Scalar(1)).sign() > 0;
    return FamilyLabel{plus ? "Q+" : "Q-", {mi->str(), ni->str(), ti->str()}, "structure"};
  }
  return std::nullopt;
}

struct SShape {
  int e, i, j;
  Scalar ri, rj;
  Scalar alpha;  // 1/(r_i + 1)
};

/// Triangle with an even vertex e (row -1, 2, -1) and isotropic i < j with
/// ratios r_i = a_ie/a_ij, r_j = a_je/a_ji summing to -2, not both -1.
inline std::optional<SShape> s12a_shape(const Diagram& d) {
  if (d.n() != 3) return std::nullopt;
  for (int e = 0; e < 3; ++e) {
    if (d.kind(e) != VertexKind::EvenSl2) continue;
    int i = e == 0 ? 1 : 0, j = e == 2 ? 1 : 2;
    if (!d.isotropic(i) || !d.isotropic(j)) continue;
    if (!(d(e, i) == Scalar(-1)) || !(d(e, j) == Scalar(-1))) continue;
    for (int x : {i, j})
      for (int y = 0; y < 3; ++y)
        if (x != y && d(x, y).is_zero()) return std::nullopt;
    Scalar ri = d(i, e) / d(i, j), rj = d(j, e) / d(j, i);
    if (!(ri + rj == Scalar(-2))) continue;
    if (ri == Scalar(-1)) continue;
    return SShape{e, i, j, ri, rj, (ri + Scalar(1)).inverse()};
  }
  return std::nullopt;
}

/// Cycle whose even vertices carry -1,-1 and whose isotropic vertices have ratio -1.
inline std::optional<int> cycle_isotropic_count(const Diagram& d) {
  int n = d.n();
  if (n < 3 || !connected(d)) return std::nullopt;
  int iso = 0;
  for (int v = 0; v < n; ++v) {
    auto nb = neighbors(d, v);
    if (nb.size() != 2) return std::nullopt;
    VertexKind k = d.kind(v);
    if (k == VertexKind::EvenSl2) {
      if (!(d(v, nb[0]) == Scalar(-1)) || !(d(v, nb[1]) == Scalar(-1))) return std::nullopt;
    } else if (k == VertexKind::Isotropic) {
      if (d(v, nb[0]).is_zero() || d(v, nb[1]).is_zero()) return std::nullopt;
      if (!(d(v, nb[0]) / d(v, nb[1]) == Scalar(-1))) return std::nullopt;
      ++iso;
    } else {
      return std::nullopt;
    }
  }
  return iso;
}

// ---- chains and the long finite form ----

/// Vertices of `subset` in path order when they induce a path in d.
inline std::optional<std::vector<int>> path_order(const Diagram& d, const std::vector<int>& subset) {
  if (subset.empty()) return std::nullopt;
  auto deg = [&](int v) {
    int k = 0;
    for (int w : subset)
      if (d.adjacent(v, w)) ++k;
    return k;
  };
  int start = -1, ends = 0;
  for (int v : subset) {
    int k = deg(v);
    if (k > 2) return std::nullopt;
    if (k <= 1) {
      ++ends;
      if (start < 0) start = v;
    }
  }
  if (subset.size() == 1) return subset;
  if (ends != 2) return std::nullopt;
  std::vector<int> order{start};
  int prev = -1, cur = start;
  while (order.size() < subset.size()) {
    int next = -1;
    for (int w : subset)
      if (w != prev && w != cur && d.adjacent(cur, w)) next = w;
    if (next < 0) return std::nullopt;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

namespace detail {
inline bool eq(const Scalar& x, long long v) { return x == Scalar(v); }
inline bool ratio_is(const Diagram& d, int v, int x, int y, long long r) {
  return !d(v, y).is_zero() && d(v, x) / d(v, y) == Scalar(r);
}
}  // namespace detail

/// A(k,l) / A_k chain in the given path order; `skip_row` exempts one endpoint's row.
inline bool is_a_type_chain(const Diagram& d, const std::vector<int>& order, int skip_row = -1) {
  size_t m = order.size();
  for (size_t q = 0; q < m; ++q) {
    int v = order[q];
    if (q + 1 < m) {
      int w = order[q + 1];
      if (d(v, w).is_zero() || d(w, v).is_zero()) return false;
    }
    if (v == skip_row) continue;
    VertexKind k = d.kind(v);
    if (k != VertexKind::EvenSl2 && k != VertexKind::Isotropic) return false;
    bool interior = q > 0 && q + 1 < m;
    if (k == VertexKind::EvenSl2) {
      if (q > 0 && !detail::eq(d(v, order[q - 1]), -1)) return false;
      if (q + 1 < m && !detail::eq(d(v, order[q + 1]), -1)) return false;
    } else if (interior) {
      if (!detail::ratio_is(d, v, order[q - 1], order[q + 1], -1)) return false;
    }
  }
  return true;
}

/// Finite shape for five or more vertices: an A-type body with one of six end patterns.
inline bool long_finite_form(const Diagram& d) {
  int n = d.n();
  if (n < 5 || !connected(d)) return false;
  using detail::eq;
  using detail::ratio_is;
  for (int v1 = 0; v1 < n; ++v1) {
    std::vector<int> body;
    for (int v = 0; v < n; ++v)
      if (v != v1) body.push_back(v);
    auto order = path_order(d, body);
    if (!order || !is_a_type_chain(d, *order)) continue;
    for (int flip = 0; flip < 2; ++flip) {
      std::vector<int> ord = *order;
      if (flip) std::reverse(ord.begin(), ord.end());
      int v2 = ord[0], v3 = ord[1], v4 = ord[2];
      auto nb = neighbors(d, v1);
      bool to2 = d.adjacent(v1, v2), to3 = d.adjacent(v1, v3);
      if (int(nb.size()) != int(to2) + int(to3) || nb.empty()) continue;
      VertexKind k1 = d.kind(v1), k2 = d.kind(v2), k3 = d.kind(v3);
      if (to2 && !to3) {
        std::vector<int> full{v1};
        full.insert(full.end(), ord.begin(), ord.end());
        if (is_a_type_chain(d, full)) return true;  // plain chain
        if (k1 == VertexKind::EvenSl2 && k2 == VertexKind::EvenSl2 && eq(d(v2, v1), -2) && eq(d(v1, v2), -1))
          return true;
        if (k1 == VertexKind::EvenSl2 && k2 == VertexKind::Isotropic && eq(d(v1, v2), -1) &&
            ratio_is(d, v2, v1, v3, -2))
          return true;
        if ((k1 == VertexKind::EvenSl2 || k1 == VertexKind::OddOsp) && eq(d(v1, v2), -2) &&
            is_a_type_chain(d, full, v1))
          return true;
      }
      if (!to2 && to3 && k1 == VertexKind::EvenSl2 && k2 == VertexKind::EvenSl2 && eq(d(v1, v3), -1)) {
        if (k3 == VertexKind::EvenSl2 && eq(d(v3, v1), -1) && eq(d(v3, v2), -1)) return true;
        if (k3 == VertexKind::Isotropic && ratio_is(d, v3, v1, v2, 1) && ratio_is(d, v3, v2, v4, -1)) return true;
      }
      if (to2 && to3 && k1 == VertexKind::Isotropic && k2 == VertexKind::Isotropic &&
          ratio_is(d, v1, v2, v3, -2) && ratio_is(d, v2, v1, v3, -2)) {
        if (k3 == VertexKind::EvenSl2 && eq(d(v3, v1), -1) && eq(d(v3, v2), -1)) return true;
        if (k3 == VertexKind::Isotropic && ratio_is(d, v3, v1, v2, 1)) return true;
      }
    }
  }
  return false;
}

// ---- S(1,2,alpha) parametric lift ----

/// True when f has a root in a0 + Z.
inline bool has_root_in_class(const Poly& f, const Rational& a0) {
  if (f.is_zero()) return true;
  if (f.degree() == 0) return false;
  Poly g = f.shifted(a0);
  BigInt L = 1;
  for (const auto& c : g.coeffs()) L = boost::multiprecision::lcm(L, c.den());
  std::vector<BigInt> c;
  for (const auto& x : g.coeffs()) c.push_back(x.num() * (L / x.den()));
  if (c[0] == 0) return true;
  BigInt lead = boost::multiprecision::abs(c.back()), bound = 0;
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    BigInt q = boost::multiprecision::abs(c[i]) / lead + 1;
    bound = std::max(bound, q);
  }
  bound += 1;
  if (bound > 1000000) throw ClassifyError("root search bound too large");
  long long B = static_cast<long long>(bound);
  for (long long z = -B; z <= B; ++z) {
    if (z == 0) continue;
    BigInt acc = 0;
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    if (acc == 0) return true;
  }
  return false;
}

struct SLift {
  Diagram generic;  // same vertex order and raw row scales, parameter p
  Rational alpha;   // value of p giving back the concrete diagram
  SShape shape;
};

inline std::optional<SLift> s12a_lift(const Diagram& raw) {
  for (const auto& row : raw.a)
    for (const auto& x : row)
      if (!x.is_rational()) return std::nullopt;
  Diagram nd = normalize(raw);
  auto sh = s12a_shape(nd);
  if (!sh) return std::nullopt;
  Rational a0 = sh->alpha.rational();
  Scalar p = Scalar::param();
  Scalar ri = (Scalar(1) - p) / p, rj = -(Scalar(1) + p) / p;
  Diagram P = raw;
  P.a[sh->i][sh->e] = raw(sh->i, sh->j) * ri;
  P.a[sh->j][sh->e] = raw(sh->j, sh->i) * rj;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (!(P(x, y).substitute(a0) == raw(x, y))) return std::nullopt;
  return SLift{P, a0, *sh};
}

/// No entry or coroot coordinate of any generic member degenerates on a0 + Z.
inline bool lift_specializes(const Orbit& o, const Rational& a0) {
  auto bad = [&](const Scalar& x) {
    if (!x.is_ratfunc()) return false;
    return has_root_in_class(x.ratfunc_value().num, a0) || has_root_in_class(x.ratfunc_value().den, a0);
  };
  for (const auto& mem : o.members) {
    for (const auto& row : mem.base.diagram.a)
      for (const auto& x : row)
        if (bad(x)) return false;
    for (const auto& row : mem.base.coroots)
      for (const auto& x : row)
        if (bad(x)) return false;
  }
  return true;
}

// ---- template library ----

struct Template {
  std::string file;
  std::string family;  // file stem before "__"
  Diagram diagram;     // raw as stored
  bool finite = false;
  bool parametric = false;
};

inline bool family_is_finite(const std::string& family) {
  if (family.find('^') != std::string::npos) return false;
  static const std::set<std::string> infinite{"q", "S", "Qplus", "Qminus"};
  return !infinite.count(family);
}

class TemplateLibrary {
 public:
  TemplateLibrary() = default;

  static TemplateLibrary load(const std::filesystem::path& dir) {
    TemplateLibrary lib;
    if (!std::filesystem::is_directory(dir)) throw InputError("template directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".diagram" &&
          e.path().stem().string().find("__") != std::string::npos)
        files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      Template t;
      t.file = f.filename().string();
      std::string stem = f.stem().string();
      t.family = stem.substr(0, stem.find("__"));
      t.diagram = read_diagram(f);
      t.finite = family_is_finite(t.family);
      t.parametric = t.diagram.parametric();
      lib.add(std::move(t));
    }
    return lib;
  }

  void add(Template t) {
    int id = int(templates_.size());
    Diagram nd = normalize(t.diagram);
    CanonMode mode = t.parametric ? CanonMode::ModShift : CanonMode::Exact;
    Orbit o = orbit(nd, 32, mode);
    for (const auto& mem : o.members) {
      by_key_.emplace(mem.key, id);
      if (t.finite) finite_keys_.insert(mem.key);
    }
    templates_.push_back(std::move(t));
  }

  const std::vector<Template>& templates() const { return templates_; }
  bool finite_key(const std::string& key) const { return finite_keys_.count(key) > 0; }
  const Template* match(const std::string& key) const {
    auto it = by_key_.find(key);
    return it == by_key_.end() ? nullptr : &templates_[it->second];
  }

 private:
  std::vector<Template> templates_;
  std::map<std::string, int> by_key_;
  std::set<std::string> finite_keys_;
};

// ---- decisions ----

struct RegularVerdict {
  Tri value = Tri::Inconclusive;
  OrbitStatus status = OrbitStatus::Complete;
  int orbit_size = 0;
  int depth = 0;                   // depth of the witness member
  std::vector<Step> witness_path;  // path to the offending member
  Diagram witness;
  std::vector<GcmViolation> violations;
  bool lifted = false;
  std::string note;
};

struct SubfiniteVerdict {
  Tri value = Tri::Inconclusive;
  std::vector<Step> witness_path;
  std::vector<int> subset;  // offending subdiagram of the witness member
  std::string note;
};

class Classifier {
 public:
  explicit Classifier(TemplateLibrary lib) : lib_(std::move(lib)) {}

  const TemplateLibrary& library() const { return lib_; }

  bool is_finite_type(const Diagram& raw) {
    Diagram d = normalize(raw);
    if (!d.has_isotropic()) throw ClassifyError("finite-type test needs an isotropic vertex");
    std::string key = orbit_key(d, d.parametric() ? CanonMode::ModShift : CanonMode::Exact);
    auto it = finite_cache_.find(key);
    if (it != finite_cache_.end()) return it->second;
    bool fin = lib_.finite_key(key);
    if (!fin && d.n() == 3) {
      Orbit o = orbit(d, 8, d.parametric() ? CanonMode::ModShift : CanonMode::Exact);
      for (const auto& mem : o.members)
        for (const auto& ord : triangle_orders())
          if (is_d21_triangle(permuted(mem.base.diagram, ord))) fin = true;
    }
    if (!fin && d.n() >= 5) fin = long_finite_form(d);
    finite_cache_[key] = fin;
    return fin;
  }

  RegularVerdict is_regular_kac_moody(const Diagram& raw, int max_depth = kDefaultMaxDepth) {
    RegularVerdict v;
    Base start = make_base(raw);
    CanonMode mode = start.diagram.parametric() ? CanonMode::ModShift : CanonMode::Exact;
    Orbit o = orbit(start, max_depth, mode);
    v.status = o.status;
    v.orbit_size = o.size();
    if (auto bad = first_violation(o)) {
      const auto& mem = o.members[bad->first];
      v.value = Tri::False;
      v.depth = mem.depth;
      v.witness_path = mem.base.path;
      v.witness = mem.base.diagram;
      v.violations = bad->second;
      return v;
    }
    if (o.status != OrbitStatus::Truncated) {
      v.value = Tri::True;
      return v;
    }
    v.value = Tri::Inconclusive;
    v.note = "orbit truncated at depth " + std::to_string(max_depth);
    if (auto lift = s12a_lift(raw)) {
      Orbit g = orbit(make_base(lift->generic), max_depth, CanonMode::ModShift);
      if (g.status == OrbitStatus::ClosedModuloShift && !first_violation(g) &&
          lift_specializes(g, lift->alpha)) {
        v.value = Tri::True;
        v.lifted = true;
        v.note = "decided on the parametric family at p = " + lift->alpha.str();
      }
    }
    return v;
  }

  SubfiniteVerdict is_subfinite(const Diagram& raw, int max_depth = kDefaultMaxDepth) {
    Diagram d = normalize(raw);
    if (!connected(d)) throw ClassifyError("subfinite test needs a connected diagram");
    if (!d.has_isotropic()) throw ClassifyError("subfinite test needs an isotropic vertex");
    RegularVerdict reg = is_regular_kac_moody(raw, max_depth);
    if (reg.value == Tri::False) throw ClassifyError("subfinite test needs a regular Kac-Moody diagram");
    SubfiniteVerdict v;
    if (reg.value == Tri::Inconclusive) {
      v.note = "regularity inconclusive";
      return v;
    }
    Orbit o;
    if (reg.lifted) {
      o = orbit(make_base(s12a_lift(raw)->generic), max_depth, CanonMode::ModShift);
      v.note = "checked on the parametric family";
    } else {
      o = orbit(make_base(raw), max_depth, d.parametric() ? CanonMode::ModShift : CanonMode::Exact);
    }
    int n = d.n();
    for (const auto& mem : o.members) {
      const Diagram& md = mem.base.diagram;
      for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> J;
        bool iso = false;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) {
            J.push_back(i);
            iso = iso || md.isotropic(i);
          }
        if (!iso) continue;
        Diagram sub = subdiagram(md, J);
        if (!connected(sub)) continue;
        if (!is_finite_type(sub)) {
          v.value = Tri::False;
          v.witness_path = mem.base.path;
          v.subset = J;
          return v;
        }
      }
    }
    v.value = Tri::True;
    return v;
  }

  FamilyLabel recognize_family(const Diagram& raw) {
    Diagram d = normalize(raw);
    if (auto t = recognize_triangle(d)) return *t;
    if (auto s = s12a_shape(d)) return FamilyLabel{"S(1,2,alpha)", {s->alpha.str()}, "structure"};
    if (auto iso = cycle_isotropic_count(d); iso && *iso % 2 == 1)
      return FamilyLabel{"q(n)^(2)", {std::to_string(d.n())}, "structure"};
    CanonMode mode = d.parametric() ? CanonMode::ModShift : CanonMode::Exact;
    if (const Template* t = lib_.match(orbit_key(d, mode)))
      return FamilyLabel{t->diagram.name.empty() ? t->family : t->diagram.name, {}, t->file};
    // orbit members may carry the structural shapes
    Orbit o = orbit(d, 8, mode);
    for (const auto& mem : o.members) {
      if (auto t = recognize_triangle(mem.base.diagram)) return *t;
      if (auto s = s12a_shape(mem.base.diagram))
        return FamilyLabel{"S(1,2,alpha)", {s->alpha.str()}, "structure"};
    }
    return FamilyLabel{"Unknown", {}, {}};
  }

  /// Principal roots, lifting concrete S(1,2,alpha) diagrams to the parametric family.
  PrincipalRootSet principal_roots_of(const Diagram& raw, int max_depth = kDefaultMaxDepth) {
    Base start = make_base(raw);
    PrincipalRootSet pr = principal_roots(start, max_depth);
    if (pr.complete) return pr;
    auto lift = s12a_lift(raw);
    if (!lift) return pr;
    RegularVerdict reg = is_regular_kac_moody(raw, max_depth);
    if (reg.value != Tri::True || !reg.lifted) return pr;
    PrincipalRootSet gen = principal_roots(make_base(lift->generic), max_depth);
    PrincipalRootSet out;
    out.complete = gen.complete;
    for (const auto& g : gen.roots) {
      PrincipalRoot r = g;
      Base b = replay(start, g.path);
      RootVec root = b.roots[g.target];
      Vec h = b.coroots[g.target];
      if (g.doubled) {
        for (auto& x : root) x *= 2;
        for (auto& x : h) x = x / Scalar(2);
      }
      if (root != g.root) throw ClassifyError("internal: lifted root does not replay");
      r.coroot = h;
      out.roots.push_back(std::move(r));
    }
    return out;
  }

 private:
  static std::optional<std::pair<int, std::vector<GcmViolation>>> first_violation(const Orbit& o) {
    for (size_t i = 0; i < o.members.size(); ++i) {
      GcmVerdict g = is_generalized_cartan(o.members[i].base.diagram);
      if (!g.ok()) return std::make_pair(int(i), g.violations);
    }
    return std::nullopt;
  }

  TemplateLibrary lib_;
  std::map<std::string, bool> finite_cache_;
};

inline Classifier& default_classifier() {
  static Classifier c(TemplateLibrary::load(SKM_FIXTURE_DIR));
  return c;
}

inline bool is_finite_type(const Diagram& d) { return default_classifier().is_finite_type(d); }
inline RegularVerdict is_regular_kac_moody(const Diagram& d, int max_depth = kDefaultMaxDepth) {
  return default_classifier().is_regular_kac_moody(d, max_depth);
}
inline SubfiniteVerdict is_subfinite(const Diagram& d, int max_depth = kDefaultMaxDepth) {
  return default_classifier().is_subfinite(d, max_depth);
}
inline FamilyLabel recognize_family(const Diagram& d) { return default_classifier().recognize_family(d); }

}  // namespace skm
