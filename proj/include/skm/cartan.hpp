#pragma once

#include "skm/scalar.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace skm {

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class VertexKind { EvenSl2, OddOsp, Isotropic, Heisenberg };

inline const char* kind_symbol(VertexKind k) {
  switch (k) {
    case VertexKind::EvenSl2: return "even";
    case VertexKind::OddOsp: return "odd";
    case VertexKind::Isotropic: return "isotropic";
    case VertexKind::Heisenberg: return "heisenberg";
  }
  return "?";
}

struct Diagram {
  Matrix a;                 // a[i][j] = alpha_j(h_i)
  std::vector<int> parity;  // 0 even, 1 odd
  std::string name{};

  int n() const { return static_cast<int>(a.size()); }
  const Scalar& operator()(int i, int j) const { return a[i][j]; }

  VertexKind kind(int i) const {
    bool zero = a[i][i].is_zero();
    if (parity[i]) return zero ? VertexKind::Isotropic : VertexKind::OddOsp;
    return zero ? VertexKind::Heisenberg : VertexKind::EvenSl2;
  }
  bool isotropic(int i) const { return kind(i) == VertexKind::Isotropic; }
  bool adjacent(int i, int j) const {
    return i != j && (!a[i][j].is_zero() || !a[j][i].is_zero());
  }
  /// An isotropic vertex is regular when a_ij = 0 exactly when a_ji = 0.
  bool regular(int k) const {
    for (int j = 0; j < n(); ++j)
      if (a[k][j].is_zero() != a[j][k].is_zero()) return false;
    return true;
  }
  bool parametric() const {
    for (const auto& row : a)
      for (const auto& x : row)
        if (x.is_parametric()) return true;
    return false;
  }
  bool has_isotropic() const {
    for (int i = 0; i < n(); ++i)
      if (isotropic(i)) return true;
    return false;
  }
  bool zero_row(int i) const {
    return std::all_of(a[i].begin(), a[i].end(), [](const Scalar& x) { return x.is_zero(); });
  }
  friend bool operator==(const Diagram& x, const Diagram& y) {
    return x.a == y.a && x.parity == y.parity;
  }
};

/// Factor that brings row i to the normal form (diagonal 2, or first nonzero 1).
inline Scalar row_scale(const Vec& row, int i) {
  if (!row[i].is_zero()) return Scalar(2) / row[i];
  for (const auto& x : row)
    if (!x.is_zero()) return x.inverse();
  return Scalar(1);
}

inline void check_shape(const Matrix& m, const std::vector<int>& parity) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw DiagramError("matrix is not square");
  if (parity.size() != m.size()) throw DiagramError("parity length does not match matrix size");
  for (int p : parity)
    if (p != 0 && p != 1) throw DiagramError("parity entries must be 0 or 1");
}

/// Normalizes rows in place and returns the per-row scale factors used.
inline std::vector<Scalar> normalize_rows(Matrix& m) {
  std::vector<Scalar> scales;
  for (size_t i = 0; i < m.size(); ++i) {
    Scalar s = row_scale(m[i], int(i));
    if (!s.is_one())
      for (auto& x : m[i]) x *= s;
    scales.push_back(s);
  }
  return scales;
}

inline Diagram normalize(Matrix m, std::vector<int> parity, std::string name = {}) {
  check_shape(m, parity);
  normalize_rows(m);
  return Diagram{std::move(m), std::move(parity), std::move(name)};
}

inline Diagram normalize(const Diagram& d) { return normalize(d.a, d.parity, d.name); }

// ---- generalized Cartan conditions ----

struct GcmViolation {
  std::string rule;  // "1", "2" or "3'"
  int i;
  int j;
};

struct GcmVerdict {
  std::vector<GcmViolation> violations;
  bool ok() const { return violations.empty(); }
};

inline GcmVerdict is_generalized_cartan(const Diagram& d) {
  GcmVerdict v;
  int n = d.n();
  for (int i = 0; i < n; ++i) {
    const Scalar& aii = d(i, i);
    if (aii.is_zero() && d.parity[i] == 0) {
      for (int j = 0; j < n; ++j)
        if (!d(i, j).is_zero()) v.violations.push_back({"1", i, j});
    }
    if (aii == Scalar(2)) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        bool good = d.parity[i] ? d(i, j).is_in_even_nonpositive_integers()
                                : d(i, j).is_nonpositive_integer();
        if (!good) v.violations.push_back({"2", i, j});
      }
    }
    for (int j = 0; j < n; ++j)
      if (j != i && d(i, j).is_zero() && !d(j, i).is_zero()) v.violations.push_back({"3'", j, i});
  }
  return v;
}

// ---- graph structure ----

inline std::vector<std::vector<int>> components(const Diagram& d) {
  int n = d.n();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{s}, stack{s};
    comp[s] = int(out.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && d.adjacent(u, w)) {
          comp[w] = comp[s];
          members.push_back(w);
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

inline bool connected(const Diagram& d) { return components(d).size() == 1; }

inline std::vector<int> neighbors(const Diagram& d, int i) {
  std::vector<int> out;
  for (int j = 0; j < d.n(); ++j)
    if (d.adjacent(i, j)) out.push_back(j);
  return out;
}

inline Diagram subdiagram(const Diagram& d, const std::vector<int>& J) {
  if (J.empty()) throw DiagramError("empty vertex subset");
  for (int j : J)
    if (j < 0 || j >= d.n()) throw DiagramError("vertex out of range");
  Matrix m;
  std::vector<int> par;
  for (int i : J) {
    Vec row;
    for (int j : J) row.push_back(d(i, j));
    m.push_back(std::move(row));
    par.push_back(d.parity[i]);
  }
  return normalize(std::move(m), std::move(par));
}

/// Relabel so that new vertex q is old vertex perm[q].
inline Diagram permuted(const Diagram& d, const std::vector<int>& perm) {
  Diagram out = subdiagram(d, perm);
  out.name = d.name;
  return out;
}

struct SymmetrizableResult {
  bool symmetrizable = false;
  std::optional<Vec> witness;  // diagonal D with D*A symmetric
};

inline SymmetrizableResult is_symmetrizable(const Diagram& d) {
  int n = d.n();
  Vec diag(n);
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    diag[s] = Scalar(1);
    std::vector<int> stack{s};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        if (seen[w] || !d.adjacent(u, w)) continue;
        if (d(w, u).is_zero() || d(u, w).is_zero()) return {};
        diag[w] = diag[u] * d(u, w) / d(w, u);
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(diag[i] * d(i, j) == diag[j] * d(j, i))) return {};
  return {true, diag};
}

/// Both orientations of a_ji/a_jk over unordered neighbor pairs {i,k} of isotropic j.
inline Vec isotropic_ratios(const Diagram& d, int j) {
  if (!d.isotropic(j)) throw DiagramError("vertex is not isotropic");
  Vec out;
  std::vector<int> nb;
  for (int i = 0; i < d.n(); ++i)
    if (i != j && !d(j, i).is_zero()) nb.push_back(i);
  for (size_t x = 0; x < nb.size(); ++x)
    for (size_t y = x + 1; y < nb.size(); ++y) {
      out.push_back(d(j, nb[x]) / d(j, nb[y]));
      out.push_back(d(j, nb[y]) / d(j, nb[x]));
    }
  return out;
}

inline std::string matrix_str(const Diagram& d) {
  std::string s;
  for (int i = 0; i < d.n(); ++i) {
    s += i ? ";" : "";
    for (int j = 0; j < d.n(); ++j) s += (j ? "," : "") + d(i, j).str();
  }
  return s;
}

}  // namespace skm
