#pragma once

#include "skm/skm.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace skm::test {

inline Matrix M(std::initializer_list<std::initializer_list<const char*>> rows) {
  Matrix m;
  for (auto r : rows) {
    Vec v;
    for (auto e : r) v.push_back(parse_scalar(e));
    m.push_back(v);
  }
  return m;
}

using F = boost::multiprecision::cpp_bin_float_50;

/// Rational or quadratic scalar evaluated in 50-digit floating point.
inline F approx(const Scalar& s) {
  if (s.is_rational()) return F(s.rational().num()) / F(s.rational().den());
  const Quad& q = s.quad_value();
  return F(q.x.num()) / F(q.x.den()) + F(q.y.num()) / F(q.y.den()) * boost::multiprecision::sqrt(F(q.D));
}

inline std::filesystem::path fixture_dir() { return SKM_FIXTURE_DIR; }

inline Diagram fixture(const std::string& stem) { return read_diagram(fixture_dir() / (stem + ".diagram")); }

/// Every positive fixture (top level), sorted by file name.
inline std::vector<std::filesystem::path> fixture_files(const std::filesystem::path& dir = fixture_dir()) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".diagram") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

/// alpha'_j(h'_i) recomputed from the stored vectors with plain loops.
inline Matrix pairing(const Base& b) {
  const Diagram& o = *b.origin;
  int n = b.n();
  Matrix m(n, Vec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Scalar acc;
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t)
          if (b.roots[j][t] != 0 && !b.coroots[i][s].is_zero())
            acc += b.coroots[i][s] * o(s, t) * Scalar(b.roots[j][t]);
      m[i][j] = acc;
    }
  return m;
}

/// Cartan matrix of the principal roots, B_ij = beta_j(h_i) with the origin pairing.
inline Matrix principal_cartan(const Diagram& raw) {
  PrincipalRootSet pr = default_classifier().principal_roots_of(raw);
  if (!pr.complete) throw std::runtime_error("principal roots incomplete");
  Base start = make_base(raw);
  size_t k = pr.roots.size();
  Matrix b(k, Vec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) b[i][j] = pair(*start.origin, pr.roots[i].coroot, pr.roots[j].root);
  return b;
}

/// Growth type of each connected component of the principal-root matrix.
inline std::vector<GcmType> even_part_types(const Diagram& raw) {
  Matrix b = principal_cartan(raw);
  Diagram bd{b, std::vector<int>(b.size(), 0)};
  std::vector<GcmType> out;
  for (const auto& comp : components(bd)) out.push_back(gcm_type(principal_submatrix(b, comp)));
  return out;
}

inline bool even_part_finite(const Diagram& raw) {
  auto t = even_part_types(raw);
  return std::all_of(t.begin(), t.end(), [](GcmType g) { return g == GcmType::Finite; });
}

}  // namespace skm::test
