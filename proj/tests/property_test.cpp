#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace skm;
using skm::test::fixture_files;
using skm::test::pairing;

namespace {

constexpr unsigned kSeed = 20240611;

std::vector<Diagram> corpus() {
  static const std::vector<Diagram> all = [] {
    std::vector<Diagram> out;
    for (const auto& f : fixture_files()) out.push_back(read_diagram(f));
    return out;
  }();
  return all;
}

std::vector<int> reflectable(const Base& b) {
  std::vector<int> out;
  for (int k = 0; k < b.n(); ++k)
    if (b.diagram.isotropic(k) && b.diagram.regular(k)) out.push_back(k);
  return out;
}

bool same_base(const Base& x, const Base& y) {
  return x.diagram.a == y.diagram.a && x.diagram.parity == y.diagram.parity && x.roots == y.roots &&
         x.coroots == y.coroots;
}

// Parity of each simple root recomputed from its coefficients.
std::vector<int> parity_of_roots(const Base& b) {
  std::vector<int> out;
  for (const auto& r : b.roots) {
    long long s = 0;
    for (int i = 0; i < b.n(); ++i) s += b.origin->parity[i] ? r[i] : 0;
    out.push_back(int(((s % 2) + 2) % 2));
  }
  return out;
}

}  // namespace

TEST(Walks, FiveHundredRandomOddReflectionWalks) {
  std::mt19937 rng(kSeed);
  auto all = corpus();
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  std::uniform_int_distribution<int> len(1, 10);
  int steps = 0;
  for (int walk = 0; walk < 500; ++walk) {
    const Diagram& d = all[pick(rng)];
    Base b = make_base(d);
    int n = len(rng);
    for (int s = 0; s < n; ++s) {
      auto ks = reflectable(b);
      if (ks.empty()) break;
      int k = ks[std::uniform_int_distribution<size_t>(0, ks.size() - 1)(rng)];
      Base next = odd_reflect(b, k);
      ++steps;
      ASSERT_EQ(pairing(next), next.diagram.a) << d.name << " walk " << walk;
      ASSERT_EQ(parity_of_roots(next), next.diagram.parity) << d.name;
      ASSERT_TRUE(is_generalized_cartan(next.diagram).ok()) << d.name;
      EXPECT_TRUE(same_base(odd_reflect(next, k), b)) << d.name;
      EXPECT_EQ(normalize(next.diagram).a, next.diagram.a);
      b = std::move(next);
    }
    EXPECT_TRUE(same_base(replay(make_base(d), b.path), b));
  }
  EXPECT_GT(steps, 1500);
}

TEST(Walks, EvenReflectionsAreInvolutionsAndKeepConsistency) {
  std::mt19937 rng(kSeed + 1);
  auto all = corpus();
  int checked = 0;
  for (const auto& d : all) {
    Base b = make_base(d);
    for (int k = 0; k < b.n(); ++k) {
      if (b.diagram.kind(k) != VertexKind::EvenSl2) continue;
      bool integral = true;
      for (int i = 0; i < b.n(); ++i) integral = integral && b.diagram(k, i).is_integer();
      if (!integral) continue;
      Base r = even_reflect(b, k);
      EXPECT_EQ(pairing(r), consistency_matrix(r)) << d.name;
      EXPECT_TRUE(same_base(even_reflect(r, k), b)) << d.name;
      ++checked;
    }
  }
  EXPECT_GT(checked, 50);
}

// The whole orbit of a regular diagram consists of generalized Cartan matrices.
TEST(Regular, OrbitMembersStayGeneralizedCartan) {
  for (const auto& d : corpus()) {
    Orbit o = orbit(d, kDefaultMaxDepth, d.parametric() ? CanonMode::ModShift : CanonMode::Exact);
    for (const auto& m : o.members) EXPECT_TRUE(is_generalized_cartan(m.base.diagram).ok()) << d.name;
  }
}

TEST(Qmnt, RandomTriplesSatisfyDefiningEquations) {
  std::mt19937 rng(kSeed + 2);
  std::uniform_int_distribution<int> e(-15, -1);
  for (int it = 0; it < 60; ++it) {
    int m = e(rng), n = e(rng), t = e(rng);
    if (m == -1 && n == -1 && t == -1) continue;
    auto sols = solve_qmnt(m, n, t);
    for (const auto& s : {sols.plus, sols.minus}) {
      using skm::test::approx;
      double a = double(approx(s.a)), b = double(approx(s.b)), c = double(approx(s.c));
      EXPECT_NEAR(1 + a + 1 / b, m, 1e-9);
      EXPECT_NEAR(1 + b + 1 / c, n, 1e-9);
      EXPECT_NEAR(1 + c + 1 / a, t, 1e-9);
      if (s.plus) {
        for (double x : {a, b, c}) EXPECT_TRUE(x < 0 && x > -1);
      } else {
        for (double x : {a, b, c}) EXPECT_LT(x, -1);
      }
      EXPECT_FALSE(is_symmetrizable(s.diagram).symmetrizable);
      EXPECT_TRUE(is_generalized_cartan(s.diagram).ok());
      Orbit o = orbit(s.raw);
      EXPECT_EQ(o.size(), 4u) << s.raw.name;
      for (const auto& mem : o.members) EXPECT_TRUE(is_generalized_cartan(mem.base.diagram).ok());
    }
  }
}

// L(lambda) does not depend on the base used to describe it, so the verdict
// must survive moving the diagram and the weight along an odd reflection walk.
TEST(Integrable, VerdictInvariantUnderChangeOfBase) {
  std::mt19937 rng(kSeed + 3);
  std::vector<Diagram> pool;
  for (const auto& d : corpus())
    if (!d.parametric() && d.n() <= 4 && recognize_family(d).family.rfind("q", 0) != 0) pool.push_back(d);
  ASSERT_FALSE(pool.empty());
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> val(0, 3), len(1, 4);
  int agreed_true = 0, agreed_false = 0;
  for (int it = 0; it < 80; ++it) {
    const Diagram& d = pool[pick(rng)];
    Weight w;
    for (int i = 0; i < d.n(); ++i) w.values.push_back(Scalar(val(rng)));
    Base b = make_base(d);
    Weight cur = w;
    bool moved = false;
    for (int s = 0, n = len(rng); s < n; ++s) {
      auto ks = reflectable(b);
      if (ks.empty()) break;
      int k = ks[std::uniform_int_distribution<size_t>(0, ks.size() - 1)(rng)];
      cur = *transform_weight(b, cur, k);
      b = odd_reflect(b, k);
      moved = true;
    }
    if (!moved) continue;
    // Weight in the new base: its values on the new coroots.
    Weight w2;
    for (int i = 0; i < b.n(); ++i) w2.values.push_back(evaluate(cur, b.coroots[i]));
    Diagram d2{b.diagram.a, b.diagram.parity, d.name + "'"};
    Tri x = is_integrable_hw(d, w).integrable, y = is_integrable_hw(d2, w2).integrable;
    EXPECT_EQ(x, y) << d.name;
    (x == Tri::True ? agreed_true : agreed_false) += (x == y);
  }
  EXPECT_GT(agreed_true, 5);
  EXPECT_GT(agreed_false, 5);
}

// Random A-type bodies with one decorated end: the classifier's finite verdict
// must match the growth type of the even part computed from principal roots.
TEST(FiniteType, RandomChainsMatchEvenPart) {
  std::mt19937 rng(kSeed + 4);
  std::uniform_int_distribution<int> coin(0, 1), len(5, 7), end(0, 7);
  int finite = 0, infinite = 0;
  for (int it = 0; it < 120; ++it) {
    int n = len(rng);
    Matrix a(n, Vec(n, Scalar(0)));
    std::vector<int> p(n);
    for (int i = 1; i < n; ++i) p[i] = coin(rng);
    // Body 1..n-1: even vertices (2,-1,-1); isotropic vertices (0,-1,1).
    for (int i = 1; i < n; ++i) {
      if (p[i]) {
        a[i][i] = Scalar(0);
        a[i][i - 1] = Scalar(-1);
        if (i + 1 < n) a[i][i + 1] = Scalar(1);
      } else {
        a[i][i] = Scalar(2);
        a[i][i - 1] = Scalar(-1);
        if (i + 1 < n) a[i][i + 1] = Scalar(-1);
      }
    }
    // Vertex 0 hangs off vertex 1 with a random end pattern.
    switch (end(rng)) {
      case 0: a[0][0] = Scalar(2), a[0][1] = Scalar(-1); break;
      case 1: a[0][0] = Scalar(2), a[0][1] = Scalar(-2); break;
      case 2: a[0][0] = Scalar(2), a[0][1] = Scalar(-1), a[1][0] = Scalar(p[1] ? -1 : -2); break;
      case 3: a[0][0] = Scalar(2), a[0][1] = Scalar(-3); break;
      case 4: a[0][0] = Scalar(0), a[0][1] = Scalar(1), p[0] = 1; break;
      case 5: a[0][0] = Scalar(2), a[0][1] = Scalar(-2), p[0] = 1; break;
      case 6:  // fork on the second body vertex
        a[0][0] = Scalar(2), a[0][2] = Scalar(-1), a[2][0] = Scalar(p[2] ? 1 : -1);
        if (p[2]) a[2][1] = Scalar(-1);
        break;
      default:  // close the chain into a cycle
        a[0][0] = Scalar(2), a[0][1] = Scalar(-1), a[0][n - 1] = Scalar(-1);
        a[n - 1][0] = Scalar(p[n - 1] ? 1 : -1);
        break;
    }
    Diagram d = normalize(a, p);
    if (!is_generalized_cartan(d).ok()) continue;
    bool has_isotropic = false;
    for (int i = 0; i < n; ++i) has_isotropic = has_isotropic || d.isotropic(i);
    if (!has_isotropic) continue;  // outside the classifier's scope
    if (is_regular_kac_moody(d).value != Tri::True) continue;
    auto pr = default_classifier().principal_roots_of(d);
    if (!pr.complete) {
      EXPECT_FALSE(is_finite_type(d)) << matrix_str(d);
      ++infinite;
      continue;
    }
    bool oracle = skm::test::even_part_finite(d);
    EXPECT_EQ(is_finite_type(d), oracle) << matrix_str(d);
    (oracle ? finite : infinite)++;
  }
  EXPECT_GT(finite, 10) << infinite;
  EXPECT_GT(infinite, 3) << finite;
}
