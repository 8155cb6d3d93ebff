#pragma once

#include "skm/classify.hpp"

#include <optional>
#include <string>
#include <vector>

namespace skm {

class IntegrabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Highest weight as values on the coroots of the diagram as given (not normalized).
struct Weight {
  Vec values;
};

/// lambda(h) for h expressed in the original coroots.
inline Scalar evaluate(const Weight& w, const Vec& h) {
  Scalar acc;
  for (size_t i = 0; i < h.size(); ++i)
    if (!h[i].is_zero()) acc += h[i] * w.values[i];
  return acc;
}

struct ConditionCheck {
  bool pass = false;
  Scalar value;
  int exponent = 0;  // required set is 2^exponent * Z_{>=0}
};

inline ConditionCheck nonisotropic_condition(const Diagram& d, const Weight& w, int i) {
  if (d.isotropic(i)) return {true, w.values[i], 0};
  int e = d.kind(i) == VertexKind::OddOsp ? 1 : 0;
  return {w.values[i].in_scaled_nonnegative_integers(e), w.values[i], e};
}

struct BranchRecord {
  int vertex;
  bool odd;
  Scalar value;  // lambda at the reflected coroot
  Scalar coeff;  // multiple of alpha_k subtracted
};

/// Weight after the reflection at k; values stay on the original coroots.
/// Returns nullopt when a non-isotropic k fails its own condition.
inline std::optional<Weight> transform_weight(const Base& b, const Weight& w, int k, BranchRecord* rec = nullptr) {
  const Diagram& d = b.diagram;
  Scalar v = evaluate(w, b.coroots[k]);
  if (v.is_ratfunc()) throw IntegrabilityError("symbolic weight value does not resolve");
  Scalar coeff;
  if (d.isotropic(k)) {
    coeff = v.is_zero() ? Scalar(0) : Scalar(1);
  } else {
    int e = d.kind(k) == VertexKind::OddOsp ? 1 : 0;
    if (!v.in_scaled_nonnegative_integers(e)) return std::nullopt;
    coeff = v;
  }
  if (rec) *rec = BranchRecord{k, d.isotropic(k), v, coeff};
  Weight out = w;
  if (coeff.is_zero()) return out;
  const Diagram& o = *b.origin;
  const RootVec& r = b.roots[k];
  for (int l = 0; l < o.n(); ++l) {
    Scalar ak;
    for (int s = 0; s < o.n(); ++s)
      if (r[s] != 0) ak += Scalar(r[s]) * o(l, s);
    out.values[l] -= coeff * ak;
  }
  return out;
}

struct IntegrabilityCondition {
  RootVec root;
  std::vector<Step> path;
  Scalar value;
  int exponent = 0;
  bool pass = false;
  std::vector<BranchRecord> branches;
};

struct IntegrabilityVerdict {
  Tri integrable = Tri::Inconclusive;
  std::vector<IntegrabilityCondition> conditions;
  bool enumeration_complete = true;
  std::string note;
};

inline IntegrabilityCondition check_along(const Base& start, const Weight& w, const std::vector<Step>& path,
                                          const RootVec& root, bool doubled = false) {
  IntegrabilityCondition c;
  c.root = root;
  c.path = path;
  Base b = start;
  Weight cur = w;
  for (const Step& s : path) {
    if (!s.odd) throw IntegrabilityError("principal-root paths use odd reflections only");
    BranchRecord rec{};
    auto next = transform_weight(b, cur, s.vertex, &rec);
    c.branches.push_back(rec);
    cur = *next;  // isotropic steps always succeed
    b = odd_reflect(b, s.vertex);
  }
  // Locate the root in the reflected base; different witnesses leave it at different vertices.
  int target = -1;
  for (int j = 0; j < b.n() && target < 0; ++j) {
    RootVec r = b.roots[j];
    if (doubled)
      for (auto& x : r) x *= 2;
    if (r == root) target = j;
  }
  if (target < 0 || b.diagram.isotropic(target)) throw IntegrabilityError("path does not make the root simple");
  c.exponent = b.diagram.kind(target) == VertexKind::OddOsp ? 1 : 0;
  c.value = evaluate(cur, b.coroots[target]);
  if (c.value.is_ratfunc()) throw IntegrabilityError("symbolic weight value does not resolve");
  c.pass = c.value.in_scaled_nonnegative_integers(c.exponent);
  return c;
}

/// Regularity and principal roots of a diagram, computed once and reused across weights.
struct IntegrabilitySetup {
  Base start;
  PrincipalRootSet roots;
};

inline IntegrabilitySetup prepare_integrability(const Diagram& raw, int max_depth = kDefaultMaxDepth) {
  RegularVerdict reg = is_regular_kac_moody(raw, max_depth);
  if (reg.value == Tri::False) throw IntegrabilityError("diagram is not regular Kac-Moody");
  return {make_base(raw), default_classifier().principal_roots_of(raw, max_depth)};
}

/// Principal-root criterion. With all_witnesses every stored path is checked, not only the first.
inline IntegrabilityVerdict is_integrable_hw(const IntegrabilitySetup& setup, const Weight& w,
                                             bool all_witnesses = false) {
  if (int(w.values.size()) != setup.start.n()) throw IntegrabilityError("weight length does not match diagram size");
  for (const auto& x : w.values)
    if (x.is_ratfunc()) throw IntegrabilityError("symbolic weights are not supported");
  const PrincipalRootSet& pr = setup.roots;
  IntegrabilityVerdict v;
  v.enumeration_complete = pr.complete;
  bool all_pass = true;
  for (const auto& p : pr.roots) {
    std::vector<std::vector<Step>> paths = all_witnesses ? p.witnesses : std::vector<std::vector<Step>>{p.path};
    for (const auto& path : paths) {
      auto c = check_along(setup.start, w, path, p.root, p.doubled);
      all_pass = all_pass && c.pass;
      v.conditions.push_back(std::move(c));
    }
  }
  if (!all_pass) v.integrable = Tri::False;
  else if (!pr.complete) {
    v.integrable = Tri::Inconclusive;
    v.note = "principal-root enumeration truncated";
  } else {
    v.integrable = Tri::True;
  }
  return v;
}

inline IntegrabilityVerdict is_integrable_hw(const Diagram& raw, const Weight& w, int max_depth = kDefaultMaxDepth,
                                             bool all_witnesses = false) {
  if (int(w.values.size()) != raw.n()) throw IntegrabilityError("weight length does not match diagram size");
  for (const auto& x : w.values)
    if (x.is_ratfunc()) throw IntegrabilityError("symbolic weights are not supported");
  return is_integrable_hw(prepare_integrability(raw, max_depth), w, all_witnesses);
}

/// Closed form for rows (2,-1,-1), (beta-1,0,1), (-beta-1,1,0).
inline bool s12a_conditions(const Scalar& beta, const Weight& w) {
  if (w.values.size() != 3) throw IntegrabilityError("S(1,2,alpha) weights have three entries");
  if (beta.is_zero() || beta.inverse().is_integer()) throw IntegrabilityError("parameter outside the family");
  const Vec& l = w.values;
  if (!l[0].is_nonnegative_integer()) return false;
  if (l[1].is_zero() && l[2].is_zero()) return true;
  return (l[1] + l[2] - Scalar(1)).is_nonnegative_integer();
}

inline Diagram s12a_bform(const Scalar& beta, std::string name = {}) {
  return Diagram{Matrix{{Scalar(2), Scalar(-1), Scalar(-1)},
                        {beta - Scalar(1), Scalar(0), Scalar(1)},
                        {-beta - Scalar(1), Scalar(1), Scalar(0)}},
                 {0, 1, 1}, std::move(name)};
}

/// lambda_1 + lambda_2/b - 1, lambda_2 + lambda_3/c - 1, lambda_3 + lambda_1/a - 1.
inline std::array<Scalar, 3> qmnt_combinations_of(const QmntSolution& s, const Weight& w) {
  const Vec& l = w.values;
  Scalar one(1);
  return {l[0] + l[1] / s.b - one, l[1] + l[2] / s.c - one, l[2] + l[0] / s.a - one};
}

inline Weight qmnt_weight_from_xyz(const QmntSolution& s, long long x, long long y, long long z) {
  if (x <= 0 || y <= 0 || z <= 0) throw IntegrabilityError("x, y, z must be positive integers");
  const Scalar &a = s.a, &b = s.b, &c = s.c;
  Scalar one(1);
  Matrix M{{one, -b.inverse(), (b * c).inverse()},
           {(a * c).inverse(), one, -c.inverse()},
           {-a.inverse(), (b * a).inverse(), one}};
  Scalar abc = a * b * c;
  Scalar k = abc / (one + abc);
  Vec rhs{Scalar(x), Scalar(y), Scalar(z)};
  Weight w;
  for (int i = 0; i < 3; ++i) {
    Scalar acc;
    for (int j = 0; j < 3; ++j) acc += M[i][j] * rhs[j];
    w.values.push_back(k * acc);
  }
  auto comb = qmnt_combinations_of(s, w);
  for (int i = 0; i < 3; ++i)
    if (!(comb[i] == rhs[i] - one)) throw IntegrabilityError("internal: weight does not invert the conditions");
  return w;
}

inline bool is_typical_qmnt(const Weight& w) {
  if (w.values.size() != 3) throw IntegrabilityError("Q(m,n,t) weights have three entries");
  for (const auto& x : w.values)
    if (x.is_zero()) return false;
  return true;
}

}  // namespace skm
