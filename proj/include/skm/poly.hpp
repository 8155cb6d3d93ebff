#pragma once

#include "skm/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace skm {

/** @brief Dense univariate polynomial over the rationals, coefficients low to high. */
class Poly {
 public:
  Poly() = default;
  Poly(Rational c) {  // NOLINT(implicit)
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly x() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
  }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational constant() const { return coeff(0); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(int(i)) + b.coeff(int(i));
    return Poly(std::move(r));
  }
  Poly operator-() const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly scaled(const Rational& s) const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }

  Poly monic() const { return is_zero() ? *this : scaled(lead().inverse()); }

  /// Euclidean division; returns {quotient, remainder}.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw ScalarError("polynomial division by zero");
    std::vector<Rational> rem(a.c_), quo;
    int db = b.degree();
    if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rational(0));
    Rational inv = b.lead().inverse();
    for (int k = a.degree(); k >= db; --k) {
      const Rational& top = rem[k];
      if (top.is_zero()) continue;
      Rational f = top * inv;
      quo[k - db] = f;
      for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
    }
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }

  static Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
      Poly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  Rational eval(const Rational& v) const {
    Rational acc;
    for (int k = degree(); k >= 0; --k) acc = acc * v + c_[k];
    return acc;
  }

  /// Substitute x -> x + k.
  Poly shifted(const Rational& k) const {
    Poly acc;
    Poly lin(std::vector<Rational>{k, Rational(1)});
    for (int i = degree(); i >= 0; --i) acc = acc * lin + Poly(c_[i]);
    return acc;
  }

  /// Sum of the roots counted with multiplicity (-c_{d-1}/c_d); zero for constants.
  Rational root_sum() const {
    if (degree() < 1) return Rational(0);
    return -(coeff(degree() - 1) / lead());
  }

  /// Canonical text in the scalar grammar, variable spelled `var`.
  std::string str(const std::string& var = "p") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = c_[k];
      if (c.is_zero()) continue;
      bool neg = c.sign() < 0;
      Rational a = neg ? -c : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? "-" : "+";
      }
      std::string mono;
      for (int i = 0; i < k; ++i) mono += (i ? "*" : "") + var;
      if (k == 0) {
        out += a.str();
      } else if (a == Rational(1)) {
        out += mono;
      } else {
        out += a.str() + "*" + mono;
      }
    }
    return out;
  }

  /// Number of additive terms in str().
  int term_count() const {
    int t = 0;
    for (const auto& c : c_) t += c.is_zero() ? 0 : 1;
    return t;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

}  // namespace skm
