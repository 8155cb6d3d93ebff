#pragma once

#include "skm/poly.hpp"
#include "skm/rational.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace skm {

/** @brief x + y*sqrt(D) with D a positive non-square integer and y != 0. */
struct Quad {
  BigInt D;
  Rational x;
  Rational y;
  friend bool operator==(const Quad&, const Quad&) = default;
};

/** @brief Reduced num/den in the parameter p; den monic, not both constant. */
struct RatFunc {
  Poly num;
  Poly den;
  friend bool operator==(const RatFunc&, const RatFunc&) = default;
};

enum class Domain { Rational, Quad, RatFunc };

/** @brief Exact number in one of three domains, always kept normalized. */
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(long long v) : v_(Rational(v)) {}  // NOLINT(implicit)
  Scalar(Rational r) : v_(std::move(r)) {}  // NOLINT(implicit)

  static Scalar quad(BigInt D, Rational x, Rational y) {
    if (D <= 0 || is_perfect_square(D)) throw ScalarError("radicand must be a positive non-square");
    if (y.is_zero()) return Scalar(std::move(x));
    Scalar s;
    s.v_ = Quad{std::move(D), std::move(x), std::move(y)};
    return s;
  }
  static Scalar sqrt(BigInt D) { return quad(std::move(D), Rational(0), Rational(1)); }

  static Scalar ratfunc(Poly num, Poly den) {
    if (den.is_zero()) throw ScalarError("division by zero");
    if (num.is_zero()) return Scalar(0);
    Poly g = Poly::gcd(num, den);
    if (g.degree() > 0) {
      num = Poly::divmod(num, g).first;
      den = Poly::divmod(den, g).first;
    }
    Rational l = den.lead();
    num = num.scaled(l.inverse());
    den = den.scaled(l.inverse());
    if (num.is_constant() && den.is_constant()) return Scalar(num.constant());
    Scalar s;
    s.v_ = RatFunc{std::move(num), std::move(den)};
    return s;
  }
  static Scalar param() { return ratfunc(Poly::x(), Poly(Rational(1))); }

  Domain domain() const { return static_cast<Domain>(v_.index()); }
  bool is_rational() const { return v_.index() == 0; }
  bool is_quad() const { return v_.index() == 1; }
  bool is_ratfunc() const { return v_.index() == 2; }
  const Rational& rational() const { return std::get<Rational>(v_); }
  const Quad& quad_value() const { return std::get<Quad>(v_); }
  const RatFunc& ratfunc_value() const { return std::get<RatFunc>(v_); }

  bool is_zero() const { return is_rational() && rational().is_zero(); }
  bool is_one() const { return is_rational() && rational() == Rational(1); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

  Scalar operator-() const {
    switch (domain()) {
      case Domain::Rational: return Scalar(-rational());
      case Domain::Quad: {
        const Quad& q = quad_value();
        return quad(q.D, -q.x, -q.y);
      }
      case Domain::RatFunc: {
        const RatFunc& f = ratfunc_value();
        return ratfunc(-f.num, f.den);
      }
    }
    return *this;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return Scalar(a.rational() + b.rational());
    if (a.is_ratfunc() || b.is_ratfunc()) {
      RatFunc fa = a.as_ratfunc(), fb = b.as_ratfunc();
      return ratfunc(fa.num * fb.den + fb.num * fa.den, fa.den * fb.den);
    }
    Quad qa = a.as_quad(b), qb = b.as_quad(a);
    return quad(qa.D, qa.x + qb.x, qa.y + qb.y);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_rational() && b.is_rational()) return Scalar(a.rational() * b.rational());
    if (a.is_ratfunc() || b.is_ratfunc()) {
      RatFunc fa = a.as_ratfunc(), fb = b.as_ratfunc();
      return ratfunc(fa.num * fb.num, fa.den * fb.den);
    }
    Quad qa = a.as_quad(b), qb = b.as_quad(a);
    Rational D(qa.D);
    return quad(qa.D, qa.x * qb.x + qa.y * qb.y * D, qa.x * qb.y + qa.y * qb.x);
  }

  Scalar inverse() const {
    switch (domain()) {
      case Domain::Rational:
        if (rational().is_zero()) throw ScalarError("division by zero");
        return Scalar(rational().inverse());
      case Domain::Quad: {
        const Quad& q = quad_value();
        Rational nrm = q.x * q.x - q.y * q.y * Rational(q.D);
        return quad(q.D, q.x / nrm, -q.y / nrm);
      }
      case Domain::RatFunc: {
        const RatFunc& f = ratfunc_value();
        return ratfunc(f.den, f.num);
      }
    }
    return *this;
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw ScalarError("division by zero");
    return a * b.inverse();
  }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  /// Exact sign under sqrt(D) > 0; throws for a non-constant rational function.
  int sign() const {
    switch (domain()) {
      case Domain::Rational: return rational().sign();
      case Domain::Quad: {
        const Quad& q = quad_value();
        int sx = q.x.sign(), sy = q.y.sign();
        if (sx == 0) return sy;
        if (sx == sy) return sx;
        Rational lhs = q.x * q.x, rhs = q.y * q.y * Rational(q.D);
        return lhs > rhs ? sx : sy;
      }
      case Domain::RatFunc: break;
    }
    throw ScalarError("sign of a non-constant rational function is undefined");
  }

  std::optional<BigInt> as_integer() const {
    if (is_rational() && rational().is_integer()) return rational().num();
    return std::nullopt;
  }
  bool is_integer() const { return as_integer().has_value(); }
  bool is_nonpositive_integer() const {
    auto k = as_integer();
    return k && *k <= 0;
  }
  bool is_nonnegative_integer() const {
    auto k = as_integer();
    return k && *k >= 0;
  }
  bool is_in_even_nonpositive_integers() const {
    auto k = as_integer();
    return k && *k <= 0 && (*k % 2) == 0;
  }
  /// Membership in 2^e * Z_{>=0} for e in {0,1}.
  bool in_scaled_nonnegative_integers(int e) const {
    auto k = as_integer();
    if (!k || *k < 0) return false;
    return e == 0 || (*k % 2) == 0;
  }

  bool is_parametric() const { return is_ratfunc(); }

  /// Evaluate p := v; throws at a pole.
  Scalar substitute(const Rational& v) const {
    if (!is_ratfunc()) return *this;
    const RatFunc& f = ratfunc_value();
    Rational d = f.den.eval(v);
    if (d.is_zero()) throw ScalarError("pole at substituted parameter value");
    return Scalar(f.num.eval(v) / d);
  }

  /// Substitute p -> p + k.
  Scalar shifted(const Rational& k) const {
    if (!is_ratfunc()) return *this;
    const RatFunc& f = ratfunc_value();
    return ratfunc(f.num.shifted(k), f.den.shifted(k));
  }

  std::string str() const {
    switch (domain()) {
      case Domain::Rational: return rational().str();
      case Domain::Quad: return format_quad(quad_value());
      case Domain::RatFunc: return format_ratfunc(ratfunc_value());
    }
    return {};
  }

 private:
  RatFunc as_ratfunc() const {
    if (is_quad()) throw ScalarError("cannot mix sqrt and the parameter p");
    if (is_rational()) return RatFunc{Poly(rational()), Poly(Rational(1))};
    return ratfunc_value();
  }
  Quad as_quad(const Scalar& other) const {
    if (is_quad()) {
      if (other.is_quad() && other.quad_value().D != quad_value().D)
        throw ScalarError("mixed radicands");
      return quad_value();
    }
    return Quad{other.quad_value().D, rational(), Rational(0)};
  }

  static std::string format_quad(const Quad& q) {
    BigInt L = boost::multiprecision::lcm(q.x.den(), q.y.den());
    BigInt X = q.x.num() * (L / q.x.den());
    BigInt Y = q.y.num() * (L / q.y.den());
    std::string rad = "sqrt(" + q.D.str() + ")";
    std::string ypart;
    if (Y == 1) ypart = rad;
    else if (Y == -1) ypart = "-" + rad;
    else ypart = Y.str() + "*" + rad;
    if (X == 0) return L == 1 ? ypart : ypart + "/" + L.str();
    std::string body = X.str() + (Y > 0 ? "+" : "") + ypart;
    return L == 1 ? body : "(" + body + ")/" + L.str();
  }

  static std::string format_ratfunc(const RatFunc& f) {
    std::string n = f.num.str();
    if (f.den == Poly(Rational(1))) return n;
    std::string d = f.den.str();
    if (f.num.term_count() > 1) n = "(" + n + ")";
    if (d != "p") d = "(" + d + ")";
    return n + "/" + d;
  }

  std::variant<Rational, Quad, RatFunc> v_;
};

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  Scalar parse() {
    Scalar v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    if (has_param_ && radicand_) throw ScalarError("cannot mix sqrt and the parameter p");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ScalarError("syntax error at position " + std::to_string(i_) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  Scalar expr() {
    Scalar v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
  Scalar term() {
    Scalar v = factor();
    for (;;) {
      if (eat('*')) v = v * factor();
      else if (eat('/')) {
        Scalar d = factor();
        if (d.is_zero()) throw ScalarError("division by zero");
        v = v / d;
      } else return v;
    }
  }
  BigInt integer() {
    skip();
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("expected integer");
    return BigInt(std::string(s_.substr(st, i_ - st)));
  }
  Scalar factor() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '-') {
      ++i_;
      return -factor();
    }
    if (c == '(') {
      ++i_;
      Scalar v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Scalar(Rational(integer()));
    if (s_.substr(i_, 4) == "sqrt") {
      i_ += 4;
      if (!eat('(')) fail("expected '(' after sqrt");
      BigInt D = integer();
      if (!eat(')')) fail("expected ')'");
      if (is_perfect_square(D)) throw ScalarError("square radicand " + D.str());
      if (radicand_ && *radicand_ != D) throw ScalarError("mixed radicands");
      radicand_ = D;
      return Scalar::sqrt(D);
    }
    if (c == 'p') {
      ++i_;
      has_param_ = true;
      return Scalar::param();
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  size_t i_ = 0;
  bool has_param_ = false;
  std::optional<BigInt> radicand_;
};

}  // namespace detail

inline Scalar parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse(); }
inline std::string format_scalar(const Scalar& s) { return s.str(); }

inline Scalar operator""_s(const char* text, size_t n) {
  return parse_scalar(std::string_view(text, n));
}

enum class ArithOp { Add, Sub, Mul, Div };

inline Scalar scalar_arith(const Scalar& a, const Scalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  return a;
}

using Vec = std::vector<Scalar>;
using Matrix = std::vector<Vec>;

}  // namespace skm
