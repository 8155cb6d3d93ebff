#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace skm {

using BigInt = boost::multiprecision::cpp_int;

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** @brief Exact fraction n/d in lowest terms with d > 0. */
class Rational {
 public:
  Rational() : n_(0), d_(1) {}
  Rational(long long v) : n_(v), d_(1) {}  // NOLINT(implicit)
  Rational(BigInt v) : n_(std::move(v)), d_(1) {}  // NOLINT(implicit)
  Rational(BigInt n, BigInt d) : n_(std::move(n)), d_(std::move(d)) { reduce(); }

  const BigInt& num() const { return n_; }
  const BigInt& den() const { return d_; }

  bool is_zero() const { return n_ == 0; }
  bool is_integer() const { return d_ == 1; }
  int sign() const { return n_ < 0 ? -1 : (n_ > 0 ? 1 : 0); }

  Rational operator-() const { return Rational(-n_, d_, raw_tag{}); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.d_ == b.d_) return Rational(a.n_ + b.n_, a.d_);
    return Rational(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.n_ * b.n_, a.d_ * b.d_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw ScalarError("division by zero");
    return Rational(a.n_ * b.d_, a.d_ * b.n_);
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  Rational inverse() const { return Rational(1) / *this; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    BigInt l = a.n_ * b.d_, r = b.n_ * a.d_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Largest integer not exceeding the value.
  BigInt floor() const {
    BigInt q = n_ / d_;  // truncates toward zero
    if (n_ < 0 && q * d_ != n_) q -= 1;
    return q;
  }

  std::string str() const {
    if (d_ == 1) return n_.str();
    return n_.str() + "/" + d_.str();
  }

 private:
  struct raw_tag {};
  Rational(BigInt n, BigInt d, raw_tag) : n_(std::move(n)), d_(std::move(d)) {}

  void reduce() {
    if (d_ == 0) throw ScalarError("zero denominator");
    if (d_ < 0) {
      n_ = -n_;
      d_ = -d_;
    }
    if (n_ == 0) {
      d_ = 1;
      return;
    }
    BigInt g = boost::multiprecision::gcd(n_, d_);
    if (g != 1) {
      n_ /= g;
      d_ /= g;
    }
  }

  BigInt n_;
  BigInt d_;
};

inline BigInt isqrt_floor(const BigInt& v) {
  if (v < 0) throw ScalarError("square root of negative integer");
  return boost::multiprecision::sqrt(v);
}

inline bool is_perfect_square(const BigInt& v) {
  if (v < 0) return false;
  BigInt r = isqrt_floor(v);
  return r * r == v;
}

}  // namespace skm
