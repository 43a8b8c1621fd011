#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "plf/error.hpp"

namespace plf {

/// Exact rational number backed by GMP. Always in lowest terms with a
/// positive denominator; zero is 0/1.
class Rational {
public:
  Rational() = default;
  Rational(long n) : value_(n) {}
  Rational(long numerator, long denominator) {
    if (denominator == 0)
      throw InputError("rational with zero denominator");
    value_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
    value_.canonicalize();
  }
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }
  explicit Rational(const mpz_class &n) : value_(n) {}

  /// Accepts "p" or "p/q" with an optional leading sign on p.
  static Rational parse(std::string_view text) {
    auto is_digits = [](std::string_view s) {
      if (s.empty())
        return false;
      for (char c : s)
        if (c < '0' || c > '9')
          return false;
      return true;
    };
    std::string_view num = text;
    std::string_view den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      num = text.substr(0, slash);
      den = text.substr(slash + 1);
    }
    std::string_view digits = num;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
      digits.remove_prefix(1);
    if (!is_digits(digits) || !is_digits(den))
      throw InputError("not a rational number: \"" + std::string(text) + "\"");
    mpz_class n(std::string(digits), 10);
    if (num.front() == '-')
      n = -n;
    mpz_class d(std::string(den), 10);
    if (d == 0)
      throw InputError("zero denominator in \"" + std::string(text) + "\"");
    return Rational(mpq_class(n, d));
  }

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class &raw() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }

  std::string str() const { return value_.get_str(); }

  Rational &operator+=(const Rational &o) {
    value_ += o.value_;
    return *this;
  }
  Rational &operator-=(const Rational &o) {
    value_ -= o.value_;
    return *this;
  }
  Rational &operator*=(const Rational &o) {
    value_ *= o.value_;
    return *this;
  }
  Rational &operator/=(const Rational &o) {
    if (o.is_zero())
      throw std::domain_error("division by zero rational");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  friend Rational operator-(const Rational &a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational &a, const Rational &b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) { return os << r.str(); }

private:
  mpq_class value_{0};
};

} // namespace plf
