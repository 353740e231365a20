#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace gslab {

// Exact rational arithmetic on __int128 with overflow detection; enough for
// the coefficient algebra and discriminants of the uniqueness condition.
class Rational {
 public:
  using Int = __int128;

  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);

  static Rational parse(const std::string& text);  // "a/b", "-3", "2.5"
  // Nearest small fraction when x is within 1e-12 relative of one.
  static std::optional<Rational> from_double(double x, long long max_den = 100000);

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  Rational pow(unsigned e) const;
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }
  double to_double() const;
  std::string str() const;

 private:
  Rational(Int n, Int d, bool) : num_(n), den_(d) {}
  void normalize();
  Int num_;
  Int den_;  // > 0
};

}  // namespace gslab
