#include "gslab/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "gslab/errors.hpp"

namespace gslab {

namespace {

using Int = Rational::Int;

Int igcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r))
    throw InvalidParameterError("rational arithmetic overflow");
  return r;
}

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r))
    throw InvalidParameterError("rational arithmetic overflow");
  return r;
}

std::string int_str(Int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  if (neg) s.insert(s.begin(), '-');
  return s;
}

}  // namespace

Rational::Rational(long long n, long long d) : num_(n), den_(d) {
  if (d == 0) throw InvalidParameterError("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const Int g = igcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const long long n = std::stoll(text.substr(0, slash));
    const long long d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const size_t frac = text.size() - dot - 1;
    if (frac > 15) throw InvalidParameterError("rational parse: too many decimals: " + text);
    long long den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    return Rational(std::stoll(digits), den);
  }
  return Rational(std::stoll(text), 1);
}

std::optional<Rational> Rational::from_double(double x, long long max_den) {
  // continued-fraction convergents
  double v = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(v);
    if (std::abs(fl) > 9e17) break;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double approx = double(p1) / double(q1);
    if (std::abs(approx - x) <= 1e-12 * std::max(1.0, std::abs(x)))
      return Rational(p1, q1);
    const double rem = v - fl;
    if (rem < 1e-15) break;
    v = 1.0 / rem;
  }
  return std::nullopt;
}

Rational Rational::operator-() const { return Rational(-num_, den_, true); }

Rational Rational::operator+(const Rational& o) const {
  Rational r(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
             checked_mul(den_, o.den_), true);
  r.normalize();
  return r;
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  Rational r(checked_mul(num_, o.num_), checked_mul(den_, o.den_), true);
  r.normalize();
  return r;
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw InvalidParameterError("rational division by zero");
  Rational r(checked_mul(num_, o.den_), checked_mul(den_, o.num_), true);
  r.normalize();
  return r;
}

bool Rational::operator<(const Rational& o) const {
  return checked_mul(num_, o.den_) < checked_mul(o.num_, den_);
}

Rational Rational::pow(unsigned e) const {
  Rational r(1);
  Rational b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

double Rational::to_double() const { return double(num_) / double(den_); }

std::string Rational::str() const {
  if (den_ == 1) return int_str(num_);
  return int_str(num_) + "/" + int_str(den_);
}

}  // namespace gslab
