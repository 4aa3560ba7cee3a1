#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace ccr {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

/// Integer form "n" or parenthesized fraction "(p/q)".
inline std::string rational_string(const Rational& r) {
  const Integer& den = boost::multiprecision::denominator(r);
  const Integer& num = boost::multiprecision::numerator(r);
  if (den == 1) return num.str();
  return "(" + num.str() + "/" + den.str() + ")";
}

template <class Real = double>
Real rational_to(const Rational& r) {
  return boost::multiprecision::numerator(r).template convert_to<Real>() /
         boost::multiprecision::denominator(r).template convert_to<Real>();
}

inline int sign(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

/// Element x + y*sqrt2 of the real quadratic field Q(sqrt2).
class QuadraticReal {
 public:
  QuadraticReal() = default;
  QuadraticReal(Rational rational, Rational surd = 0)
      : rational_(std::move(rational)), surd_(std::move(surd)) {}

  const Rational& rational_part() const { return rational_; }
  const Rational& surd_part() const { return surd_; }

  bool is_zero() const { return rational_ == 0 && surd_ == 0; }

  friend QuadraticReal operator+(const QuadraticReal& x, const QuadraticReal& y) {
    return {x.rational_ + y.rational_, x.surd_ + y.surd_};
  }
  friend QuadraticReal operator-(const QuadraticReal& x, const QuadraticReal& y) {
    return {x.rational_ - y.rational_, x.surd_ - y.surd_};
  }
  friend QuadraticReal operator-(const QuadraticReal& x) { return {-x.rational_, -x.surd_}; }
  friend QuadraticReal operator*(const QuadraticReal& x, const QuadraticReal& y) {
    return {x.rational_ * y.rational_ + 2 * x.surd_ * y.surd_,
            x.rational_ * y.surd_ + x.surd_ * y.rational_};
  }

  QuadraticReal inverse() const {
    // (p + q sqrt2)^-1 = (p - q sqrt2) / (p^2 - 2 q^2); the norm vanishes only at zero.
    Rational norm = rational_ * rational_ - 2 * surd_ * surd_;
    if (norm == 0) throw std::domain_error("division by zero in Q(sqrt2)");
    return {rational_ / norm, -surd_ / norm};
  }

  int sign() const {
    int sp = ccr::sign(rational_);
    int sq = ccr::sign(surd_);
    if (sq == 0) return sp;
    if (sp == 0 || sp == sq) return sq;
    // opposite signs: compare p^2 with 2 q^2
    Rational lhs = rational_ * rational_;
    Rational rhs = 2 * surd_ * surd_;
    return lhs > rhs ? sp : sq;
  }

  friend bool operator==(const QuadraticReal&, const QuadraticReal&) = default;

 private:
  Rational rational_{0};
  Rational surd_{0};
};

/// Exact element r0 + r1*sqrt2 + r2*i + r3*i*sqrt2 of Q(i, sqrt2).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(int value) : re_(Rational(value)) {}
  ExactScalar(Rational value) : re_(std::move(value)) {}
  ExactScalar(QuadraticReal re, QuadraticReal im = {}) : re_(std::move(re)), im_(std::move(im)) {}
  ExactScalar(Rational r0, Rational r1, Rational r2, Rational r3)
      : re_(std::move(r0), std::move(r1)), im_(std::move(r2), std::move(r3)) {}

  static ExactScalar i() { return {QuadraticReal{}, QuadraticReal{1}}; }
  static ExactScalar sqrt2() { return {QuadraticReal{0, 1}}; }

  const QuadraticReal& real() const { return re_; }
  const QuadraticReal& imag() const { return im_; }

  const Rational& r0() const { return re_.rational_part(); }
  const Rational& r1() const { return re_.surd_part(); }
  const Rational& r2() const { return im_.rational_part(); }
  const Rational& r3() const { return im_.surd_part(); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_rational() const { return r1() == 0 && r2() == 0 && r3() == 0; }

  ExactScalar conj() const { return {re_, -im_}; }

  ExactScalar inverse() const {
    QuadraticReal norm = re_ * re_ + im_ * im_;
    QuadraticReal inv = norm.inverse();
    return {re_ * inv, -(im_ * inv)};
  }

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    return {x.re_ + y.re_, x.im_ + y.im_};
  }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    return {x.re_ - y.re_, x.im_ - y.im_};
  }
  friend ExactScalar operator-(const ExactScalar& x) { return {-x.re_, -x.im_}; }
  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    return {x.re_ * y.re_ - x.im_ * y.im_, x.re_ * y.im_ + x.im_ * y.re_};
  }
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    if (y.is_zero()) throw std::domain_error("division by zero");
    return x * y.inverse();
  }

  ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
  ExactScalar& operator-=(const ExactScalar& y) { return *this = *this - y; }
  ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }

  friend bool operator==(const ExactScalar&, const ExactScalar&) = default;

  template <class Real = double>
  std::complex<Real> to_complex() const {
    using std::sqrt;
    const Real root2 = sqrt(Real(2));
    return {rational_to<Real>(r0()) + rational_to<Real>(r1()) * root2,
            rational_to<Real>(r2()) + rational_to<Real>(r3()) * root2};
  }

  /// Components joined with " + ", e.g. "(1/2) + (-1/2)*sqrt2*i"; zero prints as "0".
  std::string to_string() const {
    std::string out;
    auto append = [&out](const std::string& part) {
      if (!out.empty()) out += " + ";
      out += part;
    };
    auto with_unit = [](const Rational& c, const char* unit) {
      if (c == 1) return std::string(unit);
      if (c == -1) return "-" + std::string(unit);
      return rational_string(c) + "*" + unit;
    };
    if (r0() != 0) append(rational_string(r0()));
    if (r1() != 0) append(with_unit(r1(), "sqrt2"));
    if (r2() != 0) append(with_unit(r2(), "i"));
    if (r3() != 0) append(with_unit(r3(), "sqrt2*i"));
    return out.empty() ? "0" : out;
  }

  /// Exactly one nonzero component, and it is negative.
  bool is_negative_monomial() const {
    if (is_compound()) return false;
    return r0() < 0 || r1() < 0 || r2() < 0 || r3() < 0;
  }

  /// More than one nonzero component; such scalars are parenthesized as coefficients.
  bool is_compound() const {
    int n = (r0() != 0) + (r1() != 0) + (r2() != 0) + (r3() != 0);
    return n > 1;
  }

  friend std::ostream& operator<<(std::ostream& os, const ExactScalar& x) {
    return os << x.to_string();
  }

 private:
  QuadraticReal re_;
  QuadraticReal im_;
};

}  // namespace ccr
