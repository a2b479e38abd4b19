// Exact Gaussian rationals: the coefficient field for every combinatorial
// computation in the library.

#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "pz/error.hpp"

namespace pz {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator_of(r) == 1; }

inline Integer floor_of(const Rational& r) {
  Integer n = numerator_of(r), d = denominator_of(r);
  Integer q = n / d;  // truncates toward zero
  if (q * d != n && n < 0) --q;
  return q;
}

/// Fractional part in [0, 1).
inline Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

inline int sign_of(const Rational& r) { return r.sign(); }

inline std::string to_string(const Rational& r) {
  if (denominator_of(r) == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  if (!all_digits(body))
    throw Error(Errc::parse, "not a rational \"p/q\": \"" + std::string(whole) + "\"");
  Integer v{std::string(body)};
  return neg ? Integer(-v) : v;
}

}  // namespace detail

/// Parses "p", "-p", "p/q". Decimal and exponent notation are rejected so
/// that documents stay exact.
inline Rational parse_rational(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s, s));
  Integer num = detail::parse_integer(s.substr(0, slash), s);
  std::string_view den_str = s.substr(slash + 1);
  if (!detail::all_digits(den_str))
    throw Error(Errc::parse, "bad denominator in \"" + std::string(s) + "\"");
  Integer den{std::string(den_str)};
  if (den == 0) throw Error(Errc::parse, "zero denominator in \"" + std::string(s) + "\"");
  return Rational(num, den);
}

/// Complex number with exact rational real and imaginary parts.
class GaussRat {
 public:
  GaussRat() = default;
  GaussRat(Rational re, Rational im = Rational(0)) : re_(std::move(re)), im_(std::move(im)) {}
  GaussRat(long long re) : re_(re) {}
  GaussRat(const Integer& re) : re_(re) {}

  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRat conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussRat operator-() const { return {-re_, -im_}; }

  GaussRat& operator+=(const GaussRat& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussRat& operator-=(const GaussRat& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussRat& operator*=(const GaussRat& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussRat& operator/=(const GaussRat& o) {
    if (o.is_zero()) throw Error(Errc::domain, "GaussRat division by zero");
    Rational n = o.norm();
    Rational r = (re_ * o.re_ + im_ * o.im_) / n;
    Rational m = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// Lexicographic (re, im); only used for canonical ordering.
  friend bool operator<(const GaussRat& a, const GaussRat& b) {
    if (a.re_ != b.re_) return a.re_ < b.re_;
    return a.im_ < b.im_;
  }

  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  std::string str() const {
    if (im_ == 0) return to_string(re_);
    if (re_ == 0) return to_string(im_) + "i";
    return to_string(re_) + (im_ > 0 ? "+" : "") + to_string(im_) + "i";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << z.str(); }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Determinant of (u, v) viewed as real 2-vectors: Im(conj(u) * v).
inline Rational real_det(const GaussRat& u, const GaussRat& v) {
  return u.re() * v.im() - u.im() * v.re();
}

inline int sign_im(const GaussRat& z) { return z.im().sign(); }

}  // namespace pz
