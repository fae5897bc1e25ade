#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace ratmaps {

/// Parses "num/den" or "num" into a canonical rational. Throws std::invalid_argument.
mpq_class parse_rational(std::string_view text);

/// Always emits "num/den", including "n/1" for integers.
std::string rational_to_string(const mpq_class& value);

inline bool is_zero(const mpq_class& value) { return sgn(value) == 0; }

/// Element of Q(i). Both parts are kept canonical (gcd(num, den) = 1, den > 0),
/// which GMP guarantees for every arithmetic result.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussianRational(long re, long im = 0) : re_(re), im_(im) {}
  GaussianRational(int re, int im = 0) : re_(re), im_(im) {}

  static GaussianRational parse(std::string_view re, std::string_view im);
  /// Exact conversion; every finite double is a dyadic rational.
  static GaussianRational from_complex(std::complex<double> z);
  static GaussianRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  GaussianRational inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

inline bool is_zero(const GaussianRational& value) { return value.is_zero(); }

GaussianRational pow(const GaussianRational& base, int exponent);

}  // namespace ratmaps
