#include "ratmaps/gaussian_rational.hpp"

#include <cmath>
#include <stdexcept>

namespace ratmaps {

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) {
    throw std::invalid_argument("empty rational");
  }
  mpq_class value;
  if (value.set_str(s, 10) != 0) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
  if (sgn(value.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in '" + s + "'");
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const mpq_class& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

GaussianRational GaussianRational::parse(std::string_view re, std::string_view im) {
  return {parse_rational(re), parse_rational(im)};
}

GaussianRational GaussianRational::from_complex(std::complex<double> z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("non-finite value cannot be converted to a rational");
  }
  return {mpq_class(z.real()), mpq_class(z.imag())};
}

GaussianRational GaussianRational::inverse() const {
  mpq_class n = norm2();
  if (sgn(n) == 0) {
    throw std::domain_error("division by zero in Q(i)");
  }
  return {re_ / n, -im_ / n};
}

std::string GaussianRational::to_string() const {
  return "(" + rational_to_string(re_) + ")+(" + rational_to_string(im_) + ")i";
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) {
      throw std::domain_error("division by zero in Q(i)");
    }
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

GaussianRational pow(const GaussianRational& base, int exponent) {
  if (exponent < 0) {
    return pow(base.inverse(), -exponent);
  }
  GaussianRational result(1);
  GaussianRational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace ratmaps
