#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ratmaps {

/// Integers modulo a prime P.
template <std::uint32_t P>
class Fp {
  static_assert(P >= 2 && P < (1u << 31), "modulus must fit comfortably in 32 bits");

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr Fp() = default;
  constexpr Fp(long v) : v_(reduce(v)) {}

  constexpr std::uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }

  constexpr Fp inverse() const {
    if (v_ == 0) throw std::domain_error("inverse of zero modulo " + std::to_string(P));
    // Fermat: v^(P-2).
    std::uint64_t result = 1, base = v_, e = P - 2;
    while (e > 0) {
      if (e & 1) result = result * base % P;
      base = base * base % P;
      e >>= 1;
    }
    Fp out;
    out.v_ = static_cast<std::uint32_t>(result);
    return out;
  }

  constexpr Fp& operator+=(Fp o) {
    v_ += o.v_;
    if (v_ >= P) v_ -= P;
    return *this;
  }
  constexpr Fp& operator-=(Fp o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + P - o.v_;
    return *this;
  }
  constexpr Fp& operator*=(Fp o) {
    v_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % P);
    return *this;
  }
  constexpr Fp& operator/=(Fp o) { return *this *= o.inverse(); }

  friend constexpr Fp operator+(Fp a, Fp b) { return a += b; }
  friend constexpr Fp operator-(Fp a, Fp b) { return a -= b; }
  friend constexpr Fp operator*(Fp a, Fp b) { return a *= b; }
  friend constexpr Fp operator/(Fp a, Fp b) { return a /= b; }
  friend constexpr Fp operator-(Fp a) { return Fp(0) - a; }
  friend constexpr bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

 private:
  static constexpr std::uint32_t reduce(long v) {
    long r = v % static_cast<long>(P);
    return static_cast<std::uint32_t>(r < 0 ? r + P : r);
  }
  std::uint32_t v_ = 0;
};

template <std::uint32_t P>
constexpr bool is_zero(Fp<P> x) {
  return x.is_zero();
}

using F2 = Fp<2>;
using F3 = Fp<3>;

/// Coefficient fields accepted on the command line and in reports.
enum class FieldKind { Rationals, F2, F3 };

FieldKind parse_field(const std::string& name);
std::string field_name(FieldKind kind);

}  // namespace ratmaps
