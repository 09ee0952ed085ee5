#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace meshkit {

// Exact rational scalar. Always normalized (lowest terms, positive
// denominator); boost keeps that invariant on every operation.
using Rational = boost::multiprecision::cpp_rational;

inline std::string scalar_to_string(const Rational& r) { return r.str(); }

// Prime field F_p, p = 32003. Fast optional backend; never used by the
// acceptance suite.
class Fp {
 public:
  static constexpr std::uint32_t modulus = 32003;

  Fp() : v_(0) {}
  Fp(long long n) {
    long long m = n % static_cast<long long>(modulus);
    if (m < 0) m += modulus;
    v_ = static_cast<std::uint32_t>(m);
  }

  std::uint32_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return from_raw((a.v_ + b.v_) % modulus); }
  friend Fp operator-(Fp a, Fp b) {
    return from_raw((a.v_ + modulus - b.v_) % modulus);
  }
  friend Fp operator*(Fp a, Fp b) {
    return from_raw(static_cast<std::uint64_t>(a.v_) * b.v_ % modulus);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return from_raw(v_ == 0 ? 0 : modulus - v_); }

  Fp& operator+=(Fp o) { return *this = *this + o; }
  Fp& operator-=(Fp o) { return *this = *this - o; }
  Fp& operator*=(Fp o) { return *this = *this * o; }

  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }
  friend bool operator!=(Fp a, Fp b) { return a.v_ != b.v_; }

  Fp inverse() const {
    // Fermat: p is prime.
    std::uint64_t base = v_, acc = 1;
    std::uint32_t e = modulus - 2;
    while (e) {
      if (e & 1) acc = acc * base % modulus;
      base = base * base % modulus;
      e >>= 1;
    }
    return from_raw(static_cast<std::uint32_t>(acc));
  }

 private:
  static Fp from_raw(std::uint32_t v) {
    Fp f;
    f.v_ = v;
    return f;
  }
  std::uint32_t v_;
};

inline std::string scalar_to_string(const Fp& f) {
  return std::to_string(f.value());
}

}  // namespace meshkit
