#ifndef QPROJ_QUATERNION_HPP
#define QPROJ_QUATERNION_HPP

#include <cmath>
#include <complex>
#include <string>

#include "qproj/errors.hpp"

namespace qproj {

/// Global zero-test tolerance for scalar work (norms, pivots, memberships).
inline constexpr double kEps = 1e-10;

/// Hamilton quaternion a0 + a1 i + a2 j + a3 k with double components.
/// Multiplication follows i^2 = j^2 = k^2 = ijk = -1; the product is
/// noncommutative, so helpers below are explicit about operand order.
struct Quaternion {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w, double x, double y, double z) : a0(w), a1(x), a2(y), a3(z) {}
  /// Real scalar embedding.
  constexpr Quaternion(double w) : a0(w) {}  // NOLINT(google-explicit-constructor)

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }
  /// Complex number z = re + im*i embedded in the R + R i plane.
  static constexpr Quaternion from_complex(std::complex<double> z) {
    return {z.real(), z.imag(), 0, 0};
  }

  constexpr double norm_sq() const { return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3; }
  double norm() const { return std::sqrt(norm_sq()); }
  constexpr Quaternion conj() const { return {a0, -a1, -a2, -a3}; }

  /// The complex part a0 + a1 i (the "A1" of the A1 + A2 j splitting).
  constexpr std::complex<double> c1() const { return {a0, a1}; }
  /// The complex coefficient of j: a2 + a3 i (the "A2" part).
  constexpr std::complex<double> c2() const { return {a2, a3}; }
  static constexpr Quaternion from_parts(std::complex<double> x1, std::complex<double> x2) {
    return {x1.real(), x1.imag(), x2.real(), x2.imag()};
  }

  constexpr bool is_real(double eps = kEps) const {
    return std::abs(a1) <= eps && std::abs(a2) <= eps && std::abs(a3) <= eps;
  }
  constexpr bool is_complex(double eps = kEps) const {
    return std::abs(a2) <= eps && std::abs(a3) <= eps;
  }

  friend constexpr Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return {p.a0 + q.a0, p.a1 + q.a1, p.a2 + q.a2, p.a3 + q.a3};
  }
  friend constexpr Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return {p.a0 - q.a0, p.a1 - q.a1, p.a2 - q.a2, p.a3 - q.a3};
  }
  friend constexpr Quaternion operator-(const Quaternion& q) {
    return {-q.a0, -q.a1, -q.a2, -q.a3};
  }
  friend constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.a0 * q.a0 - p.a1 * q.a1 - p.a2 * q.a2 - p.a3 * q.a3,
            p.a0 * q.a1 + p.a1 * q.a0 + p.a2 * q.a3 - p.a3 * q.a2,
            p.a0 * q.a2 - p.a1 * q.a3 + p.a2 * q.a0 + p.a3 * q.a1,
            p.a0 * q.a3 + p.a1 * q.a2 - p.a2 * q.a1 + p.a3 * q.a0};
  }
  friend constexpr Quaternion operator*(const Quaternion& q, double r) {
    return {q.a0 * r, q.a1 * r, q.a2 * r, q.a3 * r};
  }
  friend constexpr Quaternion operator*(double r, const Quaternion& q) { return q * r; }
  friend constexpr Quaternion operator/(const Quaternion& q, double r) {
    return {q.a0 / r, q.a1 / r, q.a2 / r, q.a3 / r};
  }
  Quaternion& operator+=(const Quaternion& q) { return *this = *this + q; }
  Quaternion& operator-=(const Quaternion& q) { return *this = *this - q; }
  Quaternion& operator*=(const Quaternion& q) { return *this = *this * q; }
};

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) { return p * q; }

/// Multiplicative inverse conj(q)/|q|^2. Throws ZeroDivisor for |q| <= eps.
Quaternion quat_inverse(const Quaternion& q, double eps = kEps);

/// Canonical representative of a quaternionic similarity class: the unique
/// complex number with non-negative imaginary part similar to the input.
struct ComplexRep {
  double re = 0.0;
  double im = 0.0;  // >= 0 by construction

  constexpr ComplexRep() = default;
  ComplexRep(double r, double i) : re(r), im(std::abs(i)) {}
  explicit ComplexRep(std::complex<double> z) : ComplexRep(z.real(), z.imag()) {}

  std::complex<double> value() const { return {re, im}; }
  double modulus() const { return std::hypot(re, im); }
  /// Argument normalized to [0, 1) turns of the full circle.
  double angle_turns() const;
};

ComplexRep similarity_representative(const Quaternion& q);

bool approx_equal(const Quaternion& p, const Quaternion& q, double tol = kEps);

/// Parses the textual literal grammar: signed terms `c`, `ci`, `cj`, `ck`
/// joined by + or -, where c is a decimal or a rational p/q.
/// Examples: "1-1/2i+3k", "j", "-2.5", "0".
Quaternion parse_quaternion(const std::string& text);

/// Prints in the same grammar, canonically: terms ordered 1, i, j, k, zero
/// terms skipped, "-0" never emitted, 17 significant digits.
std::string print_quaternion(const Quaternion& q);

std::string print_real(double x);

}  // namespace qproj

#endif
