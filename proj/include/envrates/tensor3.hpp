#pragma once

// Small dense complex linear algebra: real 3-vectors for positions and
// directions, complex 3-vectors for transition dipoles, and 3x3 complex
// tensors as the carrier for dyadic Green's tensors. No conjugation is
// ever implicit; formula sites spell out their own conjugates.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace envrates {

using Complex = std::complex<double>;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  friend Vec3 operator+(const Vec3 &a, const Vec3 &b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3 operator-(const Vec3 &a, const Vec3 &b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3 operator*(double s, const Vec3 &a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  friend Vec3 operator*(const Vec3 &a, double s) { return s * a; }

  [[nodiscard]] double dot(const Vec3 &o) const {
    return x * o.x + y * o.y + z * o.z;
  }
  [[nodiscard]] double norm() const { return std::sqrt(dot(*this)); }

  [[nodiscard]] Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0)
      throw std::domain_error("Vec3::normalized: zero vector");
    return {x / n, y / n, z / n};
  }

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

struct Vector3C {
  std::array<Complex, 3> v{};

  Vector3C() = default;
  Vector3C(Complex a, Complex b, Complex c) : v{a, b, c} {}
  explicit Vector3C(const Vec3 &r) : v{Complex(r.x), Complex(r.y), Complex(r.z)} {}

  Complex &operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  const Complex &operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  [[nodiscard]] Vector3C conj() const {
    return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2])};
  }
  /// Euclidean norm, sqrt(sum |v_i|^2).
  [[nodiscard]] double norm() const {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  }

  friend Vector3C operator*(Complex s, const Vector3C &a) {
    return {s * a.v[0], s * a.v[1], s * a.v[2]};
  }
};

class ComplexTensor3 {
public:
  ComplexTensor3() = default;

  static ComplexTensor3 zero() { return {}; }

  static ComplexTensor3 identity() {
    ComplexTensor3 t;
    t(0, 0) = t(1, 1) = t(2, 2) = 1.0;
    return t;
  }

  Complex &operator()(int i, int j) {
    return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  const Complex &operator()(int i, int j) const {
    return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  friend ComplexTensor3 operator+(const ComplexTensor3 &a,
                                  const ComplexTensor3 &b) {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = a(i, j) + b(i, j);
    return r;
  }

  friend ComplexTensor3 operator-(const ComplexTensor3 &a,
                                  const ComplexTensor3 &b) {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = a(i, j) - b(i, j);
    return r;
  }

  friend ComplexTensor3 operator*(Complex s, const ComplexTensor3 &a) {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = s * a(i, j);
    return r;
  }
  friend ComplexTensor3 operator*(const ComplexTensor3 &a, Complex s) {
    return s * a;
  }

  /// Matrix product.
  friend ComplexTensor3 operator*(const ComplexTensor3 &a,
                                  const ComplexTensor3 &b) {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < 3; ++k)
          s += a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }

  [[nodiscard]] ComplexTensor3 transpose() const {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(j, i);
    return r;
  }

  [[nodiscard]] ComplexTensor3 conj() const {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = std::conj((*this)(i, j));
    return r;
  }

  /// Conjugate transpose.
  [[nodiscard]] ComplexTensor3 adjoint() const { return conj().transpose(); }

  [[nodiscard]] Complex trace() const {
    return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2);
  }

  [[nodiscard]] ComplexTensor3 real_part() const {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, j).real();
    return r;
  }

  [[nodiscard]] ComplexTensor3 imag_part() const {
    ComplexTensor3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, j).imag();
    return r;
  }

  /// Largest entry magnitude, handy for relative comparisons.
  [[nodiscard]] double max_abs() const {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        m = std::max(m, std::abs((*this)(i, j)));
    return m;
  }

  [[nodiscard]] bool all_finite() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!std::isfinite((*this)(i, j).real()) ||
            !std::isfinite((*this)(i, j).imag()))
          return false;
    return true;
  }

private:
  std::array<std::array<Complex, 3>, 3> m_{};
};

/// Dyadic (outer) product u (x) v, result[i][j] = u_i v_j.
inline ComplexTensor3 dyadic(const Vector3C &u, const Vector3C &v) {
  ComplexTensor3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = u[i] * v[j];
  return r;
}

inline ComplexTensor3 dyadic(const Vec3 &u, const Vec3 &v) {
  return dyadic(Vector3C(u), Vector3C(v));
}

/// Tr[A.B] = sum_ij A_ij B_ji. Callers pass B already conjugated and/or
/// transposed as their formula requires.
inline Complex trace_product(const ComplexTensor3 &a, const ComplexTensor3 &b) {
  Complex s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += a(i, j) * b(j, i);
  return s;
}

/// u.A.v = sum_ij u_i A_ij v_j, with no implicit conjugation.
inline Complex quadratic_form(const Vector3C &u, const ComplexTensor3 &a,
                              const Vector3C &v) {
  Complex s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      s += u[i] * a(i, j) * v[j];
  return s;
}

inline Complex quadratic_form(const Vec3 &u, const ComplexTensor3 &a,
                              const Vec3 &v) {
  return quadratic_form(Vector3C(u), a, Vector3C(v));
}

/// Frobenius contraction of the rank-4 dyad d1(x)d2(x)d3(x)d4 with A(x)B:
/// sum_ijkl d1_i d2_j d3_k d4_l A_ij B_kl. Factorizes as (d1.A.d2)(d3.B.d4).
inline Complex frobenius4(const Vector3C &d1, const Vector3C &d2,
                          const Vector3C &d3, const Vector3C &d4,
                          const ComplexTensor3 &a, const ComplexTensor3 &b) {
  return quadratic_form(d1, a, d2) * quadratic_form(d3, b, d4);
}

} // namespace envrates
