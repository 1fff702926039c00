#include "doctest.h"

#include <random>

#include "envrates/tensor3.hpp"

using namespace envrates;

namespace {

std::mt19937 rng(42);

Complex random_complex() {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return {d(rng), d(rng)};
}

Vector3C random_vector() {
  return {random_complex(), random_complex(), random_complex()};
}

ComplexTensor3 random_tensor() {
  ComplexTensor3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t(i, j) = random_complex();
  return t;
}

const Vector3C ex{1.0, 0.0, 0.0};
const Vector3C ey{0.0, 1.0, 0.0};
const Vector3C ez{0.0, 0.0, 1.0};

} // namespace

TEST_CASE("dyadic selects single entries") {
  const ComplexTensor3 zz = dyadic(ez, ez);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(zz(i, j) == (i == 2 && j == 2 ? Complex(1.0) : Complex(0.0)));

  const ComplexTensor3 xy = dyadic(ex, ey);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(xy(i, j) == (i == 0 && j == 1 ? Complex(1.0) : Complex(0.0)));
}

TEST_CASE("dyadic trace against the explicit loop") {
  for (int n = 0; n < 20; ++n) {
    const Vector3C u = random_vector();
    // loop oracle for trace(u (x) v)
    const Vector3C uc = u.conj();
    Complex loop_plain = 0.0, loop_conj = 0.0;
    for (int i = 0; i < 3; ++i) {
      loop_plain += u[i] * u[i];
      loop_conj += u[i] * uc[i];
    }
    CHECK(std::abs(dyadic(u, u).trace() - loop_plain) < 1e-13);
    // conjugated partner recovers |u|^2
    CHECK(std::abs(dyadic(u, uc).trace() - loop_conj) < 1e-13);
    CHECK(std::abs(dyadic(u, uc).trace().real() - u.norm() * u.norm()) <
          1e-13);
  }
}

TEST_CASE("trace_product basics") {
  const ComplexTensor3 id = ComplexTensor3::identity();
  CHECK(trace_product(id, id) == Complex(3.0));

  // (I - 3 ez(x)ez)^2 has trace 6; oracle via explicit multiply.
  const ComplexTensor3 a = id - Complex(3.0) * dyadic(ez, ez);
  const ComplexTensor3 prod = a * a;
  CHECK(std::abs(prod.trace() - Complex(6.0)) < 1e-14);
  CHECK(std::abs(trace_product(a, a) - Complex(6.0)) < 1e-14);
}

TEST_CASE("trace_product of A with its adjoint is a nonnegative norm") {
  for (int n = 0; n < 20; ++n) {
    const ComplexTensor3 a = random_tensor();
    const Complex v = trace_product(a, a.adjoint());
    CHECK(std::abs(v.imag()) < 1e-14);
    CHECK(v.real() >= 0.0);
    // equals the Frobenius norm squared
    double frob = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        frob += std::norm(a(i, j));
    CHECK(v.real() == doctest::Approx(frob).epsilon(1e-13));
  }
}

TEST_CASE("trace_product is cyclic") {
  for (int n = 0; n < 20; ++n) {
    const ComplexTensor3 a = random_tensor(), b = random_tensor();
    const Complex ab = trace_product(a, b), ba = trace_product(b, a);
    CHECK(std::abs(ab - ba) <= 1e-13 * std::max(1.0, std::abs(ab)));
  }
}

TEST_CASE("quadratic_form basics and conjugation") {
  const ComplexTensor3 id = ComplexTensor3::identity();
  CHECK(quadratic_form(ex, id, ex) == Complex(1.0));
  CHECK(quadratic_form(ex, id, ey) == Complex(0.0));

  for (int n = 0; n < 20; ++n) {
    const Vector3C u = random_vector(), v = random_vector();
    const ComplexTensor3 a = random_tensor();
    // componentwise oracle: (u.A.v) = conj(u*.A*.v*)
    const Complex direct = quadratic_form(u, a, v);
    const Complex conjugated =
        std::conj(quadratic_form(u.conj(), a.conj(), v.conj()));
    CHECK(std::abs(direct - conjugated) < 1e-13);
  }
}

TEST_CASE("frobenius4") {
  const ComplexTensor3 id = ComplexTensor3::identity();
  CHECK(frobenius4(ex, ex, ex, ex, id, id) == Complex(1.0));
  // d2 orthogonal to the selected column gives zero
  CHECK(frobenius4(ex, ex, ex, ex, dyadic(ex, ey), id) == Complex(0.0));

  for (int n = 0; n < 20; ++n) {
    const Vector3C d1 = random_vector(), d2 = random_vector(),
                   d3 = random_vector(), d4 = random_vector();
    const ComplexTensor3 a = random_tensor(), b = random_tensor();

    // quadruple-loop oracle
    Complex loop = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            loop += d1[i] * d2[j] * d3[k] * d4[l] * a(i, j) * b(k, l);

    const Complex val = frobenius4(d1, d2, d3, d4, a, b);
    CHECK(std::abs(val - loop) <= 1e-13 * std::max(1.0, std::abs(loop)));

    // factorization property
    const Complex fact = quadratic_form(d1, a, d2) * quadratic_form(d3, b, d4);
    CHECK(std::abs(val - fact) <= 1e-13 * std::max(1.0, std::abs(val)));
  }
}

TEST_CASE("transpose is an involution and ops keep entries finite") {
  for (int n = 0; n < 10; ++n) {
    const ComplexTensor3 a = random_tensor();
    const ComplexTensor3 att = a.transpose().transpose();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(att(i, j) == a(i, j));
    CHECK((a * a.adjoint()).all_finite());
    CHECK((a + a).all_finite());
  }
}
