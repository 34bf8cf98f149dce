#include "doctest.h"

#include "qhyp/errors.hpp"
#include "qhyp/numerics.hpp"
#include "qhyp/quat.hpp"

using namespace qhyp;

namespace {

Quaternion random_quat(SampleStream& s) { return {s.normal(), s.normal(), s.normal(), s.normal()}; }

QMatrix random_matrix(std::size_t r, std::size_t c, SampleStream& s) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = random_quat(s);
  return m;
}

}  // namespace

TEST_CASE("multiplication table") {
  const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
  CHECK(max_abs_diff(i * j, k) == 0.0);
  CHECK(max_abs_diff(j * i, -k) == 0.0);
  CHECK(max_abs_diff(j * k, i) == 0.0);
  CHECK(max_abs_diff(k * i, j) == 0.0);
  CHECK(max_abs_diff(i * i, Quaternion(-1.0)) == 0.0);

  const Quaternion q(0.3, -1.2, 2.0, 0.7);
  CHECK(max_abs_diff(q * Quaternion(1.0), q) == 0.0);
}

TEST_CASE("norm is multiplicative") {
  const Quaternion p(1, 1, 0, 0), q(0, 0, 1, 1);
  CHECK((p * q).norm() == doctest::Approx(2.0).epsilon(1e-15));

  SampleStream s(7, 0);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion a = random_quat(s), b = random_quat(s);
    CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) <= 1e-12 * a.norm() * b.norm());
  }
}

TEST_CASE("conjugation and unit quaternions") {
  SampleStream s(11, 0);
  for (int n = 0; n < 10000; ++n) {
    const Quaternion q = haar_sp1(s);
    CHECK(std::abs(q.norm() - 1.0) <= 1e-14);
    CHECK(std::abs(q.conj().norm() - 1.0) <= 1e-14);
    const Quaternion e = q.conj() * q;
    CHECK(max_abs_diff(e, Quaternion(q.norm2())) <= 1e-15);
  }
}

TEST_CASE("associativity") {
  SampleStream s(13, 0);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion p = random_quat(s), q = random_quat(s), r = random_quat(s);
    CHECK(max_abs_diff((p * q) * r, p * (q * r)) <= 1e-12);
  }
}

TEST_CASE("qmat_mul") {
  QMatrix a(2, 2), b(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      a(r, c) = Quaternion::i();
      b(r, c) = Quaternion::j();
    }
  const QMatrix ab = a * b;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) CHECK(max_abs_diff(ab(r, c), 2.0 * Quaternion::k()) == 0.0);

  SampleStream s(17, 0);
  const QMatrix m = random_matrix(3, 2, s), n = random_matrix(2, 4, s);
  CHECK(max_entry_norm(m * QMatrix::identity(2) - m) == 0.0);
  CHECK(max_entry_norm((m * n).adjoint() - n.adjoint() * m.adjoint()) <= 1e-12);
  CHECK_THROWS_AS(qmat_mul(m, m), DimensionMismatch);
}

TEST_CASE("gram_schmidt_sp") {
  CHECK(max_entry_norm(gram_schmidt_sp(QMatrix::identity(3)) - QMatrix::identity(3)) == 0.0);

  QMatrix scaled = QMatrix::identity(2);
  scaled(0, 0) = Quaternion(3.0);
  scaled(1, 1) = Quaternion(0.25);
  CHECK(max_entry_norm(gram_schmidt_sp(scaled) - QMatrix::identity(2)) <= 1e-15);

  SampleStream s(19, 0);
  for (int n = 0; n < 200; ++n) {
    const QMatrix v = random_matrix(2, 2, s);
    const QMatrix u = gram_schmidt_sp(v);
    CHECK(max_entry_norm(u.adjoint() * u - QMatrix::identity(2)) < 1e-10);
    // first column is a positive multiple of v's first column
    const double scale = v(0, 0).norm() / u(0, 0).norm();
    CHECK(max_abs_diff(scale * u(1, 0), v(1, 0)) <= 1e-10 * scale);
    CHECK(max_entry_norm(gram_schmidt_sp(u) - u) <= 1e-10);
  }

  QMatrix singular(2, 2);
  singular(0, 0) = Quaternion(1.0);
  singular(0, 1) = Quaternion::i();
  CHECK_THROWS_AS(gram_schmidt_sp(singular), RankDeficient);
}
