#include "qhyp/quat.hpp"

#include <algorithm>
#include <string>

#include "qhyp/errors.hpp"

namespace qhyp {

double max_abs_diff(const Quaternion& p, const Quaternion& q) {
  return std::max({std::abs(p.w - q.w), std::abs(p.x - q.x), std::abs(p.y - q.y),
                   std::abs(p.z - q.z)});
}

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
  return m;
}

QMatrix QMatrix::adjoint() const {
  QMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c).conj();
  return out;
}

QMatrix QMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw DimensionMismatch("QMatrix::block out of range");
  QMatrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void QMatrix::scale_column_right(std::size_t c, const Quaternion& s) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = (*this)(r, c) * s;
}

QMatrix qmat_mul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("qmat_mul: " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " times " + std::to_string(b.rows()) +
                            "x" + std::to_string(b.cols()));
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Quaternion acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = acc;
    }
  return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("QMatrix difference of unequal shapes");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) - b(r, c);
  return out;
}

double max_entry_norm(const QMatrix& a) {
  double m = 0.0;
  for (const auto& q : a.data())
    m = std::max({m, std::abs(q.w), std::abs(q.x), std::abs(q.y), std::abs(q.z)});
  return m;
}

QMatrix gram_schmidt_sp(const QMatrix& v) {
  if (v.rows() != v.cols()) throw DimensionMismatch("gram_schmidt_sp needs a square matrix");
  const std::size_t n = v.rows();
  QMatrix u = v;
  for (std::size_t c = 0; c < n; ++c) {
    // Two passes of classical Gram-Schmidt keep the residual at rounding level.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        Quaternion proj;  // <u_p, u_c> = sum conj(u_p[r]) u_c[r]
        for (std::size_t r = 0; r < n; ++r) proj += u(r, p).conj() * u(r, c);
        for (std::size_t r = 0; r < n; ++r) u(r, c) -= u(r, p) * proj;
      }
    }
    double nrm2 = 0.0;
    for (std::size_t r = 0; r < n; ++r) nrm2 += u(r, c).norm2();
    const double nrm = std::sqrt(nrm2);
    if (nrm < 1e-13)
      throw RankDeficient("gram_schmidt_sp: pivot norm " + std::to_string(nrm) + " in column " +
                          std::to_string(c));
    u.scale_column_right(c, Quaternion(1.0 / nrm));
  }
  return u;
}

}  // namespace qhyp
