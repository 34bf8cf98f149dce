#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace qhyp {

/// Real quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion inverse() const;
  Quaternion normalized() const;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }
};

/// Hamilton product.
constexpr Quaternion quat_mul(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return quat_mul(p, q); }
constexpr Quaternion operator+(Quaternion p, const Quaternion& q) { return p += q; }
constexpr Quaternion operator-(Quaternion p, const Quaternion& q) { return p -= q; }
constexpr Quaternion operator-(const Quaternion& p) { return {-p.w, -p.x, -p.y, -p.z}; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }

inline Quaternion Quaternion::inverse() const { return (1.0 / norm2()) * conj(); }
inline Quaternion Quaternion::normalized() const { return (1.0 / norm()) * (*this); }

/// Largest absolute coefficient of p - q.
double max_abs_diff(const Quaternion& p, const Quaternion& q);

/// Dense quaternionic matrix, row-major. Acts on column vectors of the right
/// H-module H^rows: scalars always multiply from the right.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Quaternion> data() const { return data_; }

  /// Conjugate transpose.
  QMatrix adjoint() const;

  /// Sub-block copy [r0, r0+nr) x [c0, c0+nc).
  QMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

  /// Column c multiplied on the right by the scalar s.
  void scale_column_right(std::size_t c, const Quaternion& s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

/// Matrix product; throws DimensionMismatch when A.cols() != B.rows().
QMatrix qmat_mul(const QMatrix& a, const QMatrix& b);
inline QMatrix operator*(const QMatrix& a, const QMatrix& b) { return qmat_mul(a, b); }
QMatrix operator-(const QMatrix& a, const QMatrix& b);

/// Max-entry norm (largest |coefficient| over all entries).
double max_entry_norm(const QMatrix& a);

/// Gram-Schmidt over H (right module) on the columns of a square matrix.
/// Returns U with U*U = I whose first column is V's first column normalized.
/// Throws RankDeficient when a pivot norm falls below 1e-13.
QMatrix gram_schmidt_sp(const QMatrix& v);

}  // namespace qhyp
