#pragma once

#include <complex>
#include <vector>

#include "qhyp/group.hpp"
#include "qhyp/quat.hpp"

namespace qhyp {

using cplx = std::complex<double>;

struct BundleWeight {
  int nu = 0;
  std::size_t dim() const { return static_cast<std::size_t>(nu) + 1; }
};

/// Vector of V_nu in the unitary monomial basis.
struct RepVector {
  std::vector<cplx> coords;

  RepVector() = default;
  explicit RepVector(BundleWeight w) : coords(w.dim()) {}
  explicit RepVector(std::vector<cplx> c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  double norm2() const;
  double norm() const;

  RepVector& operator+=(const RepVector& o);
  RepVector& operator-=(const RepVector& o);
  RepVector& operator*=(cplx s);
};

RepVector operator+(RepVector a, const RepVector& b);
RepVector operator-(RepVector a, const RepVector& b);
RepVector operator*(cplx s, RepVector a);
cplx inner(const RepVector& a, const RepVector& b);  // conjugate-linear in a
double max_abs_diff(const RepVector& a, const RepVector& b);

/// Basis vector e_j of V_nu.
RepVector basis_vector(BundleWeight w, std::size_t j);

/// Dense complex (nu+1)x(nu+1) matrix, row-major.
struct RepMatrix {
  std::size_t dim = 0;
  std::vector<cplx> entries;

  RepMatrix() = default;
  explicit RepMatrix(std::size_t d) : dim(d), entries(d * d) {}
  static RepMatrix identity(std::size_t d);

  cplx& operator()(std::size_t r, std::size_t c) { return entries[r * dim + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return entries[r * dim + c]; }

  RepMatrix adjoint() const;
  cplx trace() const;
  RepVector apply(const RepVector& v) const;
  RepVector apply_adjoint(const RepVector& v) const;
};

RepMatrix operator*(const RepMatrix& a, const RepMatrix& b);
double max_abs_diff(const RepMatrix& a, const RepMatrix& b);

/// nu-th symmetric power of q -> [[w+xi, y+zi], [-y+zi, w-xi]].
/// Throws NonUnitQuaternion when ||q| - 1| > 1e-10.
RepMatrix tau_matrix(BundleWeight w, const Quaternion& q);

/// Trace of tau_matrix.
double character(BundleWeight w, const Quaternion& q);

/// tau(q)^{-1} v = tau(q)* v.
RepVector tau_inverse_apply(BundleWeight w, const Quaternion& q, const RepVector& v);

/// tau on K uses only the Sp(1) factor.
inline RepMatrix tau_k(BundleWeight w, const KElement& k) { return tau_matrix(w, k.q); }

}  // namespace qhyp
