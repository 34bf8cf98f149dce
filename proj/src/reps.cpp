#include "qhyp/reps.hpp"

#include <cmath>

#include "qhyp/errors.hpp"

namespace qhyp {

double RepVector::norm2() const {
  double s = 0.0;
  for (const cplx& c : coords) s += std::norm(c);
  return s;
}

double RepVector::norm() const { return std::sqrt(norm2()); }

RepVector& RepVector::operator+=(const RepVector& o) {
  if (o.size() != size()) throw DimensionMismatch("RepVector: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

RepVector& RepVector::operator-=(const RepVector& o) {
  if (o.size() != size()) throw DimensionMismatch("RepVector: size mismatch");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

RepVector& RepVector::operator*=(cplx s) {
  for (cplx& c : coords) c *= s;
  return *this;
}

RepVector operator+(RepVector a, const RepVector& b) { return a += b; }
RepVector operator-(RepVector a, const RepVector& b) { return a -= b; }
RepVector operator*(cplx s, RepVector a) { return a *= s; }

cplx inner(const RepVector& a, const RepVector& b) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a.coords[i]) * b.coords[i];
  return s;
}

double max_abs_diff(const RepVector& a, const RepVector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.coords[i] - b.coords[i]));
  return m;
}

RepVector basis_vector(BundleWeight w, std::size_t j) {
  RepVector v(w);
  v.coords.at(j) = 1.0;
  return v;
}

RepMatrix RepMatrix::identity(std::size_t d) {
  RepMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
  return m;
}

RepMatrix RepMatrix::adjoint() const {
  RepMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

cplx RepMatrix::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) s += (*this)(i, i);
  return s;
}

RepVector RepMatrix::apply(const RepVector& v) const {
  if (v.size() != dim) throw DimensionMismatch("RepMatrix::apply: size mismatch");
  RepVector out{std::vector<cplx>(dim)};
  for (std::size_t r = 0; r < dim; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += (*this)(r, c) * v.coords[c];
    out.coords[r] = s;
  }
  return out;
}

RepVector RepMatrix::apply_adjoint(const RepVector& v) const {
  if (v.size() != dim) throw DimensionMismatch("RepMatrix::apply_adjoint: size mismatch");
  RepVector out{std::vector<cplx>(dim)};
  for (std::size_t r = 0; r < dim; ++r) {
    cplx s = 0.0;
    for (std::size_t c = 0; c < dim; ++c) s += std::conj((*this)(c, r)) * v.coords[c];
    out.coords[r] = s;
  }
  return out;
}

RepMatrix operator*(const RepMatrix& a, const RepMatrix& b) {
  if (a.dim != b.dim) throw DimensionMismatch("RepMatrix: size mismatch");
  RepMatrix m(a.dim);
  for (std::size_t r = 0; r < a.dim; ++r)
    for (std::size_t k = 0; k < a.dim; ++k) {
      const cplx ark = a(r, k);
      for (std::size_t c = 0; c < a.dim; ++c) m(r, c) += ark * b(k, c);
    }
  return m;
}

double max_abs_diff(const RepMatrix& a, const RepMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
  return m;
}

namespace {

// Coefficients of p(x)^e as a dense polynomial in x, p(x) = p0 + p1 x.
std::vector<cplx> linear_power(cplx p0, cplx p1, int e) {
  std::vector<cplx> out(static_cast<std::size_t>(e) + 1);
  out[0] = 1.0;
  for (int k = 0; k < e; ++k) {
    for (int j = k + 1; j >= 1; --j) out[j] = out[j] * p0 + out[j - 1] * p1;
    out[0] *= p0;
  }
  return out;
}

}  // namespace

RepMatrix tau_matrix(BundleWeight w, const Quaternion& q) {
  if (std::abs(q.norm() - 1.0) > 1e-10) throw NonUnitQuaternion("tau_matrix: |q| != 1");
  const int nu = w.nu;
  const cplx a(q.w, q.x), b(q.y, q.z), c(-q.y, q.z), d(q.w, -q.x);
  RepMatrix m(w.dim());

  std::vector<double> binom(w.dim());
  binom[0] = 1.0;
  for (int k = 1; k <= nu; ++k) binom[k] = binom[k - 1] * (nu - k + 1) / k;

  // Column k is the image of e1^{nu-k} e2^k: (a e1 + c e2)^{nu-k} (b e1 + d e2)^k,
  // with x = e2/e1 tracking the e2 power.
  for (int k = 0; k <= nu; ++k) {
    const std::vector<cplx> p = linear_power(a, c, nu - k);
    const std::vector<cplx> r = linear_power(b, d, k);
    for (int j = 0; j <= nu; ++j) {
      cplx s = 0.0;
      for (int i = std::max(0, j - k); i <= std::min(j, nu - k); ++i) s += p[i] * r[j - i];
      m(j, k) = s * std::sqrt(binom[k] / binom[j]);
    }
  }
  return m;
}

double character(BundleWeight w, const Quaternion& q) { return tau_matrix(w, q).trace().real(); }

RepVector tau_inverse_apply(BundleWeight w, const Quaternion& q, const RepVector& v) {
  return tau_matrix(w, q).apply_adjoint(v);
}

}  // namespace qhyp
