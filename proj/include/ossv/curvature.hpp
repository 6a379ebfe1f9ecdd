#pragma once

// Algebraic curvature tensors and their Jacobi operators.
//
// An algebraic curvature tensor is a rank-4 array R with the symmetries of
// a Riemann curvature tensor:
//
//   R(x,y,z,w) =  R(z,w,x,y)            (pair symmetry)
//   R(x,y,z,w) = -R(y,x,z,w)            (antisymmetry)
//   R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w) = 0   (first Bianchi identity)
//
// The Jacobi operator of R at a vector x is the self-adjoint map defined by
//
//   <J_R(x) y, z> = R(y, x, x, z),
//
// so in a basis J_R(x) = G^-1 T^T with T[a][d] = R(e_a, x, x, e_d).
// Antisymmetry forces J_R(x) x = 0, and for non-null x the operator is the
// zero block plus its restriction to x^perp (the reduced Jacobi operator).
//
// Sign convention, pinned here and in the tests: the constant curvature
// generator is R(x,y,z,w) = k (<x,w><y,z> - <x,z><y,w>), which makes the
// Jacobi eigenvalues at unit spacelike x equal {k, 0}.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ossv/indefinite.hpp"

namespace ossv {

// Dense m^4 storage, entries[a][b][c][d] = R(e_a, e_b, e_c, e_d) row-major.
// At desk scale (m <= ~16) density beats symmetry-compressed storage.
class CurvatureTensor {
 public:
  CurvatureTensor(SignatureSpace space, std::vector<double> entries)
      : space_(std::move(space)), entries_(std::move(entries)) {
    const std::size_t m = static_cast<std::size_t>(space_.dim());
    if (entries_.size() != m * m * m * m)
      throw std::invalid_argument("CurvatureTensor: expected " +
                                  std::to_string(m * m * m * m) + " entries, got " +
                                  std::to_string(entries_.size()));
  }

  const SignatureSpace& space() const { return space_; }
  int dim() const { return space_.dim(); }
  const std::vector<double>& entries() const { return entries_; }

  double operator()(int a, int b, int c, int d) const {
    const std::size_t m = static_cast<std::size_t>(dim());
    return entries_[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d];
  }

  // Full multilinear evaluation R(x,y,z,w).
  double value(const Vector& x, const Vector& y, const Vector& z, const Vector& w) const {
    const int m = dim();
    if (x.size() != m || y.size() != m || z.size() != m || w.size() != m)
      throw std::invalid_argument("CurvatureTensor::value: vector dimension mismatch");
    double sum = 0.0;
    for (int a = 0; a < m; ++a) {
      if (x[a] == 0.0) continue;
      for (int b = 0; b < m; ++b) {
        if (y[b] == 0.0) continue;
        for (int c = 0; c < m; ++c) {
          const double xyz = x[a] * y[b] * z[c];
          if (xyz == 0.0) continue;
          for (int d = 0; d < m; ++d) sum += xyz * w[d] * (*this)(a, b, c, d);
        }
      }
    }
    return sum;
  }

  double& at(int a, int b, int c, int d) {
    const std::size_t m = static_cast<std::size_t>(dim());
    return entries_[((static_cast<std::size_t>(a) * m + b) * m + c) * m + d];
  }

 private:
  SignatureSpace space_;
  std::vector<double> entries_;
};

// Tensors on the same space (identical Gram storage) form a vector space;
// linear combinations are used to build perturbed test fixtures.
inline CurvatureTensor operator+(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.dim() != b.dim() || a.space().gram() != b.space().gram())
    throw std::invalid_argument("CurvatureTensor: cannot add tensors on different spaces");
  std::vector<double> sum = a.entries();
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.entries()[i];
  return CurvatureTensor(a.space(), std::move(sum));
}

inline CurvatureTensor operator*(double s, const CurvatureTensor& r) {
  std::vector<double> scaled = r.entries();
  for (double& e : scaled) e *= s;
  return CurvatureTensor(r.space(), std::move(scaled));
}

struct SymmetryReport {
  double pair_violation = 0.0;      // max |R(x,y,z,w) - R(z,w,x,y)|
  double antisymmetry_violation = 0.0;  // max |R(x,y,z,w) + R(y,x,z,w)|
  double bianchi_violation = 0.0;   // max |cyclic sum|
  double tol = 0.0;
  bool passed = false;

  double max_violation() const {
    return std::max(pair_violation, std::max(antisymmetry_violation, bianchi_violation));
  }
};

inline SymmetryReport validate_symmetries(const CurvatureTensor& r, double tol = kSymmetryTol) {
  const int m = r.dim();
  SymmetryReport report;
  report.tol = tol;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          const double v = r(a, b, c, d);
          report.pair_violation =
              std::max(report.pair_violation, std::abs(v - r(c, d, a, b)));
          report.antisymmetry_violation =
              std::max(report.antisymmetry_violation, std::abs(v + r(b, a, c, d)));
          report.bianchi_violation = std::max(
              report.bianchi_violation, std::abs(v + r(b, c, a, d) + r(c, a, b, d)));
        }
  report.passed = report.max_violation() < tol;
  return report;
}

// R(x,y,z,w) = phi(x,w) phi(y,z) - phi(x,z) phi(y,w) for a symmetric
// bilinear form phi.  The symmetries hold exactly by the formula.  phi = G
// reproduces the constant curvature tensor with k = 1.
inline CurvatureTensor from_symmetric_form(const SignatureSpace& space, const Matrix& phi) {
  const int m = space.dim();
  if (phi.rows() != m || phi.cols() != m)
    throw std::invalid_argument("from_symmetric_form: form dimension mismatch");
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (phi(i, j) != phi(j, i))
        throw std::invalid_argument("from_symmetric_form: form is not symmetric");
  std::vector<double> entries(static_cast<std::size_t>(m) * m * m * m);
  std::size_t idx = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d, ++idx)
          entries[idx] = phi(a, d) * phi(b, c) - phi(a, c) * phi(b, d);
  return CurvatureTensor(space, std::move(entries));
}

// Constant sectional curvature k: R(x,y,z,w) = k(<x,w><y,z> - <x,z><y,w>).
// The Jacobi operator at unit spacelike x is k (Id - projection onto x).
inline CurvatureTensor constant_curvature_tensor(const SignatureSpace& space, double kappa) {
  CurvatureTensor r = from_symmetric_form(space, space.gram());
  return kappa * r;
}

// Block extension A (+) 0: A in the upper-left corner, zeros elsewhere.
inline Matrix stabilize(const Matrix& a, int target_dim) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("stabilize: matrix must be square");
  if (target_dim < a.rows())
    throw std::invalid_argument("stabilize: target dimension smaller than matrix");
  Matrix out = Matrix::Zero(target_dim, target_dim);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

struct JacobiOperator {
  Vector base_point;
  Matrix matrix;
};

inline JacobiOperator jacobi_operator(const CurvatureTensor& r, const Vector& x) {
  const int m = r.dim();
  if (x.size() != m)
    throw std::invalid_argument("jacobi_operator: vector dimension mismatch");
  // T[a][d] = R(e_a, x, x, e_d); <J y, z> = R(y,x,x,z) gives G J = T^T.
  Matrix t = Matrix::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (x[b] == 0.0) continue;
      for (int c = 0; c < m; ++c) {
        const double xx = x[b] * x[c];
        if (xx == 0.0) continue;
        for (int d = 0; d < m; ++d) t(a, d) += xx * r(a, b, c, d);
      }
    }
  return JacobiOperator{x, r.space().gram_inverse() * t.transpose()};
}

struct ReducedJacobi {
  Subspace complement;  // x^perp with a Euclidean-orthonormal basis
  Matrix matrix;        // restriction of J_R(x) in that basis
};

// Restriction of the Jacobi operator to x^perp.  The full operator is
// 0 (+) reduced on span{x} (+) x^perp.
inline ReducedJacobi reduced_jacobi(const CurvatureTensor& r, const Vector& x,
                                    double null_tol = kRankTol) {
  Subspace comp = orthogonal_complement(r.space(), x, null_tol);
  const Matrix full = jacobi_operator(r, x).matrix;
  Matrix restricted = comp.basis.transpose() * full * comp.basis;
  return ReducedJacobi{std::move(comp), std::move(restricted)};
}

// Sectional curvature of the plane spanned by {x, y}:
//   R(x,y,y,x) / (<x,x><y,y> - <x,y>^2).
inline double sectional_curvature(const CurvatureTensor& r, const Vector& x,
                                  const Vector& y, double degenerate_tol = 1e-10) {
  const SignatureSpace& space = r.space();
  const double denom =
      space.inner(x, x) * space.inner(y, y) - space.inner(x, y) * space.inner(x, y);
  if (std::abs(denom) <= degenerate_tol)
    throw std::invalid_argument("sectional_curvature: plane is degenerate");
  return r.value(x, y, y, x) / denom;
}

}  // namespace ossv
