#pragma once

// Real inner-product spaces of arbitrary signature (p,q).
//
// A space carries q spacelike (positive) and p timelike (negative)
// directions, held as an explicit symmetric invertible Gram matrix G with
//
//   <u,v> = u^T G v.
//
// The canonical basis convention puts the timelike coordinates first,
// G = diag(-1,...,-1,+1,...,+1); arbitrary symmetric invertible Gram
// matrices of the right inertia are accepted as well.
//
// On top of the space this header provides causal classification, the
// indefinite adjoint A* = G^-1 A^T G, rejection sampling of the
// pseudo-sphere S+ of unit spacelike vectors, the orthogonal splitting into
// maximal spacelike/timelike subspaces, and orthogonal complements of
// non-null vectors.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ossv/rng.hpp"

namespace ossv {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default tolerances.  Rank and symmetry decisions are relative to the
// max-norm of the matrix under test; eigenvalue clustering is relative to
// the max-norm of the operator.  Isotropy and orthogonality residuals are
// absolute on Gram entries of Euclidean-unit basis vectors.
inline constexpr double kRankTol = 1e-9;
inline constexpr double kSymmetryTol = 1e-9;
inline constexpr double kClusterTol = 1e-7;
inline constexpr double kOrthTol = 1e-8;
inline constexpr double kIsotropyTol = 1e-8;

// Rejection-sampling threshold: candidate vectors with <v,v> below this are
// discarded instead of being normalized into near-null unit vectors.
inline constexpr double kRejectThreshold = 1e-6;

inline double max_norm(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

enum class CausalType { Spacelike, Timelike, Null };

inline const char* to_string(CausalType t) {
  switch (t) {
    case CausalType::Spacelike: return "Spacelike";
    case CausalType::Timelike: return "Timelike";
    case CausalType::Null: return "Null";
  }
  return "?";
}

// Signs of the spectrum of a symmetric matrix, with |lambda| below
// tol * max|lambda| counted as zero.
struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};

inline Inertia inertia(const Matrix& symmetric, double tol = kRankTol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetric);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("inertia: eigenvalue iteration failed");
  const Vector& ev = es.eigenvalues();
  const double scale = ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
  Inertia result;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -tol * scale)
      ++result.negative;
    else if (ev[i] > tol * scale)
      ++result.positive;
    else
      ++result.zero;
  }
  return result;
}

class SignatureSpace {
 public:
  // Canonical space: G = diag(-1,...,-1,+1,...,+1), p minus signs first.
  SignatureSpace(int p, int q) : SignatureSpace(p, q, canonical_gram(p, q)) {}

  // Space with an explicit Gram matrix.  The matrix must be symmetric to
  // exact storage equality, invertible, and have exactly p negative and q
  // positive eigenvalues.
  SignatureSpace(int p, int q, Matrix gram, double tol = kRankTol)
      : p_(p), q_(q), gram_(std::move(gram)) {
    if (p < 0 || q < 0 || p + q < 1)
      throw std::invalid_argument("SignatureSpace: need p,q >= 0 and p+q >= 1");
    const int m = p + q;
    if (gram_.rows() != m || gram_.cols() != m)
      throw std::invalid_argument("SignatureSpace: Gram matrix must be " +
                                  std::to_string(m) + "x" + std::to_string(m));
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (gram_(i, j) != gram_(j, i))
          throw std::invalid_argument("SignatureSpace: Gram matrix not symmetric");
    const Inertia sig = inertia(gram_, tol);
    if (sig.zero != 0)
      throw std::invalid_argument("SignatureSpace: Gram matrix is degenerate");
    if (sig.negative != p || sig.positive != q)
      throw std::invalid_argument(
          "SignatureSpace: Gram matrix has signature (" +
          std::to_string(sig.negative) + "," + std::to_string(sig.positive) +
          "), expected (" + std::to_string(p) + "," + std::to_string(q) + ")");
    gram_inverse_ = gram_.inverse();
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int dim() const { return p_ + q_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& gram_inverse() const { return gram_inverse_; }

  double inner(const Vector& u, const Vector& v) const {
    if (u.size() != dim() || v.size() != dim())
      throw std::invalid_argument("inner: vector dimension mismatch");
    return u.dot(gram_ * v);
  }

  static Matrix canonical_gram(int p, int q) {
    if (p < 0 || q < 0 || p + q < 1)
      throw std::invalid_argument("canonical_gram: need p,q >= 0 and p+q >= 1");
    Vector d(p + q);
    d.head(p).setConstant(-1.0);
    d.tail(q).setConstant(1.0);
    return d.asDiagonal();
  }

 private:
  int p_;
  int q_;
  Matrix gram_;
  Matrix gram_inverse_;
};

inline double inner(const SignatureSpace& space, const Vector& u, const Vector& v) {
  return space.inner(u, v);
}

inline CausalType causal_type(const SignatureSpace& space, const Vector& v,
                              double tol = kRankTol) {
  if (v.size() != space.dim())
    throw std::invalid_argument("causal_type: vector dimension mismatch");
  if (v.isZero(0.0))
    throw std::invalid_argument("causal_type: zero vector has no causal type");
  const double s = space.inner(v, v);
  if (s > tol) return CausalType::Spacelike;
  if (s < -tol) return CausalType::Timelike;
  return CausalType::Null;
}

// Draws n unit spacelike vectors (<x,x> = 1) by rejection sampling:
// i.i.d. standard normal coordinates, discarded unless <v,v> exceeds the
// rejection threshold, then normalized by 1/sqrt(<v,v>).  Deterministic for
// a fixed seed.
inline std::vector<Vector> sample_unit_spacelike(const SignatureSpace& space,
                                                 std::uint64_t seed, std::size_t n,
                                                 double reject_threshold = kRejectThreshold) {
  if (space.q() < 1)
    throw std::invalid_argument("sample_unit_spacelike: space has no spacelike directions");
  if (n < 1)
    throw std::invalid_argument("sample_unit_spacelike: need n >= 1");
  NormalSampler normal(seed);
  const int m = space.dim();
  std::vector<Vector> points;
  points.reserve(n);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 10000 * (n + 10);
  while (points.size() < n) {
    if (++attempts > max_attempts)
      throw std::runtime_error("sample_unit_spacelike: rejection sampling stalled");
    Vector v(m);
    for (int i = 0; i < m; ++i) v[i] = normal();
    const double s = space.inner(v, v);
    if (s <= reject_threshold) continue;
    points.push_back(v / std::sqrt(s));
  }
  return points;
}

// Indefinite adjoint A* = G^-1 A^T G, the unique matrix with
// <A u, v> = <u, A* v> for all u, v.
inline Matrix adjoint(const SignatureSpace& space, const Matrix& a) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw std::invalid_argument("adjoint: matrix dimension mismatch");
  return space.gram_inverse() * a.transpose() * space.gram();
}

// A is self-adjoint iff G*A is symmetric.  The residual is compared against
// tol scaled by max(1, ||G*A||_max).
inline bool is_self_adjoint(const SignatureSpace& space, const Matrix& a,
                            double tol = kSymmetryTol) {
  if (a.rows() != space.dim() || a.cols() != space.dim())
    throw std::invalid_argument("is_self_adjoint: matrix dimension mismatch");
  const Matrix b = space.gram() * a;
  const double resid = max_norm(b - b.transpose());
  return resid < tol * std::max(1.0, max_norm(b));
}

struct Subspace {
  Matrix basis;         // m x k, columns are the basis vectors
  Matrix induced_gram;  // k x k matrix of pairwise inner products

  int dim() const { return static_cast<int>(basis.cols()); }
};

// Wraps a basis matrix as a Subspace after checking linear independence
// (smallest singular value above tol relative to the largest).
inline Subspace make_subspace(const SignatureSpace& space, const Matrix& basis,
                              double tol = kRankTol) {
  if (basis.rows() != space.dim())
    throw std::invalid_argument("make_subspace: basis rows must match space dimension");
  if (basis.cols() > basis.rows())
    throw std::invalid_argument("make_subspace: more vectors than dimensions");
  if (basis.cols() > 0) {
    Eigen::JacobiSVD<Matrix> svd(basis);
    const auto& sv = svd.singularValues();
    if (sv[sv.size() - 1] <= tol * std::max(1.0, sv[0]))
      throw std::invalid_argument("make_subspace: basis vectors are linearly dependent");
  }
  return Subspace{basis, basis.transpose() * space.gram() * basis};
}

// Orthogonal splitting V = V+ (+) V- into a maximal spacelike and a maximal
// timelike subspace.  Eigendecomposes G, which is self-adjoint under the
// auxiliary Euclidean product: V+ spans the positive-eigenvalue
// eigenvectors, V- the negative ones.  Cross inner products vanish since
// <v_i, v_j> = lambda_j (v_i . v_j).
inline std::pair<Subspace, Subspace> split_spacelike_timelike(const SignatureSpace& space) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(space.gram());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("split_spacelike_timelike: eigenvalue iteration failed");
  const Vector& ev = es.eigenvalues();  // ascending
  const int m = space.dim();
  int negatives = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev[i] < 0.0) ++negatives;
  if (negatives != space.p())
    throw std::runtime_error("split_spacelike_timelike: Gram matrix inertia changed");
  const Matrix minus = es.eigenvectors().leftCols(negatives);
  const Matrix plus = es.eigenvectors().rightCols(m - negatives);
  return {make_subspace(space, plus), make_subspace(space, minus)};
}

// Orthogonal complement x^perp of a non-null vector: the (m-1)-dimensional
// kernel of the covector G*x, with a Euclidean-orthonormal basis.  For unit
// spacelike x the induced metric has signature (p, q-1).
inline Subspace orthogonal_complement(const SignatureSpace& space, const Vector& x,
                                      double null_tol = kRankTol) {
  if (x.size() != space.dim())
    throw std::invalid_argument("orthogonal_complement: vector dimension mismatch");
  const double s = space.inner(x, x);
  if (std::abs(s) <= null_tol)
    throw std::invalid_argument("orthogonal_complement: vector is null, complement degenerate");
  const int m = space.dim();
  Matrix row(1, m);
  row.row(0) = (space.gram() * x).transpose();
  Eigen::JacobiSVD<Matrix> svd(row, Eigen::ComputeFullV);
  const Matrix basis = svd.matrixV().rightCols(m - 1);
  return make_subspace(space, basis);
}

}  // namespace ossv
