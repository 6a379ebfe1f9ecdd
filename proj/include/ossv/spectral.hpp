#pragma once

// Spectral and Jordan analysis of self-adjoint operators in indefinite
// inner-product spaces.
//
// All arithmetic is real.  A complex eigenvalue pair {lambda, conj(lambda)}
// is handled through the real operator
//
//   J_lambda = J - Re(lambda) Id                        (lambda real)
//   J_lambda = J^2 - 2 Re(lambda) J + |lambda|^2 Id     (lambda complex)
//
// and the generalized eigenspace E_lambda = ker(J_lambda^m).  For a
// self-adjoint J the space decomposes as the orthogonal direct sum of the
// E_lambda over Im(lambda) >= 0, with a non-degenerate induced metric on
// each summand (full_decomposition checks both conclusions).
//
// Jordan structure is extracted from kernel-dimension sequences
// d_k = dim ker(J_lambda^k): the number of blocks of size >= k is
// d_k - d_{k-1}.  Only the structure is computed, never a transforming
// basis; this is what constancy tests over the pseudo-sphere consume.
//
// When the lambda-part is not diagonalizable, the image J_lambda^i(E_lambda)
// for the maximal i with nonzero image is totally isotropic
// (isotropic_top_stratum).  When lambda is complex and semisimple,
// I = (J - Re(lambda))/Im(lambda) restricted to E_lambda squares to -Id and
// exchanges spacelike and timelike directions, so the induced split has
// equal dimensions (para_complex_check).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ossv/indefinite.hpp"

namespace ossv {

// Conjugate pairs are stored once, with im >= 0.  multiplicity is the
// algebraic multiplicity as the real dimension of E_lambda (so it is even
// whenever im > 0).
struct Eigenvalue {
  double re = 0.0;
  double im = 0.0;
  int multiplicity = 1;

  bool is_real() const { return im == 0.0; }
};

inline Matrix lambda_operator(const Matrix& j, const Eigenvalue& lambda) {
  if (j.rows() != j.cols())
    throw std::invalid_argument("lambda_operator: matrix must be square");
  const Matrix id = Matrix::Identity(j.rows(), j.cols());
  if (lambda.im == 0.0) return j - lambda.re * id;
  return j * j - 2.0 * lambda.re * j +
         (lambda.re * lambda.re + lambda.im * lambda.im) * id;
}

namespace detail {

// Columns of V spanning the numerical kernel: right singular vectors whose
// singular value falls below rank_tol * sigma_max * m.
inline Matrix kernel_basis(const Matrix& a, double rank_tol) {
  const Eigen::Index m = a.rows();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] < 1e-300) return Matrix::Identity(m, a.cols());
  const double threshold = rank_tol * sv[0] * static_cast<double>(m);
  Eigen::Index kernel = 0;
  for (Eigen::Index i = sv.size() - 1; i >= 0 && sv[i] <= threshold; --i) ++kernel;
  kernel += a.cols() - sv.size();  // columns beyond min(rows, cols)
  return svd.matrixV().rightCols(kernel);
}

inline int kernel_dim(const Matrix& a, double rank_tol) {
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] < 1e-300) return static_cast<int>(a.cols());
  const double threshold = rank_tol * sv[0] * static_cast<double>(a.rows());
  int kernel = 0;
  for (Eigen::Index i = sv.size() - 1; i >= 0 && sv[i] <= threshold; --i) ++kernel;
  return kernel + static_cast<int>(a.cols() - sv.size());
}

// d_k = dim ker(J_lambda^k) for k = 1, 2, ... until the sequence repeats or
// k reaches kmax.  Powers are renormalized to max-norm 1 each step; the
// kernel is scale-invariant and this keeps singular-value thresholds
// meaningful in the presence of growth or decay.
inline std::vector<int> kernel_dim_sequence(const Matrix& j_lambda, double rank_tol,
                                            int kmax) {
  const int m = static_cast<int>(j_lambda.rows());
  std::vector<int> dims;
  const double scale = max_norm(j_lambda);
  if (scale < 1e-300) {
    dims.push_back(m);
    return dims;
  }
  const Matrix b = j_lambda / scale;
  Matrix power = b;
  int prev = 0;
  for (int k = 1; k <= kmax; ++k) {
    const int d = kernel_dim(power, rank_tol);
    dims.push_back(d);
    if (d == prev || d >= m) break;
    prev = d;
    if (k < kmax) {
      power = power * b;
      const double n = max_norm(power);
      if (n < 1e-300) {
        dims.push_back(m);
        break;
      }
      power /= n;
    }
  }
  return dims;
}

}  // namespace detail

// Eigenvalues of a real matrix, computed by a dense nonsymmetric solver and
// agglomeratively clustered: two eigenvalues merge whenever they lie within
// cluster_radius (single linkage), after folding conjugates onto im >= 0.
// A cluster whose mean imaginary part is within the radius of the real axis
// is snapped onto it.  Multiplicities are summed real dimensions.
inline std::vector<Eigenvalue> eigenvalues(const Matrix& j, double cluster_radius) {
  if (j.rows() != j.cols() || j.rows() == 0)
    throw std::invalid_argument("eigenvalues: matrix must be square and non-empty");
  if (cluster_radius < 0.0)
    throw std::invalid_argument("eigenvalues: cluster radius must be >= 0");
  Eigen::EigenSolver<Matrix> solver(j);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalues: eigenvalue iteration failed");
  const int m = static_cast<int>(j.rows());
  std::vector<std::array<double, 2>> pts(m);
  for (int i = 0; i < m; ++i)
    pts[i] = {solver.eigenvalues()[i].real(), std::abs(solver.eigenvalues()[i].imag())};

  // Single-linkage clustering via union-find.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&parent](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < m; ++i)
    for (int k = i + 1; k < m; ++k)
      if (std::hypot(pts[i][0] - pts[k][0], pts[i][1] - pts[k][1]) <= cluster_radius)
        parent[find(i)] = find(k);

  std::vector<Eigenvalue> clusters;
  for (int root = 0; root < m; ++root) {
    if (find(root) != root) continue;
    double re = 0.0, im = 0.0;
    int count = 0;
    for (int i = 0; i < m; ++i)
      if (find(i) == root) {
        re += pts[i][0];
        im += pts[i][1];
        ++count;
      }
    re /= count;
    im /= count;
    if (im <= cluster_radius) {
      im = 0.0;
    } else if (count % 2 != 0) {
      throw std::runtime_error(
          "eigenvalues: ambiguous cluster of odd real dimension off the real axis");
    }
    clusters.push_back(Eigenvalue{re, im, count});
  }
  std::sort(clusters.begin(), clusters.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    return a.re != b.re ? a.re < b.re : a.im < b.im;
  });
  return clusters;
}

inline double default_cluster_radius(const Matrix& j) {
  return kClusterTol * std::max(1.0, max_norm(j));
}

// Generalized eigenspace E_lambda = ker(J_lambda^m), returned with a
// Euclidean-orthonormal basis.  Powers stop as soon as the kernel dimension
// saturates, which happens at the largest block size; this avoids grinding
// separated directions into the noise floor.  An empty subspace signals
// that lambda is not an eigenvalue.
inline Subspace generalized_eigenspace(const SignatureSpace& space, const Matrix& j,
                                       const Eigenvalue& lambda,
                                       double rank_tol = kRankTol) {
  if (j.rows() != space.dim() || j.cols() != space.dim())
    throw std::invalid_argument("generalized_eigenspace: matrix dimension mismatch");
  const int m = space.dim();
  const Matrix j_lambda = lambda_operator(j, lambda);
  const double scale = max_norm(j_lambda);
  if (scale <= rank_tol * std::max(1.0, max_norm(j)))
    return make_subspace(space, Matrix::Identity(m, m), rank_tol);
  const Matrix b = j_lambda / scale;
  Matrix power = b;
  Matrix basis = detail::kernel_basis(power, rank_tol);
  for (int k = 2; k <= m && basis.cols() < m; ++k) {
    power = power * b;
    const double n = max_norm(power);
    if (n < 1e-300) {
      basis = Matrix::Identity(m, m);
      break;
    }
    power /= n;
    Matrix next = detail::kernel_basis(power, rank_tol);
    if (next.cols() <= basis.cols()) break;  // saturated
    basis = std::move(next);
  }
  if (basis.cols() == 0) return Subspace{Matrix(m, 0), Matrix(0, 0)};
  return make_subspace(space, basis, rank_tol);
}

struct SpectralComponent {
  Eigenvalue eigenvalue;
  Subspace eigenspace;
  double abs_det_induced = 0.0;
};

struct SpectralDecomposition {
  std::vector<SpectralComponent> components;
  double orthogonality_residual = 0.0;  // max |<b_i, c_j>| across components
  double min_abs_det = 0.0;             // min |det induced_gram| over components
};

// Orthogonal direct-sum decomposition over all clustered eigenvalues with
// im >= 0.  Requires J self-adjoint; checks that the summands are pairwise
// orthogonal, that their dimensions add up to m, and that every induced
// metric is non-degenerate.  A violation beyond tolerance throws with the
// offending pair, since it signals numerical breakdown rather than
// mathematics.
inline SpectralDecomposition full_decomposition(const SignatureSpace& space,
                                                const Matrix& j,
                                                double rank_tol = kRankTol,
                                                double cluster_radius = 0.0,
                                                double orth_tol = kOrthTol,
                                                double det_tol = 1e-10) {
  if (!is_self_adjoint(space, j, kSymmetryTol))
    throw std::invalid_argument("full_decomposition: operator is not self-adjoint");
  if (cluster_radius <= 0.0) cluster_radius = default_cluster_radius(j);
  const int m = space.dim();
  SpectralDecomposition out;
  int total_dim = 0;
  for (const Eigenvalue& lambda : eigenvalues(j, cluster_radius)) {
    Subspace e = generalized_eigenspace(space, j, lambda, rank_tol);
    if (e.dim() == 0)
      throw std::runtime_error("full_decomposition: empty generalized eigenspace at re=" +
                               std::to_string(lambda.re));
    total_dim += e.dim();
    Eigenvalue ev = lambda;
    ev.multiplicity = e.dim();
    const double det = std::abs(e.induced_gram.determinant());
    out.components.push_back(SpectralComponent{ev, std::move(e), det});
  }
  if (total_dim != m)
    throw std::runtime_error("full_decomposition: eigenspace dimensions sum to " +
                             std::to_string(total_dim) + ", expected " + std::to_string(m));

  const double orth_threshold = orth_tol * std::max(1.0, max_norm(j));
  out.min_abs_det = out.components.empty() ? 0.0 : out.components[0].abs_det_induced;
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    out.min_abs_det = std::min(out.min_abs_det, out.components[i].abs_det_induced);
    if (out.components[i].abs_det_induced <= det_tol)
      throw std::runtime_error(
          "full_decomposition: degenerate induced metric at re=" +
          std::to_string(out.components[i].eigenvalue.re) +
          " (|det| = " + std::to_string(out.components[i].abs_det_induced) + ")");
    for (std::size_t k = i + 1; k < out.components.size(); ++k) {
      const Matrix cross = out.components[i].eigenspace.basis.transpose() * space.gram() *
                           out.components[k].eigenspace.basis;
      const double resid = max_norm(cross);
      out.orthogonality_residual = std::max(out.orthogonality_residual, resid);
      if (resid >= orth_threshold)
        throw std::runtime_error(
            "full_decomposition: eigenspaces at re=" +
            std::to_string(out.components[i].eigenvalue.re) + " and re=" +
            std::to_string(out.components[k].eigenvalue.re) +
            " are not orthogonal (residual " + std::to_string(resid) + ")");
    }
  }
  return out;
}

struct JordanBlocks {
  Eigenvalue eigenvalue;
  std::vector<int> sizes;  // descending; complex pairs counted once
};

// Canonically ordered Jordan data: eigenvalues sorted by (re, im), block
// sizes descending, so equality of structures is plain comparison.
struct JordanStructure {
  std::vector<JordanBlocks> blocks;

  bool all_eigenvalues_real() const {
    for (const auto& b : blocks)
      if (b.eigenvalue.im != 0.0) return false;
    return true;
  }

  int max_block_size() const {
    int mx = 0;
    for (const auto& b : blocks)
      for (int s : b.sizes) mx = std::max(mx, s);
    return mx;
  }

  int total_dimension() const {
    int total = 0;
    for (const auto& b : blocks) {
      int sum = 0;
      for (int s : b.sizes) sum += s;
      total += sum * (b.eigenvalue.im == 0.0 ? 1 : 2);
    }
    return total;
  }
};

inline bool operator==(const JordanBlocks& a, const JordanBlocks& b) {
  return a.eigenvalue.re == b.eigenvalue.re && a.eigenvalue.im == b.eigenvalue.im &&
         a.sizes == b.sizes;
}

inline bool operator==(const JordanStructure& a, const JordanStructure& b) {
  return a.blocks == b.blocks;
}

// Structural equality up to an eigenvalue-matching radius: same canonical
// shape, eigenvalues pairwise within radius, block multisets identical.
inline bool structures_match(const JordanStructure& a, const JordanStructure& b,
                             double radius) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto& x = a.blocks[i];
    const auto& y = b.blocks[i];
    if (std::abs(x.eigenvalue.re - y.eigenvalue.re) > radius) return false;
    if (std::abs(x.eigenvalue.im - y.eigenvalue.im) > radius) return false;
    if (x.sizes != y.sizes) return false;
  }
  return true;
}

// Jordan structure from kernel-dimension sequences.  For each clustered
// eigenvalue, d_k = dim ker(J_lambda^k); the number of blocks of size >= k
// is d_k - d_{k-1}.  For im > 0 the d_k are even and halved, counting each
// conjugate pair of blocks once.  Inconsistent sequences (non-monotone
// differences, odd complex dimensions, totals missing m) throw.
inline JordanStructure jordan_structure(const SignatureSpace& space, const Matrix& j,
                                        double rank_tol = kRankTol,
                                        double cluster_radius = 0.0) {
  if (j.rows() != space.dim() || j.cols() != space.dim())
    throw std::invalid_argument("jordan_structure: matrix dimension mismatch");
  if (cluster_radius <= 0.0) cluster_radius = default_cluster_radius(j);
  const int m = space.dim();
  JordanStructure structure;
  for (const Eigenvalue& lambda : eigenvalues(j, cluster_radius)) {
    const Matrix j_lambda = lambda_operator(j, lambda);
    std::vector<int> dims = detail::kernel_dim_sequence(j_lambda, rank_tol, m);
    if (lambda.im != 0.0) {
      for (int& d : dims) {
        if (d % 2 != 0)
          throw std::runtime_error(
              "jordan_structure: numerically ambiguous Jordan structure "
              "(odd kernel dimension at a complex eigenvalue)");
        d /= 2;
      }
    }
    // counts_ge[k-1] = number of blocks of size >= k
    std::vector<int> counts_ge;
    int prev = 0;
    for (int d : dims) {
      counts_ge.push_back(d - prev);
      prev = d;
    }
    for (std::size_t k = 0; k + 1 < counts_ge.size(); ++k)
      if (counts_ge[k] < counts_ge[k + 1])
        throw std::runtime_error(
            "jordan_structure: numerically ambiguous Jordan structure "
            "(non-monotone rank sequence)");
    std::vector<int> sizes;
    for (std::size_t k = 0; k < counts_ge.size(); ++k) {
      const int exact = counts_ge[k] - (k + 1 < counts_ge.size() ? counts_ge[k + 1] : 0);
      if (exact < 0)
        throw std::runtime_error("jordan_structure: numerically ambiguous Jordan structure");
      for (int c = 0; c < exact; ++c) sizes.push_back(static_cast<int>(k) + 1);
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    if (sizes.empty())
      throw std::runtime_error(
          "jordan_structure: numerically ambiguous Jordan structure (empty block list)");
    Eigenvalue ev = lambda;
    structure.blocks.push_back(JordanBlocks{ev, std::move(sizes)});
  }
  if (structure.total_dimension() != m)
    throw std::runtime_error(
        "jordan_structure: numerically ambiguous Jordan structure (block sizes sum to " +
        std::to_string(structure.total_dimension()) + ", expected " + std::to_string(m) +
        ")");
  return structure;
}

// Real-diagonalizable: every eigenvalue real and every Jordan block 1x1.
inline bool is_diagonalizable(const SignatureSpace& space, const Matrix& j,
                              double rank_tol = kRankTol, double cluster_radius = 0.0) {
  const JordanStructure s = jordan_structure(space, j, rank_tol, cluster_radius);
  return s.all_eigenvalues_real() && s.max_block_size() <= 1;
}

struct IsotropicStratum {
  Subspace stratum;          // J_lambda^i (E_lambda) for the maximal i >= 1
  int power = 0;             // that maximal i
  double max_abs_inner = 0.0;  // max |<b_i, b_j>| over the stratum basis
  bool isotropic = false;
};

// Top stratum J_lambda^i(E_lambda), i >= 1 maximal with nonzero image.
// Requires the lambda-part to be non-diagonalizable; the returned subspace
// is checked for total isotropy (every pairwise inner product below tol).
inline IsotropicStratum isotropic_top_stratum(const SignatureSpace& space, const Matrix& j,
                                              const Eigenvalue& lambda,
                                              double rank_tol = kRankTol,
                                              double iso_tol = kIsotropyTol) {
  const Subspace e = generalized_eigenspace(space, j, lambda, rank_tol);
  const int k = e.dim();
  if (k == 0)
    throw std::invalid_argument("isotropic_top_stratum: lambda is not an eigenvalue");
  const Matrix j_lambda = lambda_operator(j, lambda);
  // Restriction to E_lambda in its orthonormal basis.
  const Matrix a = e.basis.transpose() * j_lambda * e.basis;
  const double scale = max_norm(a);
  if (scale <= rank_tol * std::max(1.0, max_norm(j_lambda)))
    throw std::invalid_argument(
        "isotropic_top_stratum: lambda-part is diagonalizable, no stratum exists");
  const Matrix b = a / scale;
  // Largest i with b^i nonzero; the index is at most dim E_lambda.
  Matrix power = b;
  int top = 1;
  const double zero_tol = rank_tol * static_cast<double>(k);
  for (int i = 2; i <= k; ++i) {
    Matrix next = power * b;
    const double n = max_norm(next);
    if (n <= zero_tol) break;
    power = next / n;
    top = i;
  }
  // Column space of J_lambda^top restricted to E_lambda, back in V.
  const Matrix image = e.basis * power;
  Eigen::JacobiSVD<Matrix> svd(image, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  const double rank_threshold = rank_tol * sv[0] * static_cast<double>(image.rows());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rank_threshold) ++rank;
  if (rank == 0)
    throw std::runtime_error("isotropic_top_stratum: stratum collapsed numerically");
  IsotropicStratum out;
  out.stratum = make_subspace(space, svd.matrixU().leftCols(rank), rank_tol);
  out.power = top;
  out.max_abs_inner = max_norm(out.stratum.induced_gram);
  out.isotropic = out.max_abs_inner < iso_tol;
  return out;
}

struct ParaComplexReport {
  Eigenvalue lambda;
  double square_residual = 0.0;  // ||I^2 + Id|| on E_lambda, max-norm
  int dim_spacelike = 0;
  int dim_timelike = 0;
  bool balanced = false;  // dim+ == dim-, as forced for self-adjoint J
};

// For a complex eigenvalue with semisimple lambda-part, forms
// I = (J - Re(lambda))/Im(lambda) on E_lambda, reports how well I^2 = -Id
// holds and the spacelike/timelike split of the induced metric.  I maps
// spacelike to timelike directions, so for self-adjoint J the split is
// balanced; an unbalanced report shows why complex eigenvalues cannot
// appear in definite factors.
inline ParaComplexReport para_complex_check(const SignatureSpace& space, const Matrix& j,
                                            const Eigenvalue& lambda,
                                            double rank_tol = kRankTol,
                                            double semisimple_tol = 1e-7) {
  if (lambda.im <= 0.0)
    throw std::invalid_argument("para_complex_check: eigenvalue must have im > 0");
  const Subspace e = generalized_eigenspace(space, j, lambda, rank_tol);
  const int k = e.dim();
  if (k == 0)
    throw std::invalid_argument("para_complex_check: lambda is not an eigenvalue");
  const Matrix j_lambda = lambda_operator(j, lambda);
  const Matrix restricted = e.basis.transpose() * j_lambda * e.basis;
  if (max_norm(restricted) > semisimple_tol * std::max(1.0, max_norm(j_lambda)))
    throw std::invalid_argument(
        "para_complex_check: lambda-part is not semisimple on E_lambda");
  const Matrix id = Matrix::Identity(k, k);
  const Matrix para =
      (e.basis.transpose() * j * e.basis - lambda.re * id) / lambda.im;
  ParaComplexReport report;
  report.lambda = lambda;
  report.lambda.multiplicity = k;
  report.square_residual = max_norm(para * para + id);
  const Inertia split = inertia(e.induced_gram, rank_tol);
  report.dim_spacelike = split.positive;
  report.dim_timelike = split.negative;
  report.balanced = split.positive == split.negative;
  return report;
}

}  // namespace ossv
