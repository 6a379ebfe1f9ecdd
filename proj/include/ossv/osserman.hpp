#pragma once

// Sampling-based classification over the pseudo-sphere of unit spacelike
// vectors.
//
// A curvature tensor is spacelike Osserman when the eigenvalues of its
// Jacobi operator are constant on S+, and spacelike Jordan Osserman when
// the whole Jordan normal form is constant there.  The checks here sample
// n points deterministically, compare against the first sample, and return
// the first mismatch as a witness: they are falsifiers with declared
// tolerances, not provers.
//
// verify_main_theorem exercises the rigidity statement for p < q: an
// empirically Jordan Osserman tensor must have Jacobi operators with all
// eigenvalues real and every Jordan block of size one.  The balanced case
// p >= q is refused outright, since there the Jordan form is unconstrained
// and no conclusion is available.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ossv/curvature.hpp"
#include "ossv/indefinite.hpp"
#include "ossv/spectral.hpp"

namespace ossv {

// Gate failures (wrong signature class for a check) are distinct from
// operational errors; the CLI maps them to their own exit code.
struct hypothesis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class VerdictKind { Osserman, JordanOsserman, Neither };

inline const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Osserman: return "Osserman";
    case VerdictKind::JordanOsserman: return "JordanOsserman";
    case VerdictKind::Neither: return "Neither";
  }
  return "?";
}

struct Witness {
  std::size_t first_index = 0;
  std::size_t second_index = 0;
  Vector first_point;
  Vector second_point;
  JordanStructure first_structure;
  JordanStructure second_structure;
};

struct OssermanVerdict {
  VerdictKind kind = VerdictKind::Neither;
  std::optional<Witness> witness;
  JordanStructure reference_structure;    // at the first sample
  std::vector<Eigenvalue> reference_spectrum;  // clustered, at the first sample
  std::size_t samples_used = 0;
};

namespace detail {

// Spectrum of J expanded to a length-m list of (re, im) points, conjugates
// included, sorted lexicographically.  Comparing expanded lists entrywise
// is insensitive to how borderline clusters were grouped.
inline std::vector<std::pair<double, double>> expanded_spectrum(
    const std::vector<Eigenvalue>& clusters) {
  std::vector<std::pair<double, double>> out;
  for (const Eigenvalue& ev : clusters) {
    if (ev.im == 0.0) {
      for (int i = 0; i < ev.multiplicity; ++i) out.emplace_back(ev.re, 0.0);
    } else {
      for (int i = 0; i < ev.multiplicity / 2; ++i) {
        out.emplace_back(ev.re, -ev.im);
        out.emplace_back(ev.re, ev.im);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool spectra_match(const std::vector<std::pair<double, double>>& a,
                          const std::vector<std::pair<double, double>>& b, double radius) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i].first - b[i].first) > radius ||
        std::abs(a[i].second - b[i].second) > radius)
      return false;
  return true;
}

struct SjoScan {
  OssermanVerdict verdict;
  std::vector<Vector> points;
  std::vector<JordanStructure> structures;  // per sample, only while consistent
};

// Shared core of the Jordan Osserman test: per-sample Jordan structures
// compared against the first sample.  The clustering radius is fixed from
// the first sample's operator so every point is measured with the same
// equivalence.  First mismatch wins, by sample index.
inline SjoScan sjo_scan(const CurvatureTensor& r, std::size_t n, std::uint64_t seed,
                        double cluster_tol, double rank_tol) {
  if (r.space().q() < 1)
    throw std::invalid_argument("spacelike test: space has no spacelike directions");
  if (n < 2) throw std::invalid_argument("spacelike test: need at least 2 samples");
  SjoScan scan;
  scan.points = sample_unit_spacelike(r.space(), seed, n);
  double radius = 0.0;
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const Matrix j = jacobi_operator(r, scan.points[i]).matrix;
    if (i == 0) {
      radius = cluster_tol * std::max(1.0, max_norm(j));
      scan.verdict.reference_spectrum = eigenvalues(j, radius);
    }
    JordanStructure s;
    try {
      s = jordan_structure(r.space(), j, rank_tol, radius);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("sample " + std::to_string(i) + ": " + e.what());
    }
    if (i == 0) {
      scan.verdict.reference_structure = s;
    } else if (!structures_match(scan.verdict.reference_structure, s, radius)) {
      scan.verdict.kind = VerdictKind::Neither;
      Witness w;
      w.first_index = 0;
      w.second_index = i;
      w.first_point = scan.points[0];
      w.second_point = scan.points[i];
      w.first_structure = scan.verdict.reference_structure;
      w.second_structure = std::move(s);
      scan.verdict.witness = std::move(w);
      scan.verdict.samples_used = i + 1;
      return scan;
    }
    scan.structures.push_back(std::move(s));
  }
  scan.verdict.kind = VerdictKind::JordanOsserman;
  scan.verdict.samples_used = scan.points.size();
  return scan;
}

}  // namespace detail

// Eigenvalue constancy over S+: samples n unit spacelike vectors and
// compares the sorted spectra (with multiplicity) of the Jacobi operators.
inline OssermanVerdict spacelike_osserman_test(const CurvatureTensor& r, std::size_t n,
                                               std::uint64_t seed,
                                               double cluster_tol = kClusterTol,
                                               double rank_tol = kRankTol) {
  if (r.space().q() < 1)
    throw std::invalid_argument("spacelike_osserman_test: no spacelike directions");
  if (n < 2) throw std::invalid_argument("spacelike_osserman_test: need at least 2 samples");
  const std::vector<Vector> points = sample_unit_spacelike(r.space(), seed, n);
  OssermanVerdict verdict;
  verdict.samples_used = points.size();
  double radius = 0.0;
  std::vector<std::pair<double, double>> reference;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Matrix j = jacobi_operator(r, points[i]).matrix;
    if (i == 0) radius = cluster_tol * std::max(1.0, max_norm(j));
    const std::vector<Eigenvalue> clusters = eigenvalues(j, radius);
    const auto spectrum = detail::expanded_spectrum(clusters);
    if (i == 0) {
      verdict.reference_spectrum = clusters;
      verdict.reference_structure = jordan_structure(r.space(), j, rank_tol, radius);
      reference = spectrum;
    } else if (!detail::spectra_match(reference, spectrum, radius)) {
      verdict.kind = VerdictKind::Neither;
      Witness w;
      w.first_index = 0;
      w.second_index = i;
      w.first_point = points[0];
      w.second_point = points[i];
      w.first_structure = verdict.reference_structure;
      w.second_structure = jordan_structure(r.space(), j, rank_tol, radius);
      verdict.witness = std::move(w);
      verdict.samples_used = i + 1;
      return verdict;
    }
  }
  verdict.kind = VerdictKind::Osserman;
  return verdict;
}

// Jordan-form constancy over S+.
inline OssermanVerdict spacelike_jordan_osserman_test(const CurvatureTensor& r,
                                                      std::size_t n, std::uint64_t seed,
                                                      double cluster_tol = kClusterTol,
                                                      double rank_tol = kRankTol) {
  return detail::sjo_scan(r, n, seed, cluster_tol, rank_tol).verdict;
}

struct SampleDetail {
  std::size_t index = 0;
  Vector point;
  JordanStructure structure;
  bool all_real = false;
  bool diagonalizable = false;
};

struct TheoremReport {
  bool hypothesis_met = false;  // empirically Jordan Osserman (p<q is gated)
  bool eigenvalues_all_real = false;
  bool diagonalizable_everywhere = false;
  OssermanVerdict sjo_verdict;
  std::vector<SampleDetail> samples;

  bool conclusions_hold() const {
    return eigenvalues_all_real && diagonalizable_everywhere;
  }
};

// Rigidity check for p < q: runs the Jordan Osserman scan and, when it
// holds, asserts the two conclusions at every sample.  Refuses p >= q.
inline TheoremReport verify_main_theorem(const CurvatureTensor& r, std::size_t n,
                                         std::uint64_t seed,
                                         double cluster_tol = kClusterTol,
                                         double rank_tol = kRankTol) {
  const SignatureSpace& space = r.space();
  if (space.p() >= space.q())
    throw hypothesis_error("verify_main_theorem: hypothesis p<q violated (signature (" +
                           std::to_string(space.p()) + "," + std::to_string(space.q()) +
                           "))");
  detail::SjoScan scan = detail::sjo_scan(r, n, seed, cluster_tol, rank_tol);
  TheoremReport report;
  report.sjo_verdict = scan.verdict;
  report.hypothesis_met = scan.verdict.kind == VerdictKind::JordanOsserman;
  if (!report.hypothesis_met) return report;

  report.eigenvalues_all_real = true;
  report.diagonalizable_everywhere = true;
  for (std::size_t i = 0; i < scan.structures.size(); ++i) {
    SampleDetail d;
    d.index = i;
    d.point = scan.points[i];
    d.structure = scan.structures[i];
    d.all_real = d.structure.all_eigenvalues_real();
    d.diagonalizable = d.all_real && d.structure.max_block_size() <= 1;
    report.eigenvalues_all_real = report.eigenvalues_all_real && d.all_real;
    report.diagonalizable_everywhere =
        report.diagonalizable_everywhere && d.structure.max_block_size() <= 1;
    report.samples.push_back(std::move(d));
  }
  return report;
}

struct SectionalCurvatureVerdict {
  bool constant = false;
  double kappa_hat = 0.0;  // mean over sampled planes
  double spread = 0.0;     // max - min over sampled planes
  std::size_t planes_used = 0;
};

// Lorentzian consistency: samples non-degenerate planes and measures the
// spread of their sectional curvatures.  A Lorentzian spacelike Jordan
// Osserman tensor must come out constant, so a non-constant verdict must be
// matched by a Neither from the Jordan test (the contrapositive pairing the
// tests exercise).
inline SectionalCurvatureVerdict lorentzian_check(const CurvatureTensor& r,
                                                  std::size_t n_planes, std::uint64_t seed,
                                                  double tol = 1e-9) {
  const SignatureSpace& space = r.space();
  if (space.p() != 1)
    throw hypothesis_error("lorentzian_check: requires a Lorentzian space (p = 1)");
  if (n_planes < 1) throw std::invalid_argument("lorentzian_check: need n_planes >= 1");
  NormalSampler normal(seed);
  const int m = space.dim();
  SectionalCurvatureVerdict verdict;
  double lo = 0.0, hi = 0.0, sum = 0.0;
  std::size_t found = 0, attempts = 0;
  const std::size_t max_attempts = 10000 * (n_planes + 10);
  while (found < n_planes) {
    if (++attempts > max_attempts)
      throw std::runtime_error("lorentzian_check: plane sampling stalled");
    Vector x(m), y(m);
    for (int i = 0; i < m; ++i) x[i] = normal();
    for (int i = 0; i < m; ++i) y[i] = normal();
    const double denom =
        space.inner(x, x) * space.inner(y, y) - space.inner(x, y) * space.inner(x, y);
    if (std::abs(denom) <= kRejectThreshold) continue;
    const double kappa = r.value(x, y, y, x) / denom;
    if (found == 0) {
      lo = hi = kappa;
    } else {
      lo = std::min(lo, kappa);
      hi = std::max(hi, kappa);
    }
    sum += kappa;
    ++found;
  }
  verdict.planes_used = found;
  verdict.kappa_hat = sum / static_cast<double>(found);
  verdict.spread = hi - lo;
  verdict.constant = verdict.spread < tol;
  return verdict;
}

struct EquivalenceReport {
  OssermanVerdict osserman;
  OssermanVerdict jordan;
  bool equivalent = false;  // Osserman holds iff Jordan Osserman holds
};

// Riemannian equivalence of the two notions: for p = 0 every self-adjoint
// operator is diagonalizable, so eigenvalue constancy and Jordan constancy
// must agree.
inline EquivalenceReport riemannian_equivalence_check(const CurvatureTensor& r,
                                                      std::size_t n, std::uint64_t seed,
                                                      double cluster_tol = kClusterTol,
                                                      double rank_tol = kRankTol) {
  if (r.space().p() != 0)
    throw hypothesis_error("riemannian_equivalence_check: requires a Riemannian space (p = 0)");
  EquivalenceReport report;
  report.osserman = spacelike_osserman_test(r, n, seed, cluster_tol, rank_tol);
  report.jordan = spacelike_jordan_osserman_test(r, n, seed, cluster_tol, rank_tol);
  report.equivalent = (report.osserman.kind == VerdictKind::Osserman) ==
                      (report.jordan.kind == VerdictKind::JordanOsserman);
  return report;
}

}  // namespace ossv
