#pragma once

// Arithmetic in the mod-2 cohomology ring of a real projective space and
// the rank obstruction it carries.
//
// H*(P(V+); Z2) is the truncated polynomial ring Z2[w]/(w^q) on the first
// Stiefel-Whitney class w of the classifying line bundle.  Total classes of
// bundles are units (constant term 1) and satisfy the Whitney sum relation
// w(E) w(E^perp) = 1, so the obstruction below reduces to a question about
// power-series inverses over Z2.  Everything here is exact bit arithmetic;
// no floating point.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ossv::z2 {

// Element of Z2[w]/(w^q): coefficient bits c_0..c_{q-1} of sum c_i w^i.
class TruncatedPoly {
 public:
  explicit TruncatedPoly(std::size_t truncation_degree)
      : coeffs_(check_degree(truncation_degree), 0) {}

  TruncatedPoly(std::size_t truncation_degree, std::initializer_list<int> bits)
      : TruncatedPoly(truncation_degree) {
    std::size_t i = 0;
    for (int b : bits) {
      if (i >= coeffs_.size())
        throw std::invalid_argument("TruncatedPoly: more bits than the truncation degree");
      coeffs_[i++] = static_cast<std::uint8_t>(b & 1);
    }
  }

  static TruncatedPoly one(std::size_t truncation_degree) {
    TruncatedPoly p(truncation_degree);
    p.coeffs_[0] = 1;
    return p;
  }

  // The monomial w^k; k must lie below the truncation degree.
  static TruncatedPoly monomial(std::size_t k, std::size_t truncation_degree) {
    if (k >= truncation_degree)
      throw std::invalid_argument("TruncatedPoly::monomial: power at or above truncation");
    TruncatedPoly p(truncation_degree);
    p.coeffs_[k] = 1;
    return p;
  }

  // 1 + w + ... + w^r, the total class forced on a rank-r subbundle of the
  // complement of the classifying line bundle.
  static TruncatedPoly geometric_sum(std::size_t r, std::size_t truncation_degree) {
    if (r >= truncation_degree)
      throw std::invalid_argument("TruncatedPoly::geometric_sum: degree at or above truncation");
    TruncatedPoly p(truncation_degree);
    for (std::size_t i = 0; i <= r; ++i) p.coeffs_[i] = 1;
    return p;
  }

  std::size_t truncation_degree() const { return coeffs_.size(); }

  bool coeff(std::size_t i) const {
    return i < coeffs_.size() && coeffs_[i] != 0;
  }

  void set_coeff(std::size_t i, bool bit) {
    if (i >= coeffs_.size())
      throw std::invalid_argument("TruncatedPoly::set_coeff: index at or above truncation");
    coeffs_[i] = bit ? 1 : 0;
  }

  bool is_one() const {
    if (coeffs_[0] != 1) return false;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const TruncatedPoly& a, const TruncatedPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i]) continue;
      if (!s.empty()) s += " + ";
      if (i == 0)
        s += "1";
      else if (i == 1)
        s += "w";
      else
        s += "w^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  static std::size_t check_degree(std::size_t q) {
    if (q == 0)
      throw std::invalid_argument("TruncatedPoly: truncation degree must be >= 1");
    return q;
  }

  std::vector<std::uint8_t> coeffs_;
};

// Coefficient convolution mod 2, truncated at degree q.
inline TruncatedPoly poly_mul(const TruncatedPoly& a, const TruncatedPoly& b) {
  const std::size_t q = a.truncation_degree();
  if (b.truncation_degree() != q)
    throw std::invalid_argument("poly_mul: truncation degree mismatch");
  TruncatedPoly out(q);
  for (std::size_t i = 0; i < q; ++i) {
    if (!a.coeff(i)) continue;
    for (std::size_t k = 0; i + k < q; ++k)
      if (b.coeff(k)) out.set_coeff(i + k, !out.coeff(i + k));
  }
  return out;
}

inline TruncatedPoly operator*(const TruncatedPoly& a, const TruncatedPoly& b) {
  return poly_mul(a, b);
}

// The unique inverse of a unit (constant term 1), by the series recursion
// b_k = sum_{i=1..k} a_i b_{k-i} over Z2.
inline TruncatedPoly invert_total_class(const TruncatedPoly& a) {
  if (!a.coeff(0))
    throw std::invalid_argument("invert_total_class: constant term is 0, not a unit");
  const std::size_t q = a.truncation_degree();
  TruncatedPoly b(q);
  b.set_coeff(0, true);
  for (std::size_t k = 1; k < q; ++k) {
    int acc = 0;
    for (std::size_t i = 1; i <= k; ++i)
      if (a.coeff(i) && b.coeff(k - i)) acc ^= 1;
    b.set_coeff(k, acc != 0);
  }
  return b;
}

enum class ObstructionVerdict { Impossible, PossibleWitness };

inline const char* to_string(ObstructionVerdict v) {
  return v == ObstructionVerdict::Impossible ? "Impossible" : "PossibleWitness";
}

struct ObstructionResult {
  int p = 0;
  int q = 0;
  int r = 0;
  ObstructionVerdict verdict = ObstructionVerdict::Impossible;
  // When the factorization would exist, the unique candidate cofactor
  // total class of degree <= p-r.  Never populated in range.
  std::vector<std::uint8_t> witness_coeffs;
};

// Tests whether 1 = (1 + w + ... + w^r) g can hold for a polynomial g of
// degree <= p-r over Z2.  Since rank constraints bound the total degree by
// p < q, the ring truncation plays no role and the question lives in
// Z2[w]: g must be the series inverse truncated at degree p-r, which works
// iff the inverse series has no terms in degrees p-r+1 .. p.  A rank-r
// subbundle of the line-bundle complement shared with the timelike factor
// would need exactly this factorization, so Impossible is the expected
// verdict for every 1 <= r <= p < q.
inline ObstructionResult lemma31_obstruction(int p, int q, int r) {
  if (!(1 <= r && r <= p && p < q))
    throw std::invalid_argument("lemma31_obstruction: need 1 <= r <= p < q");
  // Inverse series of 1 + w + ... + w^r to degree p.
  TruncatedPoly total = TruncatedPoly::geometric_sum(static_cast<std::size_t>(r),
                                                     static_cast<std::size_t>(p) + 1);
  TruncatedPoly inverse = invert_total_class(total);
  ObstructionResult result;
  result.p = p;
  result.q = q;
  result.r = r;
  for (int d = p - r + 1; d <= p; ++d) {
    if (inverse.coeff(static_cast<std::size_t>(d))) {
      result.verdict = ObstructionVerdict::Impossible;
      return result;
    }
  }
  result.verdict = ObstructionVerdict::PossibleWitness;
  result.witness_coeffs.resize(static_cast<std::size_t>(p - r) + 1);
  for (int d = 0; d <= p - r; ++d)
    result.witness_coeffs[static_cast<std::size_t>(d)] =
        inverse.coeff(static_cast<std::size_t>(d)) ? 1 : 0;
  return result;
}

// Top Stiefel-Whitney class w^r carried by a rank-r subbundle of the
// orthogonal complement of the classifying line bundle, as an element of
// Z2[w]/(w^q); above the truncation the class vanishes and the obstruction
// argument does not apply.
inline TruncatedPoly subbundle_top_class(int r, int q) {
  if (r < 1)
    throw std::invalid_argument("subbundle_top_class: rank must be >= 1");
  if (r >= q)
    throw std::invalid_argument("subbundle_top_class: class truncates to zero for r >= q");
  return TruncatedPoly::monomial(static_cast<std::size_t>(r), static_cast<std::size_t>(q));
}

}  // namespace ossv::z2
