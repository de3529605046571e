#pragma once

// Holomorphic inner product spaces, real slices and their conjugation maps.
//
// Everything is coordinatized in the standard orthonormal frame of C^n, where
// the holomorphic inner product is the plain bilinear sum g0(X,Y) = sum X_i Y_i.
// A real slice of signature (p,q) is the fixed-point set of Z -> I_{p,q} conj(Z):
// real entries in the first p coordinates, purely imaginary in the last q.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wickrot/errors.hpp"

namespace wick {

using Complex = std::complex<double>;

/// Metric signature: p plus-directions followed by q minus-directions.
struct Signature {
  int p = 0;
  int q = 0;

  int dim() const { return p + q; }
  bool operator==(const Signature&) const = default;

  /// Frame metric entries (+1 p times, -1 q times), exact integers.
  Eigen::VectorXi metric_signs() const;

  void validate() const;  // p,q >= 0, p+q >= 1
};

/// The anti-linear involution Z -> signs .* conj(Z) cutting out a real slice.
struct ConjugationMap {
  Signature signature;
  Eigen::VectorXi signs;  // diagonal of I_{p,q}, entries +-1

  Eigen::MatrixXd matrix() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& z) const;

  /// Basis of the fixed-point set: e_a = y_a (a < p), e_a = i*y_a (a >= p).
  std::vector<Eigen::VectorXcd> fixed_point_basis() const;
};

/// Two real slices plus the compact one, all pairwise commuting.
struct CompatibleTriple {
  ConjugationMap slice_a;
  ConjugationMap slice_b;
  ConjugationMap compact;  // signature (n,0), plain conjugation
};

/// Bilinear (not sesquilinear) standard form sum X_i Y_i.
Complex standard_form_eval(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y);

ConjugationMap make_conjugation(const Signature& sig);

struct RealSliceCheck {
  bool is_real_slice = false;
  Signature signature;   // meaningful only when is_real_slice
  double gram_imag_max = 0.0;
  double det_ratio = 0.0;  // |det Gram| / (max |entry|)^m
};

/// Tests whether span_R(basis) carries a real non-degenerate restriction of
/// the standard form, and reads off its signature from the Gram eigenvalues.
RealSliceCheck is_real_slice(const std::vector<Eigen::VectorXcd>& basis);

CompatibleTriple build_compatible_triple(const Signature& a, const Signature& b);

/// Exact integer commutator of two conjugation sign patterns (diagonal maps
/// always commute; kept explicit so the triple property is testable as stated).
Eigen::MatrixXi conjugation_commutator(const ConjugationMap& a, const ConjugationMap& b);

}  // namespace wick
