#pragma once

// Generators and Cartan decompositions of o(p,q) and o(n,C), one-parameter
// subgroups via a pinned matrix exponential, and involution transport.
//
// Real-group data lives in the pseudo-orthonormal frame {e_a} (real matrices,
// X^T I_{p,q} + I_{p,q} X = 0). The complex group and all tensor-space action
// happen in the orthonormal frame {y_a} with y_a = e_a for a < p and
// e_a = i y_a for a >= p; `to_orthonormal_frame` converts between the two.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wickrot/errors.hpp"
#include "wickrot/signature.hpp"

namespace wick {

enum class GroupTag { Real, Complex };

/// Which isometry group a flow runs over: O(p,q) on its real slice, or the
/// full O(n,C).
struct GroupSpec {
  GroupTag tag = GroupTag::Real;
  Signature sig;  // for Complex only sig.dim() is meaningful

  int dim() const { return sig.dim(); }
  static GroupSpec real(Signature s) { return GroupSpec{GroupTag::Real, s}; }
  static GroupSpec complex_group(int n) { return GroupSpec{GroupTag::Complex, Signature{n, 0}}; }
};

/// Elementary generators of o(p,q): rotations within the +/- blocks
/// (antisymmetric), boosts across (symmetric). Single +-1 entries.
struct OrthBasis {
  Signature signature;
  std::vector<Eigen::MatrixXd> generators;
};

/// theta-eigenspace split of a generator basis. For the complex group the
/// stored basis pair is (o(n), i*o(n)) in the orthonormal frame and theta = 1.
struct CartanDecomposition {
  Signature signature;
  bool complex_group = false;
  std::vector<Eigen::MatrixXcd> k_basis;
  std::vector<Eigen::MatrixXcd> p_basis;
  Eigen::MatrixXd theta;
};

/// Element of O(p,q) (real matrix, native frame {e_a}) or O(n,C)
/// (orthonormal frame {y_a}).
struct GroupElement {
  GroupTag tag = GroupTag::Real;
  Signature sig;
  Eigen::MatrixXcd mat;

  /// Matrix acting on orthonormal-frame coordinates (conjugated by the frame
  /// change for the real tag; the matrix itself for the complex tag).
  Eigen::MatrixXcd frame_matrix() const;

  /// || M^T G M - G ||_inf with G the preserved bilinear form.
  double form_residual() const;

  GroupElement inverse() const;
  static GroupElement identity(GroupSpec g);
};

GroupElement compose(const GroupElement& a, const GroupElement& b);

OrthBasis basis_opq(const Signature& sig);

CartanDecomposition cartan_decompose(const OrthBasis& basis);

/// Cartan data of O(n,C) viewed as a real group: u = o(n), p-analog = i*o(n).
CartanDecomposition complex_cartan(int n);

CartanDecomposition cartan_for(const GroupSpec& group);

/// Matrix exponential, scaling-and-squaring with Pade degree 13.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

/// exp(t x) as a group element; x in the native frame of `group`.
GroupElement exp_one_param(const Eigen::MatrixXcd& x, double t, const GroupSpec& group);

/// g theta g^{-1}; throws if the result fails to square to the identity.
Eigen::MatrixXd conjugate_involution(const Eigen::MatrixXd& theta, const GroupElement& g);

/// Frame-change diag(phi), phi_a = 1 (a < p), i (a >= p): e_a = phi_a y_a.
Eigen::VectorXcd frame_factors(const Signature& sig);

/// Conjugate an e-frame matrix into the orthonormal frame: Phi X Phi^{-1}.
Eigen::MatrixXcd to_orthonormal_frame(const Eigen::MatrixXd& x_eframe, const Signature& sig);

/// Connected-component representatives of the group (native frame): identity
/// plus single-axis sign flips (one per block for O(p,q), one for O(n,C)).
std::vector<Eigen::MatrixXcd> component_representatives(const GroupSpec& group);

/// Same for K = O(p) x O(q) (block-preserving flips only).
std::vector<Eigen::MatrixXcd> k_component_representatives(const GroupSpec& group);

}  // namespace wick
