#pragma once

// Pointwise curvature data in a pseudo-orthonormal frame: constant-curvature
// blocks, direct sums, Ricci/scalar/Weyl derivation and the example catalog.
//
// Bundle tensors hold real components in the pseudo-orthonormal frame {e_a}
// (metric diag +-1, plus-directions first); embed_real_slice moves them into
// the orthonormal complex frame for flows.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wickrot/signature.hpp"
#include "wickrot/tensor.hpp"

namespace wick {

struct MetricPoint {
  Signature signature;
  Eigen::VectorXi metric_diag;  // +1 p times then -1 q times

  static MetricPoint from_signature(const Signature& sig) {
    return MetricPoint{sig, sig.metric_signs()};
  }
};

struct CurvatureBundle {
  MetricPoint metric;
  Tensor riemann;                  // valence (0,4), real components
  std::vector<Tensor> derivatives; // l-th entry: valence (0,4+l+1) ... entry i has rank 5+i
  std::string label;
};

struct RiemannEntry {
  std::array<int, 4> idx;
  double value;
};

/// Builds a (0,4) tensor from one representative per symmetry class,
/// completing the pair antisymmetries and the pair exchange; conflicting
/// representatives (disagreement beyond 1e-12) raise ParseError.
Tensor riemann_from_components(int dimension, const std::vector<RiemannEntry>& entries);

/// Largest violation of R_abcd = -R_bacd = -R_abdc = R_cdab over all indices.
double riemann_symmetry_residual(const Tensor& riemann);

struct BianchiCheck {
  double residual = 0.0;
  std::array<int, 4> worst_idx{0, 0, 0, 0};
};

/// First Bianchi residual max |R_abcd + R_acdb + R_adbc| with its location.
BianchiCheck first_bianchi_residual(const Tensor& riemann);

/// R_abcd = K (g_ac g_bd - g_ad g_bc); a symmetric space, so no derivatives.
CurvatureBundle constant_curvature_block(int dim, double curvature, const Signature& sig);

/// Block-diagonal sum; frame re-sorted so +1 directions come first.
CurvatureBundle direct_sum_metric(const CurvatureBundle& a, const CurvatureBundle& b);

struct DerivedCurvature {
  Tensor ricci;  // (0,2)
  double scalar = 0.0;
  std::optional<Tensor> weyl;  // (0,4); absent when n < 3
};

DerivedCurvature derived_curvature(const CurvatureBundle& bundle);

/// g -> -g: flips the metric sign (re-sorted) and the (0,4) components.
CurvatureBundle anti_isometry(const CurvatureBundle& bundle);

/// Named example spaces. "flat" takes its dimension/signature from the
/// optional arguments (defaults: 4, (4,0)).
CurvatureBundle catalog_metric(const std::string& name, std::optional<int> dim = std::nullopt,
                               std::optional<Signature> sig = std::nullopt);

const std::vector<std::string>& catalog_names();

/// Riemann plus all derivative tensors as one direct-sum tensor in the
/// orthonormal complex frame (the vector the group flows act on).
Tensor flow_vector(const CurvatureBundle& bundle);

/// Validates the bundle invariants (symmetries + first Bianchi); throws
/// ParseError with the offending quadruple on violation.
void validate_bundle(const CurvatureBundle& bundle, double symmetry_tol = 1e-10,
                     double bianchi_tol = 1e-8);

}  // namespace wick
