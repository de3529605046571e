#pragma once

// Polynomial curvature invariants as full-contraction words: generation up to
// a degree bound with symmetry dedup, evaluation against a frame metric, and
// the VSI test. The generated family is a concrete proxy for a generating
// set, never claimed complete; callers see the word list they got.

#include <string>
#include <vector>

#include "wickrot/curvature.hpp"

namespace wick {

/// A full contraction of `degree` Riemann factors (or of one derivative
/// tensor): a perfect matching on the concatenated index slots, every pair
/// traced through the inverse frame metric.
struct ContractionWord {
  int degree = 1;            // number of tensor factors
  int derivative_order = 0;  // 0: Riemann factors; l>0: single grad^l Riem factor
  std::vector<int> pairing;  // partner[slot], canonical representative
  std::string label;

  int slot_count() const { return static_cast<int>(pairing.size()); }
};

struct InvariantVector {
  std::vector<double> values;
  std::vector<ContractionWord> words;
};

/// All full contractions of up to max_degree Riemann factors, deduplicated by
/// the slot symmetries (pair antisymmetries, pair exchange, factor exchange)
/// with identically-zero words removed, plus one degree-1 trace word per
/// derivative order in `derivative_orders` with even total valence.
/// max_degree must lie in [1,4].
std::vector<ContractionWord> generate_contractions(int max_degree,
                                                   const std::vector<int>& derivative_orders = {});

std::vector<ContractionWord> generate_contractions(int max_degree, const CurvatureBundle& bundle);

/// Evaluates words on the bundle (derivative words on the matching derivative
/// tensor). Results must be real; a complex residue is an internal error.
InvariantVector evaluate_invariants(const CurvatureBundle& bundle,
                                    const std::vector<ContractionWord>& words);

/// Same contraction engine on bare covariant tensors (block 0 plays the
/// Riemann role); used for Cartan-split components and orbit limits.
InvariantVector evaluate_invariants_on(const Tensor& riemann_like,
                                       const std::vector<Tensor>& derivatives,
                                       const Eigen::VectorXi& metric_diag,
                                       const std::vector<ContractionWord>& words);

bool is_vsi(const CurvatureBundle& bundle, int max_degree, double tol = 1e-10);

/// Canonical representative of a pairing under the word symmetries; returns
/// empty when the word is identically zero. Exposed for tests and labeling.
std::vector<int> canonical_pairing(int degree, const std::vector<int>& pairing);

}  // namespace wick
