#pragma once

// Purity classification (RPE/RPM, PE/PM for the Weyl subject), Wick-rotation
// verdicts for curvature bundles of possibly different signatures, and the
// paired Cartan splits across a Wick rotation.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wickrot/curvature.hpp"
#include "wickrot/flow.hpp"
#include "wickrot/invariants.hpp"

namespace wick {

enum class TensorSubject { Riemann, Weyl };
enum class Purity { Electric, Magnetic };  // theta-fixed / theta-negated

const char* to_string(TensorSubject s);

struct PurityReport {
  TensorSubject subject = TensorSubject::Riemann;
  bool indeterminate = false;
  std::set<Purity> verdict;  // empty set: generic type (or indeterminate)
  std::optional<Eigen::MatrixXd> witness;  // inner Cartan involution, e-frame
  FlowResult flow;
  double plus_residual = 0.0;   // |X_+|_H / |X|_H at the minimizer
  double minus_residual = 0.0;  // |X_-|_H / |X|_H at the minimizer
  double residual_tol = 1e-8;
};

enum class WickRelation { WickRotated, NotWickRotated, Indeterminate };

const char* to_string(WickRelation r);

struct WickVerdict {
  WickRelation relation = WickRelation::Indeterminate;
  double invariant_distance = 0.0;  // max_i |dI_i|^(1/degree_i)
  double relative_distance = 0.0;   // max_i |dI_i| / (1 + max |I_i|) -- the stage-1 gate
  double invariant_tol = 1e-8;
  int max_degree = 3;
  std::optional<ClosedVerdict> closure_a;
  std::optional<ClosedVerdict> closure_b;
  std::optional<GroupElement> alignment;  // O(n,C) element with g.a ~ b
  std::optional<double> alignment_distance;
  // Boundary-orbit comparison when an input orbit is non-closed.
  struct LimitComparison {
    bool wick_rotated = false;
    double distance = 0.0;
    double invariant_rel_distance = 0.0;
  };
  std::optional<LimitComparison> limits;
  std::vector<std::string> caveats;
};

struct WickSplit {
  // Cartan splits in each bundle's pseudo-orthonormal frame, valence (0,4).
  Tensor a_plus, a_minus, b_plus, b_minus;
  Eigen::MatrixXd witness_a, witness_b;
  FlowResult flow_a, flow_b;
  double cross_pair_residual = 0.0;  // invariant mismatch of paired components
};

/// Flows the subject tensor to a minimal vector over O(p,q) and reads the
/// verdict off the compact-slice split there; the witness involution is the
/// reference Cartan involution transported by the flow element.
PurityReport classify_purity(const CurvatureBundle& bundle, TensorSubject subject,
                             const FlowConfig& config, double residual_tol = 1e-8);

/// Stage 1: invariant comparison at max-degree 3. Stage 2: closed-orbit
/// checks over the real groups, then orbit intersection over O(n,C) in the
/// shared orthonormal frame. Non-closed orbits yield an indeterminate
/// relation plus the boundary-limit comparison.
WickVerdict wick_check(const CurvatureBundle& a, const CurvatureBundle& b,
                       const FlowConfig& config, double invariant_tol = 1e-8);

/// Paired Cartan splits of the two Riemann tensors with their witness inner
/// Cartan involutions; requires wick_check to come back wick-rotated.
WickSplit wick_split(const CurvatureBundle& a, const CurvatureBundle& b,
                     const FlowConfig& config);

}  // namespace wick
