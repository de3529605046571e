#pragma once

// Kempf-Ness machinery: minimal-vector tests, norm-minimization flow over a
// group orbit, closed-orbit verdicts, boundary limits and orbit intersection.
//
// All tensors entering these functions are in the orthonormal complex frame.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wickrot/lie.hpp"
#include "wickrot/tensor.hpp"

namespace wick {

struct FlowConfig {
  double step_init = 0.1;
  int max_iter = 20000;
  double grad_tol = 1e-10;
  double blowup_bound = 1e8;
  std::uint64_t seed = 42;
  double dist_tol = 1e-6;  // orbit-intersection acceptance radius
  int restarts = 8;        // random restarts per group component
};

enum class FlowVerdict { ConvergedInOrbit, BoundaryLimit, MaxIter };

const char* to_string(FlowVerdict v);

struct FlowResult {
  Tensor minimizer;           // orthonormal-frame iterate at termination
  GroupElement group_element; // accumulated element with minimizer = g . v0
  double group_norm = 1.0;    // max |entry| of the accumulated element
  double final_grad_norm = 0.0;  // max_i |2 Re H(x_i v, v)| / H(v,v)
  int iterations = 0;
  FlowVerdict verdict = FlowVerdict::MaxIter;
  std::vector<double> norm_history;  // H(v,v) at start and after each accepted step
  bool monotone = true;
  std::vector<std::string> caveats;
  FlowConfig config;
  GroupSpec group;
};

struct ClosedVerdict {
  bool closed = false;
  FlowResult certificate;
  std::string caveat;  // "heuristic" whenever closed is false
};

struct IntersectResult {
  bool intersect = false;
  double distance = 0.0;  // best sqrt H-norm distance found
  GroupElement aligner;   // g with g . v1 closest to v2
};

/// Infinitesimal minimality test: max_x |Re H(x . v_+, v_-)| over the p-basis
/// against grad_tol * (1 + H(v,v)), with (v_+, v_-) the tau-split.
bool is_minimal(const Tensor& v, const CartanDecomposition& decomp,
                const ExtendedInvolution& tau, double grad_tol = 1e-10);

/// Gradient descent on H(g.v, g.v) over the p-directions with multiplicative
/// exp-updates and Armijo backtracking. The norm sequence is non-increasing.
FlowResult norm_flow(const Tensor& v, const GroupSpec& group, const FlowConfig& config);

/// Closed iff the flow converges inside the orbit; non-closed verdicts are
/// heuristic (divergent group element while the gradient points downhill).
/// Throws IndeterminateError when the flow hits max_iter.
ClosedVerdict orbit_closed(const Tensor& v, const GroupSpec& group, const FlowConfig& config);

/// Limit tensor of a non-closed orbit (the unique closed orbit in the
/// closure). Throws ContractError when the orbit is closed.
Tensor orbit_limit(const Tensor& v, const GroupSpec& group, const FlowConfig& config);

/// Detailed orbit-intersection search over the full algebra (k + p) with
/// seeded random restarts and group-component enumeration. Both orbits must
/// be closed (ContractError otherwise).
IntersectResult orbit_intersection(const Tensor& v1, const Tensor& v2, const GroupSpec& group,
                                   const FlowConfig& config);

bool orbits_intersect(const Tensor& v1, const Tensor& v2, const GroupSpec& group,
                      const FlowConfig& config);

/// Distance of w from the K-orbit of u after a k-only minimization (used to
/// check that converged minimizers lie on a single K-orbit).
double k_orbit_distance(const Tensor& u, const Tensor& w, const GroupSpec& group,
                        const FlowConfig& config);

}  // namespace wick
