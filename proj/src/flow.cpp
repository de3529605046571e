#include "wickrot/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace wick {

namespace {

Complex herm(const Tensor& u, const Tensor& v) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.comps.size(); ++i) acc += u.comps[i] * std::conj(v.comps[i]);
  return acc;
}

Tensor apply_frame_matrix(const Eigen::MatrixXcd& m, const Tensor& v) {
  GroupElement g{GroupTag::Complex, Signature{v.shape.dimension, 0}, m};
  return act_group(g, v);
}

/// p-basis (or k-basis) in the orthonormal frame for the given group.
std::vector<Eigen::MatrixXcd> frame_basis(const std::vector<Eigen::MatrixXcd>& native,
                                          const GroupSpec& group) {
  if (group.tag == GroupTag::Complex) return native;
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(native.size());
  for (const auto& x : native) out.push_back(to_orthonormal_frame(x.real(), group.sig));
  return out;
}

std::vector<double> gradient(const Tensor& v, const std::vector<Eigen::MatrixXcd>& basis) {
  std::vector<double> g(basis.size(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    g[i] = 2.0 * herm(act_algebra(basis[i], v), v).real();
  }
  return g;
}

Eigen::MatrixXcd direction_matrix(const std::vector<double>& coeffs,
                                  const std::vector<Eigen::MatrixXcd>& basis, int n) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < basis.size(); ++i) d += coeffs[i] * basis[i];
  return d;
}

struct Step {
  double eta = 0.0;
  Eigen::MatrixXcd element;  // exp(-eta * dir)
  Tensor v_new;
  double f_new = 0.0;
};

constexpr double kArmijoC = 1e-4;
constexpr double kBacktrack = 0.5;
constexpr int kMaxBacktracks = 80;

/// Backtracking line search along exp(-eta * dir). slope0 = sum of squared
/// gradient coefficients (directional derivative of F at eta = 0).
template <typename F>
std::optional<Step> armijo_step(const Tensor& v, const Eigen::MatrixXcd& dir, double f0,
                                double slope0, double eta0, F&& value) {
  double eta = eta0;
  for (int k = 0; k < kMaxBacktracks; ++k) {
    const Eigen::MatrixXcd e = expm(-eta * dir);
    Tensor v_new = apply_frame_matrix(e, v);
    if (v_new.all_finite()) {
      const double f_new = value(v_new);
      if (std::isfinite(f_new) && f_new <= f0 - kArmijoC * eta * slope0) {
        return Step{eta, e, std::move(v_new), f_new};
      }
    }
    eta *= kBacktrack;
  }
  return std::nullopt;
}

void add_group_caveats(const GroupSpec& group, std::vector<std::string>& caveats) {
  if (group.tag == GroupTag::Real && group.sig.p == 1 && group.sig.q == 1) {
    caveats.push_back("o11-reductive-algebraic-only");
  }
}

}  // namespace

const char* to_string(FlowVerdict v) {
  switch (v) {
    case FlowVerdict::ConvergedInOrbit: return "converged-in-orbit";
    case FlowVerdict::BoundaryLimit: return "boundary-limit";
    case FlowVerdict::MaxIter: return "max-iter";
  }
  return "?";
}

bool is_minimal(const Tensor& v, const CartanDecomposition& decomp,
                const ExtendedInvolution& tau, double grad_tol) {
  if (!tau.conjugates || !(tau.shape == v.shape)) {
    throw ContractError("is_minimal: tau must be the compact-slice conjugation for v's shape");
  }
  const GroupSpec group = decomp.complex_group
                              ? GroupSpec::complex_group(decomp.signature.dim())
                              : GroupSpec::real(decomp.signature);
  if (group.dim() != v.shape.dimension) throw DimensionError("is_minimal: dimension mismatch");
  const auto [v_plus, v_minus] = cartan_split(v, tau);
  const std::vector<Eigen::MatrixXcd> p_frame = frame_basis(decomp.p_basis, group);
  const double bound = grad_tol * (1.0 + herm(v, v).real());
  for (const auto& x : p_frame) {
    if (std::abs(herm(act_algebra(x, v_plus), v_minus).real()) >= bound) return false;
  }
  return true;
}

FlowResult norm_flow(const Tensor& v, const GroupSpec& group, const FlowConfig& config) {
  if (group.dim() != v.shape.dimension) throw DimensionError("norm_flow: dimension mismatch");
  if (!v.all_finite()) throw NumericError("norm_flow: non-finite input tensor");

  FlowResult res;
  res.config = config;
  res.group = group;
  res.group_element = GroupElement::identity(group);
  res.minimizer = v;
  add_group_caveats(group, res.caveats);

  const CartanDecomposition cart = cartan_for(group);
  const std::vector<Eigen::MatrixXcd> p_frame = frame_basis(cart.p_basis, group);
  const int n = group.dim();

  Eigen::MatrixXcd g_acc = Eigen::MatrixXcd::Identity(n, n);  // orthonormal frame
  Tensor cur = v;
  double f = herm(cur, cur).real();
  res.norm_history.push_back(f);

  if (f == 0.0 || p_frame.empty()) {
    // Zero vector or compact group: nothing to minimize.
    res.verdict = FlowVerdict::ConvergedInOrbit;
    return res;
  }

  double eta_next = config.step_init;
  for (int iter = 0; iter < config.max_iter; ++iter) {
    if (!std::isfinite(f)) {
      throw NumericError("norm_flow: non-finite norm at iteration " + std::to_string(iter));
    }
    const std::vector<double> grad = gradient(cur, p_frame);
    double gmax = 0.0, slope = 0.0;
    for (double gi : grad) {
      gmax = std::max(gmax, std::abs(gi));
      slope += gi * gi;
    }
    res.final_grad_norm = (f > 0.0) ? gmax / f : 0.0;
    res.iterations = iter;
    res.group_norm = g_acc.cwiseAbs().maxCoeff();

    if (res.final_grad_norm < config.grad_tol) {
      res.verdict = FlowVerdict::ConvergedInOrbit;
      break;
    }
    if (res.group_norm > config.blowup_bound) {
      res.verdict = FlowVerdict::BoundaryLimit;
      break;
    }

    // Armijo first; near the minimum the sufficient decrease drops below the
    // resolution of f, so a step is also accepted when it measurably shrinks
    // the gradient at constant-within-roundoff norm.
    const Eigen::MatrixXcd dir = direction_matrix(grad, p_frame, n);
    std::optional<Step> step;
    bool floor_step = false;
    double eta = eta_next;
    for (int k = 0; k < kMaxBacktracks && !step; ++k, eta *= kBacktrack) {
      const Eigen::MatrixXcd e = expm(-eta * dir);
      Tensor v_new = apply_frame_matrix(e, cur);
      if (!v_new.all_finite()) continue;
      const double f_new = herm(v_new, v_new).real();
      if (!std::isfinite(f_new)) continue;
      if (f_new <= f - kArmijoC * eta * slope) {
        step = Step{eta, e, std::move(v_new), f_new};
      } else if (f_new <= f * (1.0 + 16.0 * std::numeric_limits<double>::epsilon())) {
        double gmax_new = 0.0;
        for (double gi : gradient(v_new, p_frame)) gmax_new = std::max(gmax_new, std::abs(gi));
        // Demand a real contraction so oscillating overshoots get backtracked.
        if (gmax_new < gmax * (1.0 - 1e-3)) {
          step = Step{eta, e, std::move(v_new), std::min(f_new, f)};
          floor_step = true;
        }
      }
    }
    if (!step) {
      res.caveats.push_back("line-search-stall");
      res.verdict = FlowVerdict::MaxIter;
      break;
    }
    cur = std::move(step->v_new);
    g_acc = step->element * g_acc;
    res.monotone = res.monotone && (step->f_new <= f);
    f = step->f_new;
    res.norm_history.push_back(f);
    // Deterministic step growth; backtracking pulls it down again.
    eta_next = floor_step ? step->eta : 2.0 * step->eta;
    res.verdict = FlowVerdict::MaxIter;
    res.iterations = iter + 1;
  }

  res.minimizer = cur;
  res.group_norm = g_acc.cwiseAbs().maxCoeff();
  if (group.tag == GroupTag::Real) {
    // Convert the accumulated element back to the pseudo-orthonormal frame.
    const Eigen::VectorXcd phi = frame_factors(group.sig);
    Eigen::MatrixXcd native(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) native(i, j) = g_acc(i, j) * phi[j] / phi[i];
    }
    res.group_element = GroupElement{GroupTag::Real, group.sig, native.real().cast<Complex>()};
  } else {
    res.group_element = GroupElement{GroupTag::Complex, group.sig, g_acc};
  }
  return res;
}

ClosedVerdict orbit_closed(const Tensor& v, const GroupSpec& group, const FlowConfig& config) {
  FlowResult r = norm_flow(v, group, config);
  if (r.verdict == FlowVerdict::MaxIter) {
    throw IndeterminateError("orbit_closed: flow exhausted " + std::to_string(config.max_iter) +
                             " iterations without verdict; raise max_iter");
  }
  ClosedVerdict out;
  out.closed = (r.verdict == FlowVerdict::ConvergedInOrbit);
  out.caveat = out.closed ? "" : "heuristic";
  out.certificate = std::move(r);
  return out;
}

Tensor orbit_limit(const Tensor& v, const GroupSpec& group, const FlowConfig& config) {
  FlowResult r = norm_flow(v, group, config);
  if (r.verdict == FlowVerdict::ConvergedInOrbit) {
    throw ContractError("orbit_limit: orbit is closed, no boundary limit exists");
  }
  if (r.verdict == FlowVerdict::MaxIter) {
    throw IndeterminateError("orbit_limit: flow exhausted iterations without verdict");
  }
  Tensor alpha = r.minimizer;
  const double f0 = herm(v, v).real();
  const double f_final = herm(alpha, alpha).real();
  if (f_final <= 1e-16 * f0 || std::sqrt(f_final) <= 1e-12 * (1.0 + std::sqrt(f0))) {
    // Norm collapsed: the unique closed orbit in the closure is {0}.
    alpha = Tensor::zero(alpha.shape);
  } else {
    const double floor = 1e-12 * alpha.max_abs();
    for (Complex& c : alpha.comps) {
      if (std::abs(c) < floor) c = Complex(0.0, 0.0);
    }
  }
  ClosedVerdict check = orbit_closed(alpha, group, config);
  if (!check.closed) {
    throw NumericError("orbit_limit: limit candidate failed the closed-orbit check");
  }
  return alpha;
}

namespace {

struct DescentToTarget {
  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd best_g;
};

/// Minimizes ||g.v1 - v2||_H^2 from the start element g0 over the given
/// directions; updates best distance/element found. Returns early when the
/// distance drops below `accept`.
void descend_distance(const Tensor& v1, const Tensor& v2,
                      const std::vector<Eigen::MatrixXcd>& basis, const Eigen::MatrixXcd& g0,
                      const FlowConfig& config, double accept, DescentToTarget& out) {
  const int n = v1.shape.dimension;
  Eigen::MatrixXcd g_acc = g0;
  Tensor w = apply_frame_matrix(g0, v1);
  auto phi = [&v2](const Tensor& t) {
    Tensor d = t - v2;
    return herm(d, d).real();
  };
  double f = phi(w);
  const int cap = std::min(config.max_iter, 2000);
  double eta_next = config.step_init;
  for (int iter = 0; iter < cap; ++iter) {
    if (std::sqrt(f) < out.best) {
      out.best = std::sqrt(f);
      out.best_g = g_acc;
    }
    if (out.best < accept) return;
    const Tensor diff = w - v2;
    std::vector<double> grad(basis.size(), 0.0);
    double gmax = 0.0, slope = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      grad[i] = 2.0 * herm(act_algebra(basis[i], w), diff).real();
      gmax = std::max(gmax, std::abs(grad[i]));
      slope += grad[i] * grad[i];
    }
    if (gmax < config.grad_tol * (1.0 + f)) return;  // local minimum
    const Eigen::MatrixXcd dir = direction_matrix(grad, basis, n);
    auto step = armijo_step(w, dir, f, slope, eta_next, phi);
    if (!step) return;
    w = std::move(step->v_new);
    g_acc = step->element * g_acc;
    f = step->f_new;
    eta_next = 2.0 * step->eta;
  }
}

}  // namespace

IntersectResult orbit_intersection(const Tensor& v1, const Tensor& v2, const GroupSpec& group,
                                   const FlowConfig& config) {
  if (!(v1.shape == v2.shape)) throw DimensionError("orbit_intersection: shape mismatch");
  if (!orbit_closed(v1, group, config).closed || !orbit_closed(v2, group, config).closed) {
    throw ContractError("orbit_intersection: both orbits must be closed");
  }
  const CartanDecomposition cart = cartan_for(group);
  std::vector<Eigen::MatrixXcd> basis = frame_basis(cart.k_basis, group);
  for (const auto& x : frame_basis(cart.p_basis, group)) basis.push_back(x);

  const double accept = config.dist_tol * (1.0 + std::sqrt(herm(v2, v2).real()));
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);

  DescentToTarget best;
  const int n = group.dim();
  best.best_g = Eigen::MatrixXcd::Identity(n, n);
  for (const Eigen::MatrixXcd& rep_native : component_representatives(group)) {
    // Component representatives are diagonal sign flips, identical in both
    // frames, so they can be used directly on orthonormal-frame tensors.
    for (int r = 0; r < std::max(1, config.restarts); ++r) {
      Eigen::MatrixXcd g0 = rep_native;
      if (r > 0) {
        std::vector<double> coeffs(basis.size());
        for (double& c : coeffs) c = unif(rng);
        g0 = expm(direction_matrix(coeffs, basis, n)) * rep_native;
      }
      descend_distance(v1, v2, basis, g0, config, accept, best);
      if (best.best < accept) break;
    }
    if (best.best < accept) break;
  }

  IntersectResult out;
  out.distance = best.best;
  out.intersect = best.best < accept;
  if (group.tag == GroupTag::Real) {
    const Eigen::VectorXcd phi = frame_factors(group.sig);
    Eigen::MatrixXcd native(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) native(i, j) = best.best_g(i, j) * phi[j] / phi[i];
    }
    out.aligner = GroupElement{GroupTag::Real, group.sig, native.real().cast<Complex>()};
  } else {
    out.aligner = GroupElement{GroupTag::Complex, group.sig, best.best_g};
  }
  return out;
}

bool orbits_intersect(const Tensor& v1, const Tensor& v2, const GroupSpec& group,
                      const FlowConfig& config) {
  return orbit_intersection(v1, v2, group, config).intersect;
}

double k_orbit_distance(const Tensor& u, const Tensor& w, const GroupSpec& group,
                        const FlowConfig& config) {
  if (!(u.shape == w.shape)) throw DimensionError("k_orbit_distance: shape mismatch");
  const CartanDecomposition cart = cartan_for(group);
  const std::vector<Eigen::MatrixXcd> basis = frame_basis(cart.k_basis, group);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  DescentToTarget best;
  const int n = group.dim();
  best.best_g = Eigen::MatrixXcd::Identity(n, n);
  const double accept = 0.0;  // minimize as far as the engine can
  for (const Eigen::MatrixXcd& rep : k_component_representatives(group)) {
    for (int r = 0; r < std::max(1, config.restarts); ++r) {
      Eigen::MatrixXcd g0 = rep;
      if (r > 0 && !basis.empty()) {
        std::vector<double> coeffs(basis.size());
        for (double& c : coeffs) c = unif(rng);
        g0 = expm(direction_matrix(coeffs, basis, n)) * rep;
      }
      descend_distance(u, w, basis, g0, config, accept, best);
    }
  }
  return best.best;
}

}  // namespace wick
