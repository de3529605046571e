#include "wickrot/classify.hpp"

#include <algorithm>
#include <cmath>

namespace wick {

namespace {

double hnorm(const Tensor& t) { return std::sqrt(hermitian_norm2(t)); }

/// tau-split of an orthonormal-frame tensor (componentwise real/imag parts).
std::pair<Tensor, Tensor> compact_split(const Tensor& v) {
  return cartan_split(v, compact_conjugation(v.shape));
}

Tensor extract_block(const Tensor& joint, std::size_t b) {
  Tensor out = Tensor::zero(TensorShape{joint.shape.dimension, {joint.shape.blocks[b]}});
  const std::size_t off = joint.shape.block_offset(b);
  std::copy(joint.comps.begin() + off, joint.comps.begin() + off + joint.shape.block_size(b),
            out.comps.begin());
  return out;
}

struct InvariantDistances {
  double relative = 0.0;     // per-component, scale-guarded
  double degree_root = 0.0;  // max |delta|^(1/degree)
};

InvariantDistances invariant_distances(const InvariantVector& a, const InvariantVector& b) {
  if (a.values.size() != b.values.size()) {
    throw DimensionError("invariant vectors of different lengths");
  }
  InvariantDistances out;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double diff = std::abs(a.values[i] - b.values[i]);
    const double scale = 1.0 + std::max(std::abs(a.values[i]), std::abs(b.values[i]));
    out.relative = std::max(out.relative, diff / scale);
    out.degree_root =
        std::max(out.degree_root, std::pow(diff, 1.0 / a.words[i].degree));
  }
  return out;
}

/// Invariants of a flow-vector tensor pulled back to its real slice.
InvariantVector invariants_of_embedded(const Tensor& frame_tensor, const MetricPoint& metric,
                                       const std::vector<ContractionWord>& words) {
  auto [real_tensor, residual] = restrict_to_slice(frame_tensor, metric.signature);
  (void)residual;  // flows over the real group stay in the slice
  Tensor riem = extract_block(real_tensor, 0);
  std::vector<Tensor> derivs;
  for (std::size_t b = 1; b < real_tensor.shape.blocks.size(); ++b) {
    derivs.push_back(extract_block(real_tensor, b));
  }
  return evaluate_invariants_on(riem, derivs, metric.metric_diag, words);
}

}  // namespace

const char* to_string(TensorSubject s) {
  return s == TensorSubject::Riemann ? "riemann" : "weyl";
}

const char* to_string(WickRelation r) {
  switch (r) {
    case WickRelation::WickRotated: return "wick-rotated";
    case WickRelation::NotWickRotated: return "not-wick-rotated";
    case WickRelation::Indeterminate: return "indeterminate";
  }
  return "?";
}

PurityReport classify_purity(const CurvatureBundle& bundle, TensorSubject subject,
                             const FlowConfig& config, double residual_tol) {
  validate_bundle(bundle);
  const Signature sig = bundle.metric.signature;
  Tensor subject_tensor = bundle.riemann;
  if (subject == TensorSubject::Weyl) {
    DerivedCurvature derived = derived_curvature(bundle);
    if (!derived.weyl) {
      throw DimensionError("classify_purity: Weyl tensor needs dimension >= 3");
    }
    subject_tensor = *derived.weyl;
  }

  PurityReport report;
  report.subject = subject;
  report.residual_tol = residual_tol;

  const Tensor v = embed_real_slice(subject_tensor, sig);
  report.flow = norm_flow(v, GroupSpec::real(sig), config);

  if (report.flow.verdict == FlowVerdict::MaxIter) {
    report.indeterminate = true;
    return report;
  }
  if (report.flow.verdict == FlowVerdict::BoundaryLimit) {
    // A tensor fixed (or negated) by an inner Cartan involution is minimal,
    // so a non-closed orbit rules both verdicts out.
    return report;
  }

  const Tensor& minimizer = report.flow.minimizer;
  const auto [x_plus, x_minus] = compact_split(minimizer);
  const double scale = hnorm(minimizer);
  if (scale == 0.0) {
    report.plus_residual = 0.0;
    report.minus_residual = 0.0;
  } else {
    report.plus_residual = hnorm(x_plus) / scale;
    report.minus_residual = hnorm(x_minus) / scale;
  }
  if (report.minus_residual < residual_tol) report.verdict.insert(Purity::Electric);
  if (report.plus_residual < residual_tol) report.verdict.insert(Purity::Magnetic);
  if (!report.verdict.empty()) {
    const Eigen::MatrixXd theta0 = sig.metric_signs().cast<double>().asDiagonal();
    report.witness = conjugate_involution(theta0, report.flow.group_element.inverse());
  }
  return report;
}

WickVerdict wick_check(const CurvatureBundle& a, const CurvatureBundle& b,
                       const FlowConfig& config, double invariant_tol) {
  if (a.metric.signature.dim() != b.metric.signature.dim()) {
    throw DimensionError("wick_check: bundles of different dimension");
  }
  if (a.derivatives.size() != b.derivatives.size()) {
    throw DimensionError("wick_check: bundles carry different derivative orders");
  }
  validate_bundle(a);
  validate_bundle(b);
  const int n = a.metric.signature.dim();

  WickVerdict out;
  out.invariant_tol = invariant_tol;
  out.max_degree = 3;

  const std::vector<ContractionWord> words = generate_contractions(out.max_degree, a);
  const InvariantVector inv_a = evaluate_invariants(a, words);
  const InvariantVector inv_b = evaluate_invariants(b, words);
  const InvariantDistances dist = invariant_distances(inv_a, inv_b);
  out.relative_distance = dist.relative;
  out.invariant_distance = dist.degree_root;

  if (dist.relative >= invariant_tol) {
    out.relation = WickRelation::NotWickRotated;
    return out;
  }

  const Tensor va = flow_vector(a);
  const Tensor vb = flow_vector(b);
  out.closure_a = orbit_closed(va, GroupSpec::real(a.metric.signature), config);
  out.closure_b = orbit_closed(vb, GroupSpec::real(b.metric.signature), config);

  if (out.closure_a->closed && out.closure_b->closed) {
    const IntersectResult res =
        orbit_intersection(va, vb, GroupSpec::complex_group(n), config);
    out.alignment_distance = res.distance;
    if (res.intersect) {
      out.relation = WickRelation::WickRotated;
      out.alignment = res.aligner;
    } else {
      // Equal invariants over a proxy family plus an incomplete search:
      // neither verdict can be certified.
      out.relation = WickRelation::Indeterminate;
      out.caveats.push_back("intersection-search-exhausted");
    }
    return out;
  }

  // Non-closed orbit(s): only the unique closed orbits in the closures can be
  // compared pointwise.
  out.relation = WickRelation::Indeterminate;
  out.caveats.push_back("non-closed-orbit: boundary-limit comparison only");
  const Tensor alpha_a = out.closure_a->closed
                             ? out.closure_a->certificate.minimizer
                             : orbit_limit(va, GroupSpec::real(a.metric.signature), config);
  const Tensor alpha_b = out.closure_b->closed
                             ? out.closure_b->certificate.minimizer
                             : orbit_limit(vb, GroupSpec::real(b.metric.signature), config);
  WickVerdict::LimitComparison lim;
  const InvariantVector lim_inv_a = invariants_of_embedded(alpha_a, a.metric, words);
  const InvariantVector lim_inv_b = invariants_of_embedded(alpha_b, b.metric, words);
  lim.invariant_rel_distance = invariant_distances(lim_inv_a, lim_inv_b).relative;
  const IntersectResult lim_res =
      orbit_intersection(alpha_a, alpha_b, GroupSpec::complex_group(n), config);
  lim.distance = lim_res.distance;
  lim.wick_rotated = lim_res.intersect && lim.invariant_rel_distance < invariant_tol;
  out.limits = lim;
  return out;
}

WickSplit wick_split(const CurvatureBundle& a, const CurvatureBundle& b,
                     const FlowConfig& config) {
  const WickVerdict verdict = wick_check(a, b, config);
  if (verdict.relation != WickRelation::WickRotated) {
    throw ContractError(std::string("wick_split: bundles are not wick-rotated (") +
                        to_string(verdict.relation) + ")");
  }

  WickSplit out;
  const Signature sa = a.metric.signature;
  const Signature sb = b.metric.signature;
  out.flow_a = norm_flow(embed_real_slice(a.riemann, sa), GroupSpec::real(sa), config);
  out.flow_b = norm_flow(embed_real_slice(b.riemann, sb), GroupSpec::real(sb), config);
  if (out.flow_a.verdict != FlowVerdict::ConvergedInOrbit ||
      out.flow_b.verdict != FlowVerdict::ConvergedInOrbit) {
    throw ContractError("wick_split: Riemann flow did not converge in orbit");
  }

  auto pull_back_split = [](const FlowResult& flow, const Signature& sig, Tensor& plus,
                            Tensor& minus) {
    const auto [x_plus, x_minus] = compact_split(flow.minimizer);
    const GroupElement g_inv = flow.group_element.inverse();
    plus = restrict_to_slice(act_group(g_inv, x_plus), sig).first;
    minus = restrict_to_slice(act_group(g_inv, x_minus), sig).first;
  };
  pull_back_split(out.flow_a, sa, out.a_plus, out.a_minus);
  pull_back_split(out.flow_b, sb, out.b_plus, out.b_minus);

  const Eigen::MatrixXd theta_a = sa.metric_signs().cast<double>().asDiagonal();
  const Eigen::MatrixXd theta_b = sb.metric_signs().cast<double>().asDiagonal();
  out.witness_a = conjugate_involution(theta_a, out.flow_a.group_element.inverse());
  out.witness_b = conjugate_involution(theta_b, out.flow_b.group_element.inverse());

  // Cross-pairing: the plus parts (and minus parts) must carry identical
  // invariants across the rotation.
  const std::vector<ContractionWord> words = generate_contractions(3);
  const auto inv = [&words](const Tensor& t, const MetricPoint& m) {
    return evaluate_invariants_on(t, {}, m.metric_diag, words);
  };
  const double plus_dist =
      invariant_distances(inv(out.a_plus, a.metric), inv(out.b_plus, b.metric)).relative;
  const double minus_dist =
      invariant_distances(inv(out.a_minus, a.metric), inv(out.b_minus, b.metric)).relative;
  out.cross_pair_residual = std::max(plus_dist, minus_dist);
  if (out.cross_pair_residual >= 1e-8) {
    throw NumericError("wick_split: paired split invariants disagree, residual " +
                       std::to_string(out.cross_pair_residual));
  }
  return out;
}

}  // namespace wick
