#include "wickrot/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace wick {

namespace {

struct SignedIdx {
  std::array<int, 4> idx;
  int sign;
};

// Orbit of (a,b,c,d) under the pair antisymmetries and the pair exchange.
std::vector<SignedIdx> symmetry_orbit(const std::array<int, 4>& idx) {
  std::vector<SignedIdx> orbit;
  const auto push = [&orbit](std::array<int, 4> v, int s) {
    orbit.push_back(SignedIdx{v, s});
  };
  const auto [a, b, c, d] = idx;
  push({a, b, c, d}, 1);
  push({b, a, c, d}, -1);
  push({a, b, d, c}, -1);
  push({b, a, d, c}, 1);
  push({c, d, a, b}, 1);
  push({d, c, a, b}, -1);
  push({c, d, b, a}, -1);
  push({d, c, b, a}, 1);
  return orbit;
}

Eigen::VectorXi sorted_metric(const Eigen::VectorXi& diag, std::vector<int>& perm) {
  const int n = static_cast<int>(diag.size());
  perm.clear();
  for (int i = 0; i < n; ++i) {
    if (diag[i] > 0) perm.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    if (diag[i] < 0) perm.push_back(i);
  }
  Eigen::VectorXi out(n);
  for (int k = 0; k < n; ++k) out[k] = diag[perm[k]];
  return out;
}

Tensor permute_covariant(const Tensor& t, const std::vector<int>& perm) {
  const int n = t.shape.dimension;
  Tensor out = Tensor::zero(t.shape);
  for (std::size_t b = 0; b < t.shape.blocks.size(); ++b) {
    const int rank = t.shape.blocks[b].rank();
    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    std::vector<int> src(static_cast<std::size_t>(rank), 0);
    const std::size_t size = t.shape.block_size(b);
    const std::size_t off = t.shape.block_offset(b);
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t rem = flat;
      for (int s = rank - 1; s >= 0; --s) {
        idx[s] = static_cast<int>(rem % n);
        rem /= n;
      }
      for (int s = 0; s < rank; ++s) src[s] = perm[idx[s]];
      out.comps[off + flat] = t.comps[off + t.flat_index(b, src.data(), rank) -
                                      t.shape.block_offset(b)];
    }
  }
  return out;
}

}  // namespace

Tensor riemann_from_components(int dimension, const std::vector<RiemannEntry>& entries) {
  if (dimension < 1) throw DimensionError("riemann_from_components: dimension must be >= 1");
  Tensor t = Tensor::zero(TensorShape::single(dimension, 0, 4));
  std::vector<bool> set(t.comps.size(), false);
  for (const RiemannEntry& e : entries) {
    for (int v : e.idx) {
      if (v < 0 || v >= dimension) {
        throw ParseError("riemann component index out of range: " + std::to_string(v));
      }
    }
    for (const SignedIdx& s : symmetry_orbit(e.idx)) {
      const std::size_t flat = t.flat_index(0, s.idx.data(), 4);
      const double val = s.sign * e.value;
      if (set[flat] && std::abs(t.comps[flat].real() - val) > 1e-12) {
        throw ParseError("conflicting riemann representatives at index (" +
                         std::to_string(s.idx[0]) + "," + std::to_string(s.idx[1]) + "," +
                         std::to_string(s.idx[2]) + "," + std::to_string(s.idx[3]) + ")");
      }
      t.comps[flat] = Complex(val, 0.0);
      set[flat] = true;
    }
  }
  return t;
}

double riemann_symmetry_residual(const Tensor& riemann) {
  const int n = riemann.shape.dimension;
  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const Complex r = riemann.at(0, {a, b, c, d});
          worst = std::max(worst, std::abs(r + riemann.at(0, {b, a, c, d})));
          worst = std::max(worst, std::abs(r + riemann.at(0, {a, b, d, c})));
          worst = std::max(worst, std::abs(r - riemann.at(0, {c, d, a, b})));
        }
      }
    }
  }
  return worst;
}

BianchiCheck first_bianchi_residual(const Tensor& riemann) {
  const int n = riemann.shape.dimension;
  BianchiCheck out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          const Complex cyc = riemann.at(0, {a, b, c, d}) + riemann.at(0, {a, c, d, b}) +
                              riemann.at(0, {a, d, b, c});
          if (std::abs(cyc) > out.residual) {
            out.residual = std::abs(cyc);
            out.worst_idx = {a, b, c, d};
          }
        }
      }
    }
  }
  return out;
}

CurvatureBundle constant_curvature_block(int dim, double curvature, const Signature& sig) {
  if (dim < 2) throw DimensionError("constant_curvature_block: dimension must be >= 2");
  if (sig.dim() != dim) throw DimensionError("constant_curvature_block: signature mismatch");
  CurvatureBundle out;
  out.metric = MetricPoint::from_signature(sig);
  out.riemann = Tensor::zero(TensorShape::single(dim, 0, 4));
  const Eigen::VectorXi g = out.metric.metric_diag;
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      for (int c = 0; c < dim; ++c) {
        for (int d = 0; d < dim; ++d) {
          const double gac = (a == c) ? static_cast<double>(g[a]) : 0.0;
          const double gbd = (b == d) ? static_cast<double>(g[b]) : 0.0;
          const double gad = (a == d) ? static_cast<double>(g[a]) : 0.0;
          const double gbc = (b == c) ? static_cast<double>(g[b]) : 0.0;
          out.riemann.at(0, {a, b, c, d}) = Complex(curvature * (gac * gbd - gad * gbc), 0.0);
        }
      }
    }
  }
  return out;
}

CurvatureBundle direct_sum_metric(const CurvatureBundle& a, const CurvatureBundle& b) {
  const int na = a.metric.signature.dim();
  const int nb = b.metric.signature.dim();
  const int n = na + nb;

  Eigen::VectorXi diag(n);
  diag.head(na) = a.metric.metric_diag;
  diag.tail(nb) = b.metric.metric_diag;

  Tensor riem = Tensor::zero(TensorShape::single(n, 0, 4));
  auto copy_block = [&riem](const Tensor& src, int offset, int m) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          for (int l = 0; l < m; ++l) {
            riem.at(0, {i + offset, j + offset, k + offset, l + offset}) =
                src.at(0, {i, j, k, l});
          }
        }
      }
    }
  };
  copy_block(a.riemann, 0, na);
  copy_block(b.riemann, na, nb);

  if (!a.derivatives.empty() || !b.derivatives.empty()) {
    throw ContractError("direct_sum_metric: derivative tensors on summands not supported");
  }

  std::vector<int> perm;
  const Eigen::VectorXi sorted = sorted_metric(diag, perm);
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    if (sorted[i] > 0) ++plus;
  }
  CurvatureBundle out;
  out.metric = MetricPoint{Signature{plus, n - plus}, sorted};
  out.riemann = permute_covariant(riem, perm);
  return out;
}

DerivedCurvature derived_curvature(const CurvatureBundle& bundle) {
  const int n = bundle.metric.signature.dim();
  const Eigen::VectorXi g = bundle.metric.metric_diag;
  DerivedCurvature out;
  out.ricci = Tensor::zero(TensorShape::single(n, 0, 2));
  for (int b = 0; b < n; ++b) {
    for (int d = 0; d < n; ++d) {
      Complex acc(0.0, 0.0);
      for (int a = 0; a < n; ++a) {
        acc += static_cast<double>(g[a]) * bundle.riemann.at(0, {a, b, a, d});
      }
      out.ricci.at(0, {b, d}) = acc;
    }
  }
  Complex scal(0.0, 0.0);
  for (int b = 0; b < n; ++b) scal += static_cast<double>(g[b]) * out.ricci.at(0, {b, b});
  out.scalar = scal.real();

  if (n >= 3) {
    Tensor weyl = Tensor::zero(TensorShape::single(n, 0, 4));
    const double cn = 1.0 / (n - 2);
    const double sn = out.scalar / ((n - 1.0) * (n - 2.0));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          for (int d = 0; d < n; ++d) {
            const double gac = (a == c) ? static_cast<double>(g[a]) : 0.0;
            const double gad = (a == d) ? static_cast<double>(g[a]) : 0.0;
            const double gbc = (b == c) ? static_cast<double>(g[b]) : 0.0;
            const double gbd = (b == d) ? static_cast<double>(g[b]) : 0.0;
            Complex v = bundle.riemann.at(0, {a, b, c, d});
            v -= cn * (gac * out.ricci.at(0, {b, d}) - gad * out.ricci.at(0, {b, c}) +
                       gbd * out.ricci.at(0, {a, c}) - gbc * out.ricci.at(0, {a, d}));
            v += sn * (gac * gbd - gad * gbc);
            weyl.at(0, {a, b, c, d}) = v;
          }
        }
      }
    }
    out.weyl = std::move(weyl);
  }
  return out;
}

CurvatureBundle anti_isometry(const CurvatureBundle& bundle) {
  const int n = bundle.metric.signature.dim();
  Eigen::VectorXi flipped = -bundle.metric.metric_diag;
  std::vector<int> perm;
  const Eigen::VectorXi sorted = sorted_metric(flipped, perm);
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    if (sorted[i] > 0) ++plus;
  }
  CurvatureBundle out;
  out.metric = MetricPoint{Signature{plus, n - plus}, sorted};
  out.riemann = permute_covariant(Complex(-1.0, 0.0) * bundle.riemann, perm);
  for (const Tensor& d : bundle.derivatives) {
    out.derivatives.push_back(permute_covariant(Complex(-1.0, 0.0) * d, perm));
  }
  out.label = bundle.label.empty() ? "" : bundle.label + "-antiisometric";
  return out;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"s2xs2", "lorentz_L", "neutral_N", "ppwave_vsi",
                                                 "flat"};
  return names;
}

CurvatureBundle catalog_metric(const std::string& name, std::optional<int> dim,
                               std::optional<Signature> sig) {
  if (name == "s2xs2") {
    CurvatureBundle s2 = constant_curvature_block(2, 1.0, Signature{2, 0});
    CurvatureBundle out = direct_sum_metric(s2, s2);
    out.label = "s2xs2";
    return out;
  }
  if (name == "lorentz_L") {
    CurvatureBundle s2 = constant_curvature_block(2, 1.0, Signature{2, 0});
    CurvatureBundle ds2 = constant_curvature_block(2, 1.0, Signature{1, 1});
    CurvatureBundle out = direct_sum_metric(s2, ds2);
    out.label = "lorentz_L";
    return out;
  }
  if (name == "neutral_N") {
    // -g_{H^2} is the constant-curvature block K = +1 of signature (0,2).
    CurvatureBundle s2 = constant_curvature_block(2, 1.0, Signature{2, 0});
    CurvatureBundle mh2 = constant_curvature_block(2, 1.0, Signature{0, 2});
    CurvatureBundle out = direct_sum_metric(s2, mh2);
    out.label = "neutral_N";
    return out;
  }
  if (name == "ppwave_vsi") {
    // Type N components of a pp-wave in the frame (x, y, z, t), from the null
    // frame u = (z+t)/sqrt2, v = (z-t)/sqrt2 with R_uxux = 1, R_uyuy = -1.
    CurvatureBundle out;
    out.metric = MetricPoint::from_signature(Signature{3, 1});
    out.riemann = riemann_from_components(
        4, {{{2, 0, 2, 0}, 0.5},
            {{2, 0, 3, 0}, 0.5},
            {{3, 0, 3, 0}, 0.5},
            {{2, 1, 2, 1}, -0.5},
            {{2, 1, 3, 1}, -0.5},
            {{3, 1, 3, 1}, -0.5}});
    out.label = "ppwave_vsi";
    return out;
  }
  if (name == "flat") {
    const int n = dim.value_or(4);
    const Signature s = sig.value_or(Signature{n, 0});
    if (s.dim() != n) throw DimensionError("flat: signature does not match dimension");
    CurvatureBundle out;
    out.metric = MetricPoint::from_signature(s);
    out.riemann = Tensor::zero(TensorShape::single(n, 0, 4));
    out.label = "flat";
    return out;
  }
  std::string names;
  for (const std::string& nm : catalog_names()) names += (names.empty() ? "" : ", ") + nm;
  throw Error("unknown catalog metric '" + name + "' (valid: " + names + ")");
}

Tensor flow_vector(const CurvatureBundle& bundle) {
  TensorShape shape;
  shape.dimension = bundle.metric.signature.dim();
  shape.blocks.push_back(BlockShape{0, 4});
  for (const Tensor& d : bundle.derivatives) {
    shape.blocks.push_back(d.shape.blocks.at(0));
  }
  Tensor joint = Tensor::zero(shape);
  std::copy(bundle.riemann.comps.begin(), bundle.riemann.comps.end(), joint.comps.begin());
  std::size_t off = bundle.riemann.comps.size();
  for (const Tensor& d : bundle.derivatives) {
    std::copy(d.comps.begin(), d.comps.end(), joint.comps.begin() + off);
    off += d.comps.size();
  }
  return embed_real_slice(joint, bundle.metric.signature);
}

void validate_bundle(const CurvatureBundle& bundle, double symmetry_tol, double bianchi_tol) {
  if (bundle.riemann.shape.dimension != bundle.metric.signature.dim()) {
    throw DimensionError("bundle: riemann dimension does not match metric");
  }
  const double sym = riemann_symmetry_residual(bundle.riemann);
  if (sym > symmetry_tol) {
    throw ParseError("riemann symmetry violation, residual " + std::to_string(sym));
  }
  const BianchiCheck bianchi = first_bianchi_residual(bundle.riemann);
  if (bianchi.residual > bianchi_tol) {
    throw ParseError("first Bianchi violation " + std::to_string(bianchi.residual) + " at (" +
                     std::to_string(bianchi.worst_idx[0]) + "," +
                     std::to_string(bianchi.worst_idx[1]) + "," +
                     std::to_string(bianchi.worst_idx[2]) + "," +
                     std::to_string(bianchi.worst_idx[3]) + ")");
  }
}

}  // namespace wick
