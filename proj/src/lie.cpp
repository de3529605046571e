#include "wickrot/lie.hpp"

#include <cmath>

namespace wick {

namespace {

Eigen::MatrixXd elementary(int n, int a, int b, double va, double vb) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(a, b) = va;
  m(b, a) = vb;
  return m;
}

bool is_finite(const Eigen::MatrixXcd& m) {
  return m.allFinite();
}

}  // namespace

Eigen::MatrixXcd GroupElement::frame_matrix() const {
  if (tag == GroupTag::Complex) return mat;
  const Eigen::VectorXcd phi = frame_factors(sig);
  Eigen::MatrixXcd out = mat;
  const int n = sig.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = phi[i] * mat(i, j) / phi[j];
  }
  return out;
}

double GroupElement::form_residual() const {
  const int n = sig.dim();
  Eigen::MatrixXcd g;
  if (tag == GroupTag::Real) {
    g = sig.metric_signs().cast<double>().cast<Complex>().asDiagonal();
  } else {
    g = Eigen::MatrixXcd::Identity(n, n);
  }
  return (mat.transpose() * g * mat - g).cwiseAbs().maxCoeff();
}

GroupElement GroupElement::inverse() const {
  GroupElement out = *this;
  out.mat = mat.inverse();
  return out;
}

GroupElement GroupElement::identity(GroupSpec g) {
  return GroupElement{g.tag, g.sig, Eigen::MatrixXcd::Identity(g.dim(), g.dim())};
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.tag != b.tag || a.sig != b.sig) {
    throw DimensionError("composing group elements of different groups");
  }
  return GroupElement{a.tag, a.sig, a.mat * b.mat};
}

OrthBasis basis_opq(const Signature& sig) {
  sig.validate();
  const int n = sig.dim();
  OrthBasis out{sig, {}};
  if (n < 2) return out;
  // Rotations within the + block, then within the - block, then boosts.
  for (int a = 0; a < sig.p; ++a) {
    for (int b = a + 1; b < sig.p; ++b) out.generators.push_back(elementary(n, a, b, 1.0, -1.0));
  }
  for (int a = sig.p; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) out.generators.push_back(elementary(n, a, b, 1.0, -1.0));
  }
  for (int a = 0; a < sig.p; ++a) {
    for (int b = sig.p; b < n; ++b) out.generators.push_back(elementary(n, a, b, 1.0, 1.0));
  }
  return out;
}

CartanDecomposition cartan_decompose(const OrthBasis& basis) {
  const int n = basis.signature.dim();
  CartanDecomposition out;
  out.signature = basis.signature;
  out.complex_group = false;
  out.theta = basis.signature.metric_signs().cast<double>().asDiagonal();
  for (const auto& x : basis.generators) {
    const Eigen::MatrixXd conj = out.theta * x * out.theta;
    if ((conj - x).cwiseAbs().maxCoeff() == 0.0) {
      out.k_basis.push_back(x.cast<Complex>());
    } else if ((conj + x).cwiseAbs().maxCoeff() == 0.0) {
      out.p_basis.push_back(x.cast<Complex>());
    } else {
      throw NumericError("generator is not a theta eigenvector");
    }
  }
  (void)n;
  return out;
}

CartanDecomposition complex_cartan(int n) {
  const Signature compact{n, 0};
  OrthBasis rot = basis_opq(compact);  // o(n): all antisymmetric
  CartanDecomposition out;
  out.signature = compact;
  out.complex_group = true;
  out.theta = Eigen::MatrixXd::Identity(n, n);
  for (const auto& x : rot.generators) {
    out.k_basis.push_back(x.cast<Complex>());
    out.p_basis.push_back(Complex(0.0, 1.0) * x.cast<Complex>());
  }
  return out;
}

CartanDecomposition cartan_for(const GroupSpec& group) {
  if (group.tag == GroupTag::Complex) return complex_cartan(group.dim());
  return cartan_decompose(basis_opq(group.sig));
}

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
  if (!is_finite(a)) throw NumericError("expm: non-finite input");
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw DimensionError("expm: square matrix required");

  // Pade degree 13 coefficients.
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  }
  const Eigen::MatrixXcd as = a / std::pow(2.0, squarings);

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd a2 = as * as;
  const Eigen::MatrixXcd a4 = a2 * a2;
  const Eigen::MatrixXcd a6 = a4 * a2;

  const Eigen::MatrixXcd u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 +
            b[1] * id);
  const Eigen::MatrixXcd v =
      a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

  Eigen::MatrixXcd r = (v - u).partialPivLu().solve(v + u);
  for (int s = 0; s < squarings; ++s) r = r * r;
  if (!is_finite(r)) throw NumericError("expm: non-finite result");
  return r;
}

GroupElement exp_one_param(const Eigen::MatrixXcd& x, double t, const GroupSpec& group) {
  if (!std::isfinite(t) || !is_finite(x)) throw NumericError("exp_one_param: non-finite input");
  if (x.rows() != group.dim() || x.cols() != group.dim()) {
    throw DimensionError("exp_one_param: generator dimension mismatch");
  }
  GroupElement out{group.tag, group.sig, expm(t * x)};
  if (group.tag == GroupTag::Real) out.mat = out.mat.real().cast<Complex>();
  return out;
}

Eigen::MatrixXd conjugate_involution(const Eigen::MatrixXd& theta, const GroupElement& g) {
  const Eigen::MatrixXcd gm = g.mat;
  const Eigen::MatrixXcd conj = gm * theta.cast<Complex>() * gm.inverse();
  if (conj.imag().cwiseAbs().maxCoeff() > 1e-9) {
    throw NumericError("conjugate_involution: result not real");
  }
  Eigen::MatrixXd out = conj.real();
  const double invol_residual =
      (out * out - Eigen::MatrixXd::Identity(out.rows(), out.cols())).cwiseAbs().maxCoeff();
  if (invol_residual > 1e-9) {
    throw NumericError("conjugate_involution: result fails to square to identity, residual " +
                       std::to_string(invol_residual));
  }
  return out;
}

Eigen::VectorXcd frame_factors(const Signature& sig) {
  const int n = sig.dim();
  Eigen::VectorXcd phi(n);
  for (int a = 0; a < n; ++a) phi[a] = (a < sig.p) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
  return phi;
}

Eigen::MatrixXcd to_orthonormal_frame(const Eigen::MatrixXd& x_eframe, const Signature& sig) {
  const Eigen::VectorXcd phi = frame_factors(sig);
  const int n = sig.dim();
  if (x_eframe.rows() != n || x_eframe.cols() != n) {
    throw DimensionError("to_orthonormal_frame: dimension mismatch");
  }
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = phi[i] * x_eframe(i, j) / phi[j];
  }
  return out;
}

std::vector<Eigen::MatrixXcd> component_representatives(const GroupSpec& group) {
  const int n = group.dim();
  std::vector<Eigen::MatrixXcd> reps;
  reps.push_back(Eigen::MatrixXcd::Identity(n, n));
  auto flip = [n](int axis) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n);
    m(axis, axis) = -1.0;
    return m;
  };
  if (group.tag == GroupTag::Complex) {
    reps.push_back(flip(0));
    return reps;
  }
  const Signature s = group.sig;
  if (s.p > 0) reps.push_back(flip(0));
  if (s.q > 0) reps.push_back(flip(n - 1));
  if (s.p > 0 && s.q > 0) reps.push_back(flip(0) * flip(n - 1));
  return reps;
}

std::vector<Eigen::MatrixXcd> k_component_representatives(const GroupSpec& group) {
  // Block-preserving flips lie in K for the real group; O(n) itself for the
  // complex group's maximal compact.
  return component_representatives(group);
}

}  // namespace wick
