#include "wickrot/signature.hpp"

#include <cmath>

namespace wick {

void Signature::validate() const {
  if (p < 0 || q < 0 || p + q < 1) {
    throw DimensionError("signature (" + std::to_string(p) + "," + std::to_string(q) +
                         ") invalid: need p,q >= 0 and p+q >= 1");
  }
}

Eigen::VectorXi Signature::metric_signs() const {
  validate();
  Eigen::VectorXi s(dim());
  for (int i = 0; i < dim(); ++i) s[i] = (i < p) ? 1 : -1;
  return s;
}

Eigen::MatrixXd ConjugationMap::matrix() const {
  return signs.cast<double>().asDiagonal();
}

Eigen::VectorXcd ConjugationMap::apply(const Eigen::VectorXcd& z) const {
  if (z.size() != signs.size()) {
    throw DimensionError("conjugation map dimension " + std::to_string(signs.size()) +
                         " applied to vector of length " + std::to_string(z.size()));
  }
  Eigen::VectorXcd out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out[i] = static_cast<double>(signs[i]) * std::conj(z[i]);
  }
  return out;
}

std::vector<Eigen::VectorXcd> ConjugationMap::fixed_point_basis() const {
  const int n = signature.dim();
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(n);
  for (int a = 0; a < n; ++a) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e[a] = (a < signature.p) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
    basis.push_back(e);
  }
  return basis;
}

Complex standard_form_eval(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  if (x.size() == 0 || x.size() != y.size()) {
    throw DimensionError("standard form needs two vectors of equal length >= 1, got " +
                         std::to_string(x.size()) + " and " + std::to_string(y.size()));
  }
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

ConjugationMap make_conjugation(const Signature& sig) {
  sig.validate();
  return ConjugationMap{sig, sig.metric_signs()};
}

RealSliceCheck is_real_slice(const std::vector<Eigen::VectorXcd>& basis) {
  if (basis.empty()) throw RankError("empty basis");
  const Eigen::Index n = basis.front().size();
  const int m = static_cast<int>(basis.size());
  for (const auto& v : basis) {
    if (v.size() != n) throw DimensionError("basis vectors of mixed lengths");
  }

  // Independence over R: stack real and imaginary parts.
  Eigen::MatrixXd real_stack(2 * n, m);
  for (int j = 0; j < m; ++j) {
    real_stack.col(j).head(n) = basis[j].real();
    real_stack.col(j).tail(n) = basis[j].imag();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(real_stack);
  if (qr.rank() < m) throw RankError("basis vectors linearly dependent over R");

  Eigen::MatrixXcd gram(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram(i, j) = standard_form_eval(basis[i], basis[j]);
  }

  RealSliceCheck out;
  out.gram_imag_max = gram.imag().cwiseAbs().maxCoeff();
  const double entry_max = gram.cwiseAbs().maxCoeff();

  const Eigen::MatrixXd gram_re = gram.real();
  const double det = gram_re.determinant();
  out.det_ratio = (entry_max > 0.0) ? std::abs(det) / std::pow(entry_max, m) : 0.0;

  constexpr double kDegenerateTol = 1e-10;  // scale-free: |det| vs (max entry)^m
  constexpr double kRealTol = 1e-10;
  if (out.gram_imag_max > kRealTol * (1.0 + entry_max) || out.det_ratio <= kDegenerateTol) {
    out.is_real_slice = false;
    return out;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_re);
  const double eig_scale = es.eigenvalues().cwiseAbs().maxCoeff();
  int plus = 0, minus = 0;
  for (int i = 0; i < m; ++i) {
    const double lam = es.eigenvalues()[i];
    if (lam > kDegenerateTol * eig_scale) {
      ++plus;
    } else if (lam < -kDegenerateTol * eig_scale) {
      ++minus;
    }
  }
  if (plus + minus < m) {  // zero eigenvalue slipped past the det test
    out.is_real_slice = false;
    return out;
  }
  out.is_real_slice = true;
  out.signature = Signature{plus, minus};
  return out;
}

CompatibleTriple build_compatible_triple(const Signature& a, const Signature& b) {
  a.validate();
  b.validate();
  if (a.dim() != b.dim()) {
    throw DimensionError("compatible triple needs equal dimensions, got " +
                         std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
  return CompatibleTriple{make_conjugation(a), make_conjugation(b),
                          make_conjugation(Signature{a.dim(), 0})};
}

Eigen::MatrixXi conjugation_commutator(const ConjugationMap& a, const ConjugationMap& b) {
  if (a.signs.size() != b.signs.size()) throw DimensionError("commutator dimension mismatch");
  const Eigen::Index n = a.signs.size();
  Eigen::MatrixXi ma = Eigen::MatrixXi::Zero(n, n);
  Eigen::MatrixXi mb = Eigen::MatrixXi::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    ma(i, i) = a.signs[i];
    mb(i, i) = b.signs[i];
  }
  return ma * mb - mb * ma;
}

}  // namespace wick
