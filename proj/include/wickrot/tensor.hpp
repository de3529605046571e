#pragma once

// Dense tensors over the tangent space at a point, the O(n,C) / O(p,q) action,
// extended involutions, and the bilinear / Hermitian forms on tensor space.
//
// Unless a function says otherwise, tensor components are stored in the
// orthonormal complex frame {y_a}. A real-slice tensor of signature (p,q)
// then carries a factor i per contravariant index >= p and -i per covariant
// index >= p relative to its real pseudo-orthonormal components
// (embed_real_slice / restrict_to_slice convert).

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wickrot/errors.hpp"
#include "wickrot/lie.hpp"
#include "wickrot/signature.hpp"

namespace wick {

/// Valence of one direct-sum block.
struct BlockShape {
  int contravariant = 0;
  int covariant = 0;

  int rank() const { return contravariant + covariant; }
  bool operator==(const BlockShape&) const = default;
};

/// Shape of a (possibly direct-sum) tensor space over an n-dim base.
struct TensorShape {
  int dimension = 0;
  std::vector<BlockShape> blocks;

  std::size_t block_size(std::size_t b) const;
  std::size_t total_size() const;
  std::size_t block_offset(std::size_t b) const;
  bool operator==(const TensorShape&) const = default;

  static TensorShape single(int dimension, int contravariant, int covariant) {
    return TensorShape{dimension, {BlockShape{contravariant, covariant}}};
  }
};

struct Tensor {
  TensorShape shape;
  std::vector<Complex> comps;  // concatenated row-major blocks

  static Tensor zero(const TensorShape& shape);

  Complex& at(std::size_t block, std::initializer_list<int> idx);
  Complex at(std::size_t block, std::initializer_list<int> idx) const;
  std::size_t flat_index(std::size_t block, const int* idx, int rank) const;

  double max_abs() const;
  bool all_finite() const;
};

Tensor operator+(const Tensor& a, const Tensor& b);
Tensor operator-(const Tensor& a, const Tensor& b);
Tensor operator*(Complex s, const Tensor& a);

/// Slot-wise extension of an n x n involution; with `conjugates` set the map
/// is anti-linear (components conjugated before the slot action), which is the
/// conjugation map of a tensor real slice rather than a linear involution.
struct ExtendedInvolution {
  Eigen::MatrixXd base;
  TensorShape shape;
  bool conjugates = false;

  Tensor apply(const Tensor& v) const;
};

Tensor act_group(const GroupElement& g, const Tensor& v);

/// Leibniz (differential) action of an orthonormal-frame algebra element.
Tensor act_algebra(const Eigen::MatrixXcd& x_frame, const Tensor& v);

/// Holomorphic inner product on tensors: plain bilinear component sum.
Complex tensor_inner_product(const Tensor& u, const Tensor& v);

/// H(u,v) = <u, tau(v)> with tau applied anti-linearly. For the compact-slice
/// conjugation (identity base) this is the positive definite Hermitian form.
Complex hermitian_form(const Tensor& u, const Tensor& v, const ExtendedInvolution& tau);

/// H(v,v) for the compact-slice conjugation; real and >= 0.
double hermitian_norm2(const Tensor& v);

ExtendedInvolution extend_involution(const Eigen::MatrixXd& base, const TensorShape& shape);

/// The anti-linear conjugation fixing the compact tensor slice (plain
/// componentwise conjugation in the orthonormal frame).
ExtendedInvolution compact_conjugation(const TensorShape& shape);

/// v = v_+ + v_- with T(v_+) = v_+, T(v_-) = -v_-; exact by construction.
std::pair<Tensor, Tensor> cartan_split(const Tensor& v, const ExtendedInvolution& t);

/// Real pseudo-orthonormal components of signature sig -> orthonormal frame.
Tensor embed_real_slice(const Tensor& real_components, const Signature& sig);

/// Inverse of embed_real_slice; returns the real-frame tensor and the largest
/// imaginary residue left after stripping the frame factors.
std::pair<Tensor, double> restrict_to_slice(const Tensor& frame_tensor, const Signature& sig);

}  // namespace wick
