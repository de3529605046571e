#include "wickrot/tensor.hpp"

#include <cmath>

namespace wick {

namespace {

std::size_t ipow(std::size_t base, int e) {
  std::size_t out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

void check_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (!(a.shape == b.shape)) throw DimensionError(std::string(what) + ": shape mismatch");
}

// Applies m to one slot of one block: out[..i..] = sum_j m(i,j) v[..j..].
void apply_slot(const Eigen::MatrixXcd& m, const Complex* in, Complex* out, int n, int rank,
                int slot) {
  const std::size_t outer = ipow(n, slot);
  const std::size_t inner = ipow(n, rank - slot - 1);
  const std::size_t slot_stride = inner;
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * n * inner;
    for (std::size_t in_off = 0; in_off < inner; ++in_off) {
      for (int i = 0; i < n; ++i) {
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) acc += m(i, j) * in[base + j * slot_stride + in_off];
        out[base + i * slot_stride + in_off] = acc;
      }
    }
  }
}

}  // namespace

std::size_t TensorShape::block_size(std::size_t b) const {
  return ipow(static_cast<std::size_t>(dimension), blocks[b].rank());
}

std::size_t TensorShape::total_size() const {
  std::size_t total = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) total += block_size(b);
  return total;
}

std::size_t TensorShape::block_offset(std::size_t b) const {
  std::size_t off = 0;
  for (std::size_t i = 0; i < b; ++i) off += block_size(i);
  return off;
}

Tensor Tensor::zero(const TensorShape& shape) {
  return Tensor{shape, std::vector<Complex>(shape.total_size(), Complex(0.0, 0.0))};
}

std::size_t Tensor::flat_index(std::size_t block, const int* idx, int rank) const {
  const int n = shape.dimension;
  std::size_t off = shape.block_offset(block);
  std::size_t pos = 0;
  for (int s = 0; s < rank; ++s) {
    if (idx[s] < 0 || idx[s] >= n) throw DimensionError("tensor index out of range");
    pos = pos * n + static_cast<std::size_t>(idx[s]);
  }
  return off + pos;
}

Complex& Tensor::at(std::size_t block, std::initializer_list<int> idx) {
  if (static_cast<int>(idx.size()) != shape.blocks[block].rank()) {
    throw DimensionError("tensor index rank mismatch");
  }
  return comps[flat_index(block, idx.begin(), static_cast<int>(idx.size()))];
}

Complex Tensor::at(std::size_t block, std::initializer_list<int> idx) const {
  return const_cast<Tensor*>(this)->at(block, idx);
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (const Complex& c : comps) m = std::max(m, std::abs(c));
  return m;
}

bool Tensor::all_finite() const {
  for (const Complex& c : comps) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

Tensor operator+(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "tensor sum");
  Tensor out = a;
  for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] += b.comps[i];
  return out;
}

Tensor operator-(const Tensor& a, const Tensor& b) {
  check_same_shape(a, b, "tensor difference");
  Tensor out = a;
  for (std::size_t i = 0; i < out.comps.size(); ++i) out.comps[i] -= b.comps[i];
  return out;
}

Tensor operator*(Complex s, const Tensor& a) {
  Tensor out = a;
  for (Complex& c : out.comps) c *= s;
  return out;
}

Tensor ExtendedInvolution::apply(const Tensor& v) const {
  if (!(v.shape == shape)) throw DimensionError("extended involution: shape mismatch");
  const int n = shape.dimension;
  Tensor cur = v;
  if (conjugates) {
    for (Complex& c : cur.comps) c = std::conj(c);
  }
  const Eigen::MatrixXcd contra = base.cast<Complex>();
  const Eigen::MatrixXcd cov = base.transpose().cast<Complex>();
  Tensor next = cur;
  for (std::size_t b = 0; b < shape.blocks.size(); ++b) {
    const BlockShape& bs = shape.blocks[b];
    Complex* data = cur.comps.data() + shape.block_offset(b);
    Complex* scratch = next.comps.data() + shape.block_offset(b);
    for (int s = 0; s < bs.rank(); ++s) {
      const Eigen::MatrixXcd& m = (s < bs.contravariant) ? contra : cov;
      apply_slot(m, data, scratch, n, bs.rank(), s);
      std::swap_ranges(data, data + shape.block_size(b), scratch);
    }
  }
  return cur;
}

Tensor act_group(const GroupElement& g, const Tensor& v) {
  if (g.sig.dim() != v.shape.dimension) throw DimensionError("act_group: dimension mismatch");
  // In the orthonormal frame g^{-T} = g for orthogonal g, so every slot
  // transforms with the same matrix.
  const Eigen::MatrixXcd m = g.frame_matrix();
  const int n = v.shape.dimension;
  Tensor cur = v;
  Tensor scratch = v;
  for (std::size_t b = 0; b < v.shape.blocks.size(); ++b) {
    const BlockShape& bs = v.shape.blocks[b];
    Complex* data = cur.comps.data() + v.shape.block_offset(b);
    Complex* tmp = scratch.comps.data() + v.shape.block_offset(b);
    for (int s = 0; s < bs.rank(); ++s) {
      apply_slot(m, data, tmp, n, bs.rank(), s);
      std::swap_ranges(data, data + v.shape.block_size(b), tmp);
    }
  }
  return cur;
}

Tensor act_algebra(const Eigen::MatrixXcd& x_frame, const Tensor& v) {
  if (x_frame.rows() != v.shape.dimension || x_frame.cols() != v.shape.dimension) {
    throw DimensionError("act_algebra: dimension mismatch");
  }
  const int n = v.shape.dimension;
  Tensor out = Tensor::zero(v.shape);
  Tensor term = v;
  for (std::size_t b = 0; b < v.shape.blocks.size(); ++b) {
    const BlockShape& bs = v.shape.blocks[b];
    const Complex* src = v.comps.data() + v.shape.block_offset(b);
    Complex* tmp = term.comps.data() + v.shape.block_offset(b);
    Complex* acc = out.comps.data() + v.shape.block_offset(b);
    for (int s = 0; s < bs.rank(); ++s) {
      apply_slot(x_frame, src, tmp, n, bs.rank(), s);
      for (std::size_t i = 0; i < v.shape.block_size(b); ++i) acc[i] += tmp[i];
    }
  }
  return out;
}

Complex tensor_inner_product(const Tensor& u, const Tensor& v) {
  check_same_shape(u, v, "tensor inner product");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < u.comps.size(); ++i) acc += u.comps[i] * v.comps[i];
  return acc;
}

Complex hermitian_form(const Tensor& u, const Tensor& v, const ExtendedInvolution& tau) {
  if (!tau.conjugates) {
    throw ContractError("hermitian_form: tau must be a conjugation (anti-linear)");
  }
  return tensor_inner_product(u, tau.apply(v));
}

double hermitian_norm2(const Tensor& v) {
  double acc = 0.0;
  for (const Complex& c : v.comps) acc += std::norm(c);
  return acc;
}

ExtendedInvolution extend_involution(const Eigen::MatrixXd& base, const TensorShape& shape) {
  if (base.rows() != shape.dimension || base.cols() != shape.dimension) {
    throw DimensionError("extend_involution: base dimension mismatch");
  }
  const double residual =
      (base * base - Eigen::MatrixXd::Identity(base.rows(), base.cols())).cwiseAbs().maxCoeff();
  if (residual > 1e-10) {
    throw ContractError("extend_involution: base is not an involution, residual " +
                        std::to_string(residual));
  }
  return ExtendedInvolution{base, shape, false};
}

ExtendedInvolution compact_conjugation(const TensorShape& shape) {
  return ExtendedInvolution{Eigen::MatrixXd::Identity(shape.dimension, shape.dimension), shape,
                            true};
}

std::pair<Tensor, Tensor> cartan_split(const Tensor& v, const ExtendedInvolution& t) {
  const Tensor tv = t.apply(v);
  const Complex half(0.5, 0.0);
  return {half * (v + tv), half * (v - tv)};
}

Tensor embed_real_slice(const Tensor& real_components, const Signature& sig) {
  if (real_components.shape.dimension != sig.dim()) {
    throw DimensionError("embed_real_slice: dimension mismatch");
  }
  const int n = sig.dim();
  Tensor out = real_components;
  for (std::size_t b = 0; b < out.shape.blocks.size(); ++b) {
    const BlockShape& bs = out.shape.blocks[b];
    const int rank = bs.rank();
    Complex* data = out.comps.data() + out.shape.block_offset(b);
    std::vector<int> idx(static_cast<std::size_t>(rank), 0);
    const std::size_t size = out.shape.block_size(b);
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t rem = flat;
      int minus_contra = 0, minus_cov = 0;
      for (int s = rank - 1; s >= 0; --s) {
        const int val = static_cast<int>(rem % n);
        rem /= n;
        if (val >= sig.p) {
          if (s < bs.contravariant) {
            ++minus_contra;
          } else {
            ++minus_cov;
          }
        }
      }
      // contravariant slot over a minus direction: factor i; covariant: -i.
      const int quarter_turns = ((minus_contra - minus_cov) % 4 + 4) % 4;
      static const Complex kI[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
      data[flat] *= kI[quarter_turns];
    }
  }
  return out;
}

std::pair<Tensor, double> restrict_to_slice(const Tensor& frame_tensor, const Signature& sig) {
  if (frame_tensor.shape.dimension != sig.dim()) {
    throw DimensionError("restrict_to_slice: dimension mismatch");
  }
  const int n = sig.dim();
  Tensor out = frame_tensor;
  double residual = 0.0;
  for (std::size_t b = 0; b < out.shape.blocks.size(); ++b) {
    const BlockShape& bs = out.shape.blocks[b];
    const int rank = bs.rank();
    Complex* data = out.comps.data() + out.shape.block_offset(b);
    const std::size_t size = out.shape.block_size(b);
    for (std::size_t flat = 0; flat < size; ++flat) {
      std::size_t rem = flat;
      int minus_contra = 0, minus_cov = 0;
      for (int s = rank - 1; s >= 0; --s) {
        const int val = static_cast<int>(rem % n);
        rem /= n;
        if (val >= sig.p) {
          if (s < bs.contravariant) {
            ++minus_contra;
          } else {
            ++minus_cov;
          }
        }
      }
      const int quarter_turns = ((minus_cov - minus_contra) % 4 + 4) % 4;  // inverse factors
      static const Complex kI[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
      data[flat] *= kI[quarter_turns];
      residual = std::max(residual, std::abs(data[flat].imag()));
      data[flat] = Complex(data[flat].real(), 0.0);
    }
  }
  return {out, residual};
}

}  // namespace wick
