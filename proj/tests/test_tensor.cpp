#include "doctest.h"

#include <cmath>
#include <random>

#include "wickrot/tensor.hpp"

using namespace wick;

namespace {

const Complex kI(0.0, 1.0);

Tensor vector_tensor(std::initializer_list<Complex> vals) {
  Tensor t = Tensor::zero(TensorShape::single(static_cast<int>(vals.size()), 1, 0));
  std::size_t i = 0;
  for (const Complex& c : vals) t.comps[i++] = c;
  return t;
}

GroupElement complex_element(const Eigen::MatrixXcd& m) {
  return GroupElement{GroupTag::Complex, Signature{static_cast<int>(m.rows()), 0}, m};
}

Tensor random_tensor(const TensorShape& shape, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Tensor t = Tensor::zero(shape);
  for (Complex& c : t.comps) c = Complex(unif(rng), unif(rng));
  return t;
}

GroupElement random_complex_orthogonal(int n, std::mt19937_64& rng, double scale = 0.4) {
  std::uniform_real_distribution<double> unif(-scale, scale);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Complex c(unif(rng), unif(rng));
      x(i, j) = c;
      x(j, i) = -c;
    }
  }
  return exp_one_param(x, 1.0, GroupSpec::complex_group(n));
}

}  // namespace

TEST_CASE("group action on vectors and decomposables") {
  const Tensor v = vector_tensor({1.0, 0.0});
  CHECK(act_group(GroupElement::identity(GroupSpec::complex_group(2)), v).comps == v.comps);

  Eigen::MatrixXcd rot90(2, 2);
  rot90 << 0, -1, 1, 0;
  const Tensor rotated = act_group(complex_element(rot90), v);
  CHECK(std::abs(rotated.comps[0]) < 1e-15);
  CHECK(std::abs(rotated.comps[1] - Complex(1.0, 0.0)) < 1e-15);

  Tensor y1y1 = Tensor::zero(TensorShape::single(2, 2, 0));
  y1y1.at(0, {0, 0}) = 1.0;
  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  const Tensor swapped = act_group(complex_element(swap), y1y1);
  CHECK(std::abs(swapped.at(0, {1, 1}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(swapped.at(0, {0, 0})) < 1e-15);

  CHECK_THROWS_AS(act_group(GroupElement::identity(GroupSpec::complex_group(3)), v),
                  DimensionError);
}

TEST_CASE("algebra action is the Leibniz sum over slots") {
  const Tensor zero_out = act_algebra(Eigen::MatrixXcd::Zero(2, 2),
                                      vector_tensor({1.0, 2.0}));
  CHECK(zero_out.max_abs() == 0.0);

  Eigen::MatrixXcd x(2, 2);  // x(y1) = y2
  x << 0, 0, 1, 0;
  const Tensor moved = act_algebra(x, vector_tensor({1.0, 0.0}));
  CHECK(std::abs(moved.comps[1] - Complex(1.0, 0.0)) < 1e-15);

  Tensor y1y1 = Tensor::zero(TensorShape::single(2, 2, 0));
  y1y1.at(0, {0, 0}) = 1.0;
  const Tensor leib = act_algebra(x, y1y1);
  CHECK(std::abs(leib.at(0, {1, 0}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(leib.at(0, {0, 1}) - Complex(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(leib.at(0, {0, 0})) < 1e-15);
  CHECK(std::abs(leib.at(0, {1, 1})) < 1e-15);
}

TEST_CASE("tensor inner product is bilinear in the orthonormal frame") {
  Tensor y1y2 = Tensor::zero(TensorShape::single(2, 2, 0));
  y1y2.at(0, {0, 1}) = 1.0;
  CHECK(tensor_inner_product(y1y2, y1y2) == Complex(1.0, 0.0));
  const Tensor iw = kI * y1y2;
  CHECK(tensor_inner_product(iw, iw) == Complex(-1.0, 0.0));
}

TEST_CASE("hermitian form is positive definite for the compact conjugation") {
  const TensorShape shape = TensorShape::single(2, 2, 0);
  const ExtendedInvolution tau = compact_conjugation(shape);
  Tensor y1y2 = Tensor::zero(shape);
  y1y2.at(0, {0, 1}) = 1.0;
  CHECK(hermitian_form(y1y2, y1y2, tau) == Complex(1.0, 0.0));

  const ExtendedInvolution tau_vec = compact_conjugation(TensorShape::single(2, 1, 0));
  CHECK(hermitian_form(vector_tensor({0.0, kI}), vector_tensor({0.0, kI}), tau_vec) ==
        Complex(1.0, 0.0));
  CHECK(hermitian_form(vector_tensor({1.0, kI}), vector_tensor({1.0, kI}), tau_vec) ==
        Complex(2.0, 0.0));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Tensor v = random_tensor(shape, rng);
    const double h = hermitian_form(v, v, tau).real();
    CHECK(h >= 0.0);
    if (v.max_abs() >= 1e-12) CHECK(h > 0.0);
  }
  CHECK(hermitian_norm2(Tensor::zero(shape)) == 0.0);
}

TEST_CASE("extended involutions act slot-wise with sign bookkeeping") {
  const TensorShape shape = TensorShape::single(2, 2, 0);
  Eigen::MatrixXd base(2, 2);
  base << 1, 0, 0, -1;
  const ExtendedInvolution theta = extend_involution(base, shape);

  Tensor y1y2 = Tensor::zero(shape);
  y1y2.at(0, {0, 1}) = 1.0;
  CHECK(theta.apply(y1y2).at(0, {0, 1}) == Complex(-1.0, 0.0));

  Tensor y2y2 = Tensor::zero(shape);
  y2y2.at(0, {1, 1}) = 1.0;
  CHECK(theta.apply(y2y2).at(0, {1, 1}) == Complex(1.0, 0.0));

  const ExtendedInvolution one = extend_involution(Eigen::MatrixXd::Identity(2, 2), shape);
  CHECK(one.apply(y1y2).comps == y1y2.comps);

  Eigen::MatrixXd not_invol(2, 2);
  not_invol << 1, 1, 0, 1;
  CHECK_THROWS_AS(extend_involution(not_invol, shape), ContractError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor v = random_tensor(shape, rng);
    const Tensor twice = theta.apply(theta.apply(v));
    CHECK((twice - v).max_abs() < 1e-10);
  }
}

TEST_CASE("cartan_split is exact and reassembles") {
  const TensorShape shape = TensorShape::single(2, 2, 0);
  Eigen::MatrixXd base(2, 2);
  base << 1, 0, 0, -1;
  const ExtendedInvolution theta = extend_involution(base, shape);

  Tensor v = Tensor::zero(shape);
  v.at(0, {0, 0}) = 1.0;  // theta-even
  v.at(0, {0, 1}) = 1.0;  // theta-odd
  const auto [plus, minus] = cartan_split(v, theta);
  CHECK(plus.at(0, {0, 0}) == Complex(1.0, 0.0));
  CHECK(plus.at(0, {0, 1}) == Complex(0.0, 0.0));
  CHECK(minus.at(0, {0, 1}) == Complex(1.0, 0.0));
  CHECK(minus.at(0, {0, 0}) == Complex(0.0, 0.0));
  CHECK((plus + minus - v).max_abs() == 0.0);

  // Fixed and anti-fixed inputs land entirely in one part.
  const auto [p2, m2] = cartan_split(plus, theta);
  CHECK((p2 - plus).max_abs() == 0.0);
  CHECK(m2.max_abs() == 0.0);
}

TEST_CASE("equivariance: acting twice equals acting by the product") {
  std::mt19937_64 rng(17);
  const TensorShape shape = TensorShape::single(3, 1, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const GroupElement g = random_complex_orthogonal(3, rng);
    const GroupElement h = random_complex_orthogonal(3, rng);
    const Tensor v = random_tensor(shape, rng);
    const Tensor lhs = act_group(g, act_group(h, v));
    const Tensor rhs = act_group(compose(g, h), v);
    CHECK((lhs - rhs).max_abs() < 1e-9);
  }
}

TEST_CASE("the bilinear form is invariant under the complex orthogonal action") {
  std::mt19937_64 rng(19);
  const TensorShape shape = TensorShape::single(3, 0, 2);
  for (int trial = 0; trial < 25; ++trial) {
    const GroupElement g = random_complex_orthogonal(3, rng);
    const Tensor u = random_tensor(shape, rng);
    const Tensor v = random_tensor(shape, rng);
    const Complex before = tensor_inner_product(u, v);
    const Complex after = tensor_inner_product(act_group(g, u), act_group(g, v));
    CHECK(std::abs(after - before) < 1e-8);
  }
}

TEST_CASE("algebra action is the derivative of the group action") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  const int n = 3;
  const TensorShape shape = TensorShape::single(n, 0, 2);
  const double eps = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Complex c(unif(rng), unif(rng));
        x(i, j) = c;
        x(j, i) = -c;
      }
    }
    const Tensor v = random_tensor(shape, rng);
    const GroupSpec group = GroupSpec::complex_group(n);
    const Tensor forward = act_group(exp_one_param(x, eps, group), v);
    const Tensor backward = act_group(exp_one_param(x, -eps, group), v);
    const Tensor central = (Complex(1.0 / (2.0 * eps), 0.0)) * (forward - backward);
    const Tensor exact = act_algebra(x, v);
    CHECK((central - exact).max_abs() < 1e-9 * (1.0 + exact.max_abs()));
  }
}

TEST_CASE("real-slice embedding carries i factors on the minus block") {
  // Covariant (0,2) tensor of signature (1,1): component (1,1) gets (-i)^2.
  Tensor t = Tensor::zero(TensorShape::single(2, 0, 2));
  t.at(0, {0, 0}) = 2.0;
  t.at(0, {0, 1}) = 3.0;
  t.at(0, {1, 1}) = 5.0;
  const Tensor e = embed_real_slice(t, {1, 1});
  CHECK(e.at(0, {0, 0}) == Complex(2.0, 0.0));
  CHECK(e.at(0, {0, 1}) == Complex(0.0, -3.0));
  CHECK(e.at(0, {1, 1}) == Complex(-5.0, 0.0));

  // Contravariant picks up +i instead.
  Tensor v = Tensor::zero(TensorShape::single(2, 1, 0));
  v.comps[1] = 7.0;
  CHECK(embed_real_slice(v, {1, 1}).comps[1] == Complex(0.0, 7.0));

  std::mt19937_64 rng(31);
  const TensorShape shape = TensorShape::single(4, 0, 4);
  for (int trial = 0; trial < 5; ++trial) {
    Tensor r = random_tensor(shape, rng);
    for (Complex& c : r.comps) c = Complex(c.real(), 0.0);
    const auto [back, residual] = restrict_to_slice(embed_real_slice(r, {1, 3}), {1, 3});
    CHECK(residual == 0.0);
    CHECK((back - r).max_abs() == 0.0);
  }
}

TEST_CASE("direct sums concatenate independent blocks") {
  TensorShape shape{2, {BlockShape{0, 2}, BlockShape{1, 0}}};
  CHECK(shape.total_size() == 6);
  Tensor t = Tensor::zero(shape);
  t.at(0, {0, 1}) = 1.0;
  t.at(1, {1}) = 2.0;
  CHECK(t.comps[1] == Complex(1.0, 0.0));
  CHECK(t.comps[5] == Complex(2.0, 0.0));

  Eigen::MatrixXcd swap(2, 2);
  swap << 0, 1, 1, 0;
  const Tensor acted = act_group(complex_element(swap), t);
  CHECK(acted.at(0, {1, 0}) == Complex(1.0, 0.0));
  CHECK(acted.at(1, {0}) == Complex(2.0, 0.0));
}
