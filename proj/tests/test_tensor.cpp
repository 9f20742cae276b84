#include <gtest/gtest.h>

#include "qgev/construction.hpp"
#include "qgev/golden.hpp"
#include "qgev/tensor.hpp"
#include "support.hpp"

using qgev::Cyc8;
using qgev::ExactMatrix;
using qgev::MultiIndex;
using qgev::PartitionSpec;
using qgev::Rational;
using qgev::testing::Rng;

namespace {

const std::vector<std::size_t> k222{2, 2, 2};

std::vector<Cyc8> ints(std::initializer_list<long> v) {
  std::vector<Cyc8> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

ExactMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
  ExactMatrix m(n, n);
  m(i, j) = Cyc8(1);
  return m;
}

}  // namespace

TEST(Partition, Validation) {
  EXPECT_THROW(PartitionSpec(k222, {}), qgev::ShapeError);
  EXPECT_THROW(PartitionSpec(k222, {0, 1, 2}), qgev::ShapeError);
  EXPECT_THROW(PartitionSpec(k222, {3}), qgev::ShapeError);
  EXPECT_NO_THROW(PartitionSpec::allow_full(k222, {0, 1, 2}));
  PartitionSpec s(k222, {1});
  EXPECT_EQ(s.complement(), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.subset_dim(), 2u);
  EXPECT_EQ(s.complement_dim(), 4u);
}

TEST(Partition, ParseSubset) {
  EXPECT_EQ(PartitionSpec::parse_subset("A"), (std::vector<std::size_t>{0}));
  EXPECT_EQ(PartitionSpec::parse_subset("BC"), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(PartitionSpec::parse_subset("1,3"), (std::vector<std::size_t>{0, 2}));
  EXPECT_THROW(PartitionSpec::parse_subset(""), qgev::ParseError);
  EXPECT_THROW(PartitionSpec::parse_subset("0"), qgev::ParseError);
  EXPECT_THROW(PartitionSpec::parse_subset("a"), qgev::ParseError);
  EXPECT_THROW(PartitionSpec::parse_subset("1,,2"), qgev::ParseError);
}

TEST(Diamond, Examples) {
  MultiIndex i0{{0}, {0}}, k11{{1, 2}, {1, 1}};
  EXPECT_EQ(qgev::diamond(i0, k11).linear(k222), 3u);
  MultiIndex i1{{1}, {1}}, k00{{0, 2}, {0, 0}};
  EXPECT_EQ(qgev::diamond(i1, k00).linear(k222), 2u);
  MultiIndex i10{{0, 1}, {1, 0}}, k1{{2}, {1}};
  EXPECT_EQ(qgev::diamond(i10, k1).linear(k222), 5u);
  EXPECT_THROW(qgev::diamond(i0, MultiIndex{{0, 1}, {0, 0}}), qgev::ShapeError);
  // same cases through PartitionSpec::merge
  EXPECT_EQ(PartitionSpec(k222, {0}).merge(0, 3), 3u);
  EXPECT_EQ(PartitionSpec(k222, {1}).merge(1, 0), 2u);
  EXPECT_EQ(PartitionSpec(k222, {0, 1}).merge(2, 1), 5u);
}

TEST(Kron, Examples) {
  auto e0 = ints({1, 0}), e1 = ints({0, 1});
  auto v = qgev::kron(qgev::kron(e0, e1), e1);
  EXPECT_EQ(v, ints({0, 0, 0, 1, 0, 0, 0, 0}));
  EXPECT_EQ(qgev::kron(ints({1, 1}), ints({1, 0})), ints({1, 0, 1, 0}));
  auto y1 = qgev::y_vector(Cyc8(1));
  EXPECT_EQ(y1, ints({0, 3, -6, -3}));
  EXPECT_EQ(qgev::kron(qgev::x_vector(Cyc8(1)), y1), ints({0, 3, -6, -3, 0, 3, -6, -3}));
  ExactMatrix a = qgev::testing::int_matrix({{1, 2}, {3, 4}});
  ExactMatrix k = qgev::kron(std::vector<ExactMatrix>{a, ExactMatrix::identity(2)});
  EXPECT_EQ(k(2, 0), Cyc8(3));
  EXPECT_EQ(k(3, 1), Cyc8(3));
  EXPECT_EQ(k(2, 1), Cyc8(0));
}

TEST(PartialTranspose, Examples) {
  Rng rng(3);
  ExactMatrix d(8, 8);
  for (std::size_t i = 0; i < 8; ++i) d(i, i) = qgev::testing::random_cyc8(rng);
  for (auto s : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}})
    EXPECT_EQ(qgev::partial_transpose(d, PartitionSpec(k222, s)), d);

  const std::vector<std::size_t> k22{2, 2};
  // |01><10| -> |11><00| when transposing the first factor
  EXPECT_EQ(qgev::partial_transpose(unit(4, 1, 2), PartitionSpec(k22, {0})), unit(4, 3, 0));

  ExactMatrix w = qgev::golden::witness();
  ExactMatrix wg = qgev::partial_transpose(w, PartitionSpec(k222, {0}));
  EXPECT_EQ(wg(0, 4), Cyc8(-2));
  EXPECT_EQ(wg(0, 4), w(4, 0));
  EXPECT_THROW(qgev::partial_transpose(ExactMatrix::identity(4), PartitionSpec(k222, {0})), qgev::ShapeError);
}

TEST(Choi, Examples) {
  ExactMatrix w = qgev::golden::witness();
  ExactMatrix e00 = unit(2, 0, 0);
  EXPECT_EQ(qgev::choi_apply(w, PartitionSpec(k222, {0}), e00),
            qgev::testing::int_matrix({{4, -2, 0, 0}, {-2, 2, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 4}}));
  EXPECT_EQ(qgev::choi_apply(w, PartitionSpec(k222, {1}), e00),
            qgev::testing::int_matrix({{4, -2, -2, 0}, {-2, 2, 2, 0}, {-2, 2, 3, 0}, {0, 0, 0, 0}}));
  for (std::size_t s = 0; s < 3; ++s)
    EXPECT_EQ(qgev::choi_apply(w, PartitionSpec(k222, {s}), ExactMatrix::identity(2)).trace(), Cyc8(17));
  EXPECT_THROW(qgev::choi_apply(w, PartitionSpec(k222, {0}), ExactMatrix::identity(4)), qgev::ShapeError);
}

TEST(Pairing, Examples) {
  ExactMatrix w = qgev::golden::witness();
  EXPECT_EQ(qgev::pairing(unit(8, 0, 0), w), Cyc8(4));
  EXPECT_EQ(qgev::pairing(qgev::golden::rho1(), w), Cyc8(0));
  EXPECT_EQ(qgev::pairing(ExactMatrix::identity(8) * Cyc8(Rational(1, 8)), w), Cyc8(Rational(17, 8)));
  // Tr(W rho^t) written out directly
  Rng rng(4);
  ExactMatrix rho = qgev::testing::random_matrix(rng, 8, 8);
  EXPECT_EQ(qgev::pairing(rho, w), (w * rho.transpose()).trace());
}

TEST(BlockPositivity, Examples) {
  ExactMatrix w = qgev::golden::witness();
  for (std::size_t s = 0; s < 3; ++s) {
    auto r = qgev::block_positivity_sample(w, PartitionSpec(k222, {s}), 1000, 7 + s);
    EXPECT_EQ(r.samples, 1000u);
    EXPECT_TRUE(r.all_nonnegative) << "S=" << s;
  }
  auto id = qgev::block_positivity_sample(ExactMatrix::identity(8), PartitionSpec(k222, {0, 1}), 300, 1);
  EXPECT_TRUE(id.all_nonnegative);
  EXPECT_GT(id.min_value->real_sign(), 0);
  // deterministic in the seed
  auto a = qgev::block_positivity_sample(w, PartitionSpec(k222, {2}), 50, 99);
  auto b = qgev::block_positivity_sample(w, PartitionSpec(k222, {2}), 50, 99);
  EXPECT_EQ(*a.min_value, *b.min_value);
  // detects a non-block-positive operator
  auto neg = qgev::block_positivity_sample(ExactMatrix::identity(8) * Cyc8(-1), PartitionSpec(k222, {0}), 5, 1);
  EXPECT_FALSE(neg.all_nonnegative);
}

// ---------------------------------------------------------------------------
// Properties

namespace {

std::vector<std::vector<std::size_t>> proper_subsets() { return {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}}; }

}  // namespace

TEST(TensorProperty, PartialTransposeInvolutionAndComposition) {
  Rng rng(31);
  const auto subsets = proper_subsets();
  for (int n = 0; n < 240; ++n) {
    ExactMatrix m = qgev::testing::random_matrix(rng, 8, 8).with_dims(k222);
    const auto& s = subsets[n % subsets.size()];
    PartitionSpec ps(k222, s);
    ExactMatrix g = qgev::partial_transpose(m, ps);
    ASSERT_EQ(qgev::partial_transpose(g, ps), m);
    ASSERT_EQ(g.trace(), m.trace());
    // Gamma_S o Gamma_T = Gamma_{S u T} for disjoint S, T
    for (std::size_t t = 0; t < 3; ++t) {
      if (std::find(s.begin(), s.end(), t) != s.end()) continue;
      std::vector<std::size_t> u = s;
      u.push_back(t);
      PartitionSpec pt(k222, {t});
      ASSERT_EQ(qgev::partial_transpose(g, pt), qgev::partial_transpose(m, PartitionSpec::allow_full(k222, u)));
    }
    ASSERT_EQ(qgev::partial_transpose(m, PartitionSpec::allow_full(k222, {0, 1, 2})), m.transpose());
  }
}

TEST(TensorProperty, PartialTransposeMixedDims) {
  Rng rng(32);
  const std::vector<std::size_t> dims{2, 3, 2};
  for (int n = 0; n < 200; ++n) {
    ExactMatrix m = qgev::testing::random_matrix(rng, 12, 12).with_dims(dims);
    std::size_t s = n % 3;
    PartitionSpec ps(dims, {s});
    ExactMatrix g = qgev::partial_transpose(m, ps);
    ASSERT_EQ(qgev::partial_transpose(g, ps), m);
    // Gamma on a Kronecker product transposes the chosen factor only
    ExactMatrix a = qgev::testing::random_matrix(rng, 2, 2), b = qgev::testing::random_matrix(rng, 3, 3),
                c = qgev::testing::random_matrix(rng, 2, 2);
    std::vector<ExactMatrix> f{a, b, c};
    ExactMatrix k = qgev::kron(f).with_dims(dims);
    f[s] = f[s].transpose();
    ASSERT_EQ(qgev::partial_transpose(k, ps), qgev::kron(f));
  }
}

TEST(TensorProperty, PairingAdjointnessAndHermiticity) {
  Rng rng(33);
  const auto subsets = proper_subsets();
  for (int n = 0; n < 220; ++n) {
    ExactMatrix rho = qgev::testing::random_matrix(rng, 8, 8).with_dims(k222);
    ExactMatrix w = qgev::testing::random_hermitian(rng, 8).with_dims(k222);
    PartitionSpec ps(k222, subsets[n % subsets.size()]);
    ASSERT_EQ(qgev::pairing(rho, w), qgev::pairing(qgev::partial_transpose(rho, ps), qgev::partial_transpose(w, ps)));
    ASSERT_TRUE(qgev::partial_transpose(w, ps).is_hermitian());
  }
}

TEST(TensorProperty, ChoiRoundTrip) {
  Rng rng(34);
  const auto subsets = proper_subsets();
  for (int n = 0; n < 210; ++n) {
    ExactMatrix w = qgev::testing::random_matrix(rng, 8, 8);
    PartitionSpec ps(k222, subsets[n % subsets.size()]);
    const std::size_t ds = ps.subset_dim(), dt = ps.complement_dim();
    ExactMatrix rebuilt(8, 8);
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < ds; ++j) {
        ExactMatrix blk = qgev::choi_apply(w, ps, unit(ds, i, j));
        ASSERT_EQ(blk, qgev::choi_block(w, ps, i, j));
        for (std::size_t k = 0; k < dt; ++k)
          for (std::size_t l = 0; l < dt; ++l) rebuilt(ps.merge(i, k), ps.merge(j, l)) = blk(k, l);
      }
    ASSERT_EQ(rebuilt, w);
    // linearity
    ExactMatrix x = qgev::testing::random_matrix(rng, ds, ds), y = qgev::testing::random_matrix(rng, ds, ds);
    ASSERT_EQ(qgev::choi_apply(w, ps, x + y), qgev::choi_apply(w, ps, x) + qgev::choi_apply(w, ps, y));
  }
}

TEST(TensorProperty, ConjugatedProductVectorIdentity) {
  ExactMatrix w = qgev::golden::witness();
  ExactMatrix wg = qgev::partial_transpose(w, PartitionSpec(k222, {0}));
  auto pv = qgev::build_product_vectors();
  Rng rng(35);
  for (int n = 0; n < 200; ++n) {
    std::vector<Cyc8> x, y;
    for (int k = 0; k < 2; ++k) x.push_back(qgev::testing::random_cyc8(rng, 3));
    for (int k = 0; k < 4; ++k) y.push_back(qgev::testing::random_cyc8(rng, 3));
    ASSERT_EQ(qgev::expectation(wg, qgev::kron(qgev::conj(x), y)), qgev::expectation(w, qgev::kron(x, y)));
  }
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_EQ(qgev::expectation(wg, pv.z_conj[k]), qgev::expectation(w, pv.z[k]));
    EXPECT_TRUE(qgev::expectation(w, pv.z[k]).is_zero());
  }
}
