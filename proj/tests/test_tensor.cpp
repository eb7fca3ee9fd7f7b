// Copyright 2026 The otoc-tn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "otoc/tensor.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "gtest/gtest.h"
#include "otoc/rng.hpp"
#include "test_util.hpp"

using namespace otoc;
using testutil::max_abs_diff;
using testutil::random_tensor;

namespace {

// Direct-summation contraction over all index assignments, for tensors small
// enough to enumerate. Independent of the GEMM path.
DenseTensor loop_contract(const DenseTensor& a, const DenseTensor& b,
                          const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<IndexLabel> out_ix;
  std::vector<std::string> a_free, b_free, contracted_a, contracted_b;
  for (const auto& ix : a.indices()) {
    bool paired = false;
    for (const auto& pr : pairs) paired |= pr.first == ix.name;
    if (!paired) {
      out_ix.push_back(ix);
      a_free.push_back(ix.name);
    }
  }
  for (const auto& ix : b.indices()) {
    bool paired = false;
    for (const auto& pr : pairs) paired |= pr.second == ix.name;
    if (!paired) {
      out_ix.push_back(ix);
      b_free.push_back(ix.name);
    }
  }
  for (const auto& pr : pairs) {
    contracted_a.push_back(pr.first);
    contracted_b.push_back(pr.second);
  }
  DenseTensor out(out_ix);

  std::vector<std::int64_t> am(a.rank()), bm(b.rank()), om(out.rank());
  std::function<void(std::size_t)> walk_out = [&](std::size_t oi) {
    if (oi == static_cast<std::size_t>(out.rank())) {
      // Sum over the contracted assignments.
      Complex sum(0.0, 0.0);
      std::function<void(std::size_t)> walk_k = [&](std::size_t ki) {
        if (ki == pairs.size()) {
          for (std::size_t i = 0; i < a_free.size(); ++i)
            am[static_cast<std::size_t>(a.index_position(a_free[i]))] = om[i];
          for (std::size_t i = 0; i < b_free.size(); ++i)
            bm[static_cast<std::size_t>(b.index_position(b_free[i]))] = om[a_free.size() + i];
          sum += a.at(std::span<const std::int64_t>(am)) * b.at(std::span<const std::int64_t>(bm));
          return;
        }
        const auto pa = static_cast<std::size_t>(a.index_position(contracted_a[ki]));
        const auto pb = static_cast<std::size_t>(b.index_position(contracted_b[ki]));
        for (std::int64_t v = 0; v < a.index(static_cast<std::int64_t>(pa)).dim; ++v) {
          am[pa] = v;
          bm[pb] = v;
          walk_k(ki + 1);
        }
      };
      walk_k(0);
      out.at(std::span<const std::int64_t>(om)) = sum;
      return;
    }
    for (std::int64_t v = 0; v < out.index(static_cast<std::int64_t>(oi)).dim; ++v) {
      om[oi] = v;
      walk_out(oi + 1);
    }
  };
  walk_out(0);
  return out;
}

TEST(Contract, IdentityTimesVectorIsVector) {
  DenseTensor id({{"r", 2}, {"c", 2}});
  id.mutable_data() = {1, 0, 0, 1};
  DenseTensor v({{"c", 2}});
  v.mutable_data() = {Complex(0.3, 0.1), Complex(-2.0, 0.7)};
  DenseTensor out = contract(id, v, {{"c", "c"}});
  ASSERT_EQ(out.rank(), 1);
  EXPECT_EQ(out.data()[0], v.data()[0]);
  EXPECT_EQ(out.data()[1], v.data()[1]);
}

TEST(Contract, RankOneAlgebra) {
  DetRng rng(11);
  DenseTensor u = random_tensor(rng, {{"u", 3}});
  DenseTensor v = random_tensor(rng, {{"v", 4}});
  DenseTensor w = random_tensor(rng, {{"w", 2}});

  // (u (x) v) contracted with (conj(v) (x) w) over the middle index gives
  // <v,v> u (x) w.
  DenseTensor uv = contract(u, v, {});
  DenseTensor vw = contract(conjugate(rename_index(v, "v", "v2")), w, {});
  DenseTensor out = contract(uv, vw, {{"v", "v2"}});

  Complex v2(0.0, 0.0);
  for (const auto& x : v.data()) v2 += x * std::conj(x);
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 2; ++j)
      EXPECT_NEAR(std::abs(out.at({i, j}) - v2 * u.at({i}) * w.at({j})), 0.0, 1e-12);
}

TEST(Contract, MatchesLoopOracleOnRandomTensors) {
  DetRng rng(7);
  DenseTensor a = random_tensor(rng, {{"i", 3}, {"j", 4}, {"k", 5}});
  DenseTensor b = random_tensor(rng, {{"m", 5}, {"n", 4}});
  DenseTensor fast = contract(a, b, {{"k", "m"}, {"j", "n"}});
  DenseTensor slow = loop_contract(a, b, {{"k", "m"}, {"j", "n"}});
  EXPECT_LT(max_abs_diff(fast, slow), 1e-12);
}

TEST(Contract, IsBilinear) {
  DetRng rng(13);
  DenseTensor a1 = random_tensor(rng, {{"i", 2}, {"k", 3}});
  DenseTensor a2 = random_tensor(rng, {{"i", 2}, {"k", 3}});
  DenseTensor b = random_tensor(rng, {{"k", 3}, {"j", 2}});
  const Complex alpha(0.7, -1.1);

  DenseTensor lhs = contract(add(scaled(a1, alpha), a2), b, {{"k", "k"}});
  DenseTensor rhs = add(scaled(contract(a1, b, {{"k", "k"}}), alpha),
                        contract(a2, b, {{"k", "k"}}));
  EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
}

TEST(Contract, ErrorsOnDimensionMismatchAndRepeatedIndex) {
  DetRng rng(5);
  DenseTensor a = random_tensor(rng, {{"i", 2}, {"k", 3}});
  DenseTensor b = random_tensor(rng, {{"k", 4}});
  EXPECT_THROW(contract(a, b, {{"k", "k"}}), std::invalid_argument);
  DenseTensor c = random_tensor(rng, {{"k", 3}, {"j", 3}});
  EXPECT_THROW(contract(a, c, {{"k", "k"}, {"k", "j"}}), std::invalid_argument);
}

TEST(Svd, DiagonalMatrixTruncation) {
  DenseTensor t({{"r", 3}, {"c", 3}});
  t.mutable_data() = {3, 0, 0, 0, 2, 0, 0, 0, 1};
  SvdResult res = svd_truncate(t, {"r"}, 2, 0.0);
  ASSERT_EQ(res.singular_values.size(), 2u);
  EXPECT_NEAR(res.singular_values[0], 3.0, 1e-12);
  EXPECT_NEAR(res.singular_values[1], 2.0, 1e-12);
  EXPECT_NEAR(res.discarded_weight, 1.0, 1e-12);
}

TEST(Svd, NoTruncationReconstructsExactly) {
  DetRng rng(23);
  DenseTensor t = random_tensor(rng, {{"a", 3}, {"b", 4}, {"c", 2}});
  SvdResult res = svd_truncate(t, {"a", "c"}, 1 << 20, 0.0);
  EXPECT_NEAR(res.discarded_weight, 0.0, 1e-20);

  DenseTensor sl = res.left;
  auto& d = sl.mutable_data();
  const std::int64_t k = static_cast<std::int64_t>(res.singular_values.size());
  for (std::int64_t r = 0; r < sl.size() / k; ++r)
    for (std::int64_t q = 0; q < k; ++q)
      d[static_cast<std::size_t>(r * k + q)] *= res.singular_values[static_cast<std::size_t>(q)];
  DenseTensor rec = contract(sl, res.right, {{"svd", "svd"}});
  EXPECT_LT(max_abs_diff(rec, permute(t, {"a", "c", "b"})), 1e-10 * frobenius_norm(t));
}

TEST(Svd, DiscardedWeightMatchesFullDecompositionOracle) {
  DetRng rng(29);
  DenseTensor t = random_tensor(rng, {{"r", 8}, {"c", 8}});
  SvdResult res = svd_truncate(t, {"r"}, 3, 0.0);

  // Oracle: singular values from the eigenvalues of A^H A via Eigen.
  MatrixXc a(8, 8);
  for (std::int64_t r = 0; r < 8; ++r)
    for (std::int64_t c = 0; c < 8; ++c) a(r, c) = t.at({r, c});
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(a.adjoint() * a);
  double expected = 0.0;
  for (int i = 0; i < 5; ++i) expected += std::max(0.0, es.eigenvalues()(i));
  EXPECT_NEAR(res.discarded_weight, expected, 1e-9 * expected + 1e-12);
}

TEST(Svd, ParsevalHoldsAfterAnyTruncation) {
  DetRng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    DenseTensor t = random_tensor(rng, {{"a", 4}, {"b", 3}, {"c", 5}});
    const auto max_rank = 1 + static_cast<std::int64_t>(rng.uniform_int(12));
    SvdResult res = svd_truncate(t, {"a", "b"}, max_rank, 0.0);
    double sum = res.discarded_weight;
    for (double s : res.singular_values) sum += s * s;
    const double n2 = frobenius_norm(t) * frobenius_norm(t);
    EXPECT_NEAR(sum, n2, 1e-9 * n2);
  }
}

TEST(Svd, ErrorsOnEmptyOrFullLeftSet) {
  DetRng rng(37);
  DenseTensor t = random_tensor(rng, {{"a", 2}, {"b", 2}});
  EXPECT_THROW(svd_truncate(t, {}, 2, 0.0), std::invalid_argument);
  EXPECT_THROW(svd_truncate(t, {"a", "b"}, 2, 0.0), std::invalid_argument);
}

TEST(Qr, IdentityGivesIdentityFactors) {
  DenseTensor t({{"r", 3}, {"c", 3}});
  t.mutable_data() = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  auto [q, r] = qr_split(t, {"r"});
  for (std::int64_t i = 0; i < 3; ++i)
    for (std::int64_t j = 0; j < 3; ++j) {
      EXPECT_NEAR(std::abs(q.at({i, j}) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(r.at({i, j}) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(Qr, ColumnVectorSplitsIntoUnitVectorTimesNorm) {
  DenseTensor t({{"r", 4}, {"c", 1}});
  t.mutable_data() = {Complex(1, 0), Complex(0, 2), Complex(-2, 0), Complex(0, 0)};
  auto [q, r] = qr_split(t, {"r"});
  EXPECT_NEAR(std::abs(r.at({0, 0})), 3.0, 1e-12);
  EXPECT_NEAR(r.at({0, 0}).imag(), 0.0, 1e-12);  // diagonal made real-positive
  double qn = 0.0;
  for (std::int64_t i = 0; i < 4; ++i) qn += std::norm(q.at({i, 0}));
  EXPECT_NEAR(qn, 1.0, 1e-12);
}

TEST(Qr, RandomSplitIsIsometricAndReconstructs) {
  DetRng rng(41);
  DenseTensor t = random_tensor(rng, {{"a", 6}, {"b", 4}});
  auto [q, r] = qr_split(t, {"a"});

  DenseTensor qc = conjugate(rename_index(q, "qr", "qr2"));
  DenseTensor gram = contract(qc, q, {{"a", "a"}});
  for (std::int64_t i = 0; i < 4; ++i)
    for (std::int64_t j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs(gram.at({i, j}) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);

  DenseTensor rec = contract(q, r, {{"qr", "qr"}});
  EXPECT_LT(max_abs_diff(rec, t), 1e-12 * frobenius_norm(t));
}

TEST(Reshape, PermuteRoundTrip) {
  DetRng rng(43);
  DenseTensor t = random_tensor(rng, {{"a", 2}, {"b", 3}, {"c", 4}});
  DenseTensor p = permute(t, {"c", "a", "b"});
  DenseTensor back = permute(p, {"a", "b", "c"});
  EXPECT_EQ(back.data(), t.data());
}

TEST(Reshape, FuseThenSplitRoundTrip) {
  DetRng rng(47);
  DenseTensor t = random_tensor(rng, {{"a", 2}, {"b", 3}, {"c", 4}});
  DenseTensor f = fuse(t, {"a", "b"}, "ab");
  ASSERT_EQ(f.dim("ab"), 6);
  DenseTensor s = split_index(f, "ab", {{"a", 2}, {"b", 3}});
  EXPECT_LT(max_abs_diff(s, t), 1e-15);
}

TEST(Reshape, ConjugateIsInvolution) {
  DetRng rng(53);
  DenseTensor t = random_tensor(rng, {{"a", 3}, {"b", 3}});
  EXPECT_EQ(conjugate(conjugate(t)).data(), t.data());
}

TEST(Reshape, NormMatchesEntrywiseOracle) {
  DetRng rng(59);
  DenseTensor t = random_tensor(rng, {{"a", 5}, {"b", 7}});
  double s = 0.0;
  for (const auto& v : t.data()) s += std::norm(v);
  EXPECT_NEAR(frobenius_norm(t), std::sqrt(s), 1e-12);
}

TEST(Reshape, LabelCollisionRejected) {
  EXPECT_THROW(DenseTensor({{"a", 2}, {"a", 3}}), std::invalid_argument);
  DetRng rng(61);
  DenseTensor t = random_tensor(rng, {{"a", 2}, {"b", 3}});
  EXPECT_THROW(rename_index(t, "a", "b"), std::invalid_argument);
}

TEST(ApplyMatrix, MatchesContractions) {
  DetRng rng(67);
  DenseTensor t = random_tensor(rng, {{"a", 3}, {"b", 2}});
  MatrixXc m(3, 4);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = rng.complex_gaussian();
  DenseTensor out = apply_matrix(t, "a", m);
  ASSERT_EQ(out.dim("a"), 4);
  for (std::int64_t j = 0; j < 4; ++j)
    for (std::int64_t b = 0; b < 2; ++b) {
      Complex s(0, 0);
      for (std::int64_t i = 0; i < 3; ++i) s += t.at({i, b}) * m(i, j);
      EXPECT_NEAR(std::abs(out.at({j, b}) - s), 0.0, 1e-12);
    }
}

}  // namespace
