// Copyright 2026 The privest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "privest/channel.h"
#include "privest/gaussian.h"
#include "privest/model.h"
#include "status_macros.h"
#include "test_instances.h"

namespace privest {
namespace {

using ::privest::testing::kNormalCdfAt5;
using ::privest::testing::kNormalTailAt5;
using ::privest::testing::kReferencePhi;
using ::privest::testing::MustPrior;
using ::privest::testing::RandomChannel;
using ::privest::testing::ReferenceChannel;

TEST(PriorTest, RejectsBadInput) {
  EXPECT_FALSE(MakeJointPrior({0, 1}, {0}, Eigen::MatrixXd::Constant(2, 1, 0.6))
                   .ok());
  EXPECT_FALSE(MakeJointPrior({0, 0}, {0}, Eigen::MatrixXd::Constant(2, 1, 0.5))
                   .ok());
  Eigen::MatrixXd negative(1, 2);
  negative << 1.2, -0.2;
  EXPECT_FALSE(MakeJointPrior({0}, {0, 1}, negative).ok());
  EXPECT_FALSE(MakeJointPrior({0, 1}, {0}, Eigen::MatrixXd::Constant(3, 1, 0.5))
                   .ok());
}

TEST(PriorTest, ProductPriorMarginals) {
  Eigen::VectorXd px(2), py(3);
  px << 0.7, 0.3;
  py << 0.2, 0.5, 0.3;
  ASSERT_OK_AND_ASSIGN(JointPrior prior,
                       MakeProductPrior({0, 1}, px, {0, 1, 2}, py));
  EXPECT_TRUE(prior.XMarginal().isApprox(px, 1e-15));
  EXPECT_TRUE(prior.YMarginal().isApprox(py, 1e-15));
  EXPECT_NEAR(prior.pmf.sum(), 1.0, 1e-12);
}

TEST(PartitionTest, BinsCoverTheLine) {
  ASSERT_OK_AND_ASSIGN(Partition p, MakePartition({0.2, 0.5, 0.8}));
  EXPECT_EQ(p.size(), 4);
  EXPECT_EQ(p.BinOf(-5.0), 0);
  EXPECT_EQ(p.BinOf(0.2), 0);
  EXPECT_EQ(p.BinOf(0.2000001), 1);
  EXPECT_EQ(p.BinOf(0.5), 1);
  EXPECT_EQ(p.BinOf(0.81), 3);
  EXPECT_EQ(p.Lower(0), -std::numeric_limits<double>::infinity());
  EXPECT_EQ(p.Upper(3), std::numeric_limits<double>::infinity());
  for (int l = 0; l + 1 < p.size(); ++l) EXPECT_EQ(p.Upper(l), p.Lower(l + 1));
}

TEST(PartitionTest, RejectsUnorderedEdges) {
  EXPECT_FALSE(MakePartition({}).ok());
  EXPECT_FALSE(MakePartition({0.5, 0.5}).ok());
  EXPECT_FALSE(MakePartition({0.8, 0.2}).ok());
  EXPECT_FALSE(MakePartition({0.0, std::nan("")}).ok());
}

TEST(PartitionTest, ReferenceMidpoints) {
  ASSERT_OK_AND_ASSIGN(Partition p, MidpointPartition(ReferenceSensorModel()));
  ASSERT_EQ(p.edges.size(), 3u);
  EXPECT_NEAR(p.edges[0], 0.2, 1e-15);
  EXPECT_NEAR(p.edges[1], 0.5, 1e-15);
  EXPECT_NEAR(p.edges[2], 0.8, 1e-15);
}

TEST(SensorModelTest, RejectsNonPositiveNoise) {
  SensorModel model = ReferenceSensorModel();
  model.noise_std = 0.0;
  EXPECT_FALSE(ValidateSensorModel(model).ok());
}

TEST(BuildChannelTest, SingleEdgeTailProbability) {
  // Means {0, 0.4, 0.6, 1.0}; an edge at 0.5 is five standard deviations
  // above the (x0, y0) mean.
  const SensorModel model = ReferenceSensorModel();
  ASSERT_OK_AND_ASSIGN(Partition p, MakePartition({0.5}));
  ASSERT_OK_AND_ASSIGN(Channel ch, BuildChannel(model, p));
  EXPECT_NEAR(ch.given_xy(ch.Row(0, 0), 0), kNormalCdfAt5, 1e-15);
  EXPECT_NEAR(ch.given_xy(ch.Row(0, 0), 1), kNormalTailAt5, 1e-20);
}

TEST(BuildChannelTest, TwoBinsSumToOneExactly) {
  SensorModel model = ReferenceSensorModel();
  model.noise_std = 0.37;
  ASSERT_OK_AND_ASSIGN(Partition p, MakePartition({0.0}));
  ASSERT_OK_AND_ASSIGN(Channel ch, BuildChannel(model, p));
  for (int r = 0; r < ch.given_xy.rows(); ++r) {
    EXPECT_EQ(ch.given_xy(r, 0) + ch.given_xy(r, 1), 1.0);
  }
}

TEST(BuildChannelTest, ReferenceChannelInvariants) {
  const Channel ch = ReferenceChannel();
  for (int r = 0; r < ch.given_xy.rows(); ++r) {
    EXPECT_NEAR(ch.given_xy.row(r).sum(), 1.0, 1e-10);
  }
  for (int j = 0; j < ch.n(); ++j) EXPECT_NEAR(ch.given_x.row(j).sum(), 1.0, 1e-10);
  for (int i = 0; i < ch.m(); ++i) EXPECT_NEAR(ch.given_y.row(i).sum(), 1.0, 1e-10);
  EXPECT_NEAR(ch.marginal.sum(), 1.0, 1e-10);
  EXPECT_LE(ChannelConsistencyError(ch), 1e-10);
  EXPECT_EQ(ch.symbol_labels.front(), "(-inf 0.2]");
  EXPECT_EQ(ch.symbol_labels.back(), "(0.8 inf]");
}

TEST(BuildChannelTest, DegeneratePriorMarginal) {
  SensorModel model = ReferenceSensorModel();
  Eigen::VectorXd px(2), py(2);
  px << 0.0, 1.0;
  py << 0.5, 0.5;
  ASSERT_OK_AND_ASSIGN(model.prior, MakeProductPrior({0, 1}, px, {0, 1}, py));
  ASSERT_OK_AND_ASSIGN(Channel ch, BuildChannel(model, ReferencePartition()));
  EXPECT_TRUE(ch.marginal.isApprox(ch.given_x.row(1).transpose(), 1e-14));
  // The unreachable x0 row falls back to marginal weights over Y.
  for (int i = 0; i < 2; ++i) {
    EXPECT_TRUE(ch.given_y.row(i).isApprox(ch.given_xy.row(ch.Row(1, i)),
                                           1e-14));
  }
}

TEST(BuildChannelTest, RefiningABinIsConsistent) {
  const SensorModel model = ReferenceSensorModel();
  const Channel coarse = ReferenceChannel();
  ASSERT_OK_AND_ASSIGN(Partition fine, MakePartition({0.2, 0.37, 0.5, 0.8}));
  ASSERT_OK_AND_ASSIGN(Channel ch, BuildChannel(model, fine));
  for (int r = 0; r < ch.given_xy.rows(); ++r) {
    EXPECT_NEAR(ch.given_xy(r, 1) + ch.given_xy(r, 2), coarse.given_xy(r, 1),
                1e-10);
    EXPECT_NEAR(ch.given_xy(r, 0), coarse.given_xy(r, 0), 1e-12);
    EXPECT_NEAR(ch.given_xy(r, 4), coarse.given_xy(r, 3), 1e-12);
  }
}

TEST(MakeChannelTest, ClampsAndRenormalizes) {
  Eigen::MatrixXd pmf(1, 1);
  pmf << 1.0;
  Eigen::MatrixXd given(1, 3);
  given << 0.0, 0.5, 0.5;
  ASSERT_OK_AND_ASSIGN(Channel ch,
                       MakeChannel(MustPrior(pmf), given, {"a", "b", "c"}));
  EXPECT_GE(ch.given_xy(0, 0), kChannelFloor * 0.999);
  EXPECT_NEAR(ch.given_xy.row(0).sum(), 1.0, 1e-15);
}

TEST(MakeChannelTest, RejectsShapeMismatch) {
  Eigen::MatrixXd pmf = Eigen::MatrixXd::Constant(2, 2, 0.25);
  EXPECT_FALSE(MakeChannel(MustPrior(pmf), Eigen::MatrixXd::Constant(3, 2, 0.5),
                           {})
                   .ok());
  EXPECT_FALSE(MakeChannel(MustPrior(pmf), Eigen::MatrixXd::Constant(4, 2, 0.5),
                           {"only-one"})
                   .ok());
}

TEST(PrivacyDeviationTest, ReferenceValues) {
  const Eigen::MatrixXd phi = PrivacyDeviation(ReferenceChannel());
  for (int j = 0; j < 2; ++j) {
    for (int l = 0; l < 4; ++l) {
      EXPECT_NEAR(phi(j, l), kReferencePhi[j][l], 1e-11);
    }
    EXPECT_NEAR(phi.row(j).sum(), 0.0, 1e-12);
  }
}

TEST(PrivacyDeviationTest, MarginalConsistencyOnRandomChannels) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = RandomChannel(rng, 3, 2, 5);
    EXPECT_LE(ChannelConsistencyError(ch), 1e-10);
    const Eigen::MatrixXd phi = PrivacyDeviation(ch);
    EXPECT_LE((ch.x_marginal.transpose() * phi).cwiseAbs().maxCoeff(), 1e-12);
  }
}

}  // namespace
}  // namespace privest
