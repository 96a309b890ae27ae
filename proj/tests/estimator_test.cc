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

#include "privest/estimator.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "privest/channel.h"
#include "privest/information.h"
#include "privest/model.h"
#include "status_macros.h"
#include "test_instances.h"

namespace privest {
namespace {

using ::privest::testing::AsEstimator;
using ::privest::testing::kReferenceMapCondEntropy;
using ::privest::testing::kReferenceMapError;
using ::privest::testing::kReferenceMapMutualInfo;
using ::privest::testing::kReferencePriorEntropy;
using ::privest::testing::MustChannel;
using ::privest::testing::MustPrior;
using ::privest::testing::RandomChannel;
using ::privest::testing::RandomStochastic;
using ::privest::testing::ReferenceChannel;

TEST(EstimatorTest, ValidatesColumnSums) {
  const Channel ch = ReferenceChannel();
  Estimator est = UniformEstimator(ch);
  EXPECT_OK(ValidateEstimator(est));
  est.probs(0, 0) += 1e-6;
  EXPECT_FALSE(ValidateEstimator(est).ok());
  est = UniformEstimator(ch);
  est.probs(0, 1) = -0.5;
  est.probs(1, 1) = 1.5;
  EXPECT_FALSE(ValidateEstimator(est).ok());
}

TEST(EstimatorTest, MapPicksLowestIndexOnTies) {
  Eigen::MatrixXd pmf = Eigen::MatrixXd::Constant(1, 2, 0.5);
  Eigen::MatrixXd given(2, 2);
  given << 0.5, 0.5,
           0.5, 0.5;
  const Channel ch = MustChannel(MustPrior(pmf), given);
  const Estimator map = MapEstimator(ch);
  EXPECT_EQ(map.probs(0, 0), 1.0);
  EXPECT_EQ(map.probs(0, 1), 1.0);
}

TEST(ErrorProbabilityTest, UniformEstimator) {
  std::mt19937_64 rng(1);
  for (int m : {2, 3, 5}) {
    const Channel ch = RandomChannel(rng, 2, m, 4);
    ASSERT_OK_AND_ASSIGN(double err, ErrorProbability(UniformEstimator(ch), ch));
    EXPECT_NEAR(err, 1.0 - 1.0 / m, 1e-12);
  }
}

TEST(ErrorProbabilityTest, ConstantEstimatorOnReferencePrior) {
  const Channel ch = ReferenceChannel();
  ASSERT_OK_AND_ASSIGN(double err,
                       ErrorProbability(DeterministicEstimator(ch, 0), ch));
  EXPECT_NEAR(err, 0.5, 1e-12);
}

TEST(ErrorProbabilityTest, ReferenceMap) {
  const Channel ch = ReferenceChannel();
  const Estimator map = MapEstimator(ch);
  EXPECT_EQ(map.probs.row(1), Eigen::RowVector4d(0, 0, 1, 1));
  ASSERT_OK_AND_ASSIGN(double err, ErrorProbability(map, ch));
  EXPECT_NEAR(err, kReferenceMapError, 1e-13);
}

TEST(ErrorProbabilityTest, AffineInTheEstimator) {
  std::mt19937_64 rng(2);
  const Channel ch = RandomChannel(rng, 3, 3, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd p = RandomStochastic(rng, 3, 6);
    const Eigen::MatrixXd q = RandomStochastic(rng, 3, 6);
    for (double a : {0.25, 0.5, 0.75}) {
      const double blend = ErrorProbability((a * p + (1 - a) * q).eval(), ch);
      EXPECT_NEAR(blend,
                  a * ErrorProbability(p, ch) + (1 - a) * ErrorProbability(q, ch),
                  1e-12);
    }
  }
}

TEST(ErrorProbabilityTest, RejectsIncompatibleEstimator) {
  const Channel ch = ReferenceChannel();
  Estimator est = UniformEstimator(ch);
  est.probs = Eigen::MatrixXd::Constant(2, 3, 0.5);
  EXPECT_FALSE(ErrorProbability(est, ch).ok());
}

TEST(OutputPmfTest, SimpleEstimators) {
  const Channel ch = ReferenceChannel();
  ASSERT_OK_AND_ASSIGN(Eigen::VectorXd q,
                       OutputPmf(DeterministicEstimator(ch, 0), ch));
  EXPECT_NEAR(q(0), 1.0, 1e-12);
  EXPECT_NEAR(q(1), 0.0, 1e-12);
  ASSERT_OK_AND_ASSIGN(q, OutputPmf(UniformEstimator(ch), ch));
  EXPECT_NEAR(q(0), 0.5, 1e-12);
  for (int j = 0; j < ch.n(); ++j) {
    ASSERT_OK_AND_ASSIGN(Eigen::VectorXd qj,
                         ConditionalOutputPmf(UniformEstimator(ch), ch, j));
    EXPECT_NEAR(qj(0), 0.5, 1e-12);
  }
  EXPECT_FALSE(ConditionalOutputPmf(UniformEstimator(ch), ch, 2).ok());
}

TEST(OutputPmfTest, IsThePriorMixtureOfConditionals) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Channel ch = RandomChannel(rng, 3, 2, 4);
    const Eigen::MatrixXd p = RandomStochastic(rng, 2, 4);
    const Eigen::VectorXd q = OutputPmf(p, ch);
    const Eigen::MatrixXd qx = ConditionalOutputPmfs(p, ch);
    EXPECT_LE((qx * ch.x_marginal - q).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(OutputPmfTest, SinglePrivateSymbolConditionalIsMarginal) {
  std::mt19937_64 rng(4);
  const Channel ch = RandomChannel(rng, 1, 3, 4);
  const Eigen::MatrixXd p = RandomStochastic(rng, 3, 4);
  EXPECT_TRUE(ConditionalOutputPmfs(p, ch).col(0).isApprox(OutputPmf(p, ch),
                                                            1e-12));
}

TEST(ConditionalEntropyTest, ReferenceValues) {
  const Channel ch = ReferenceChannel();
  EXPECT_NEAR(EntropyBits(ch.x_marginal), kReferencePriorEntropy, 1e-14);
  ASSERT_OK_AND_ASSIGN(double h,
                       ConditionalEntropy(UniformEstimator(ch), ch));
  EXPECT_NEAR(h, 0.881290899, 1e-9);
  const Estimator map = MapEstimator(ch);
  ASSERT_OK_AND_ASSIGN(h, ConditionalEntropy(map, ch));
  EXPECT_NEAR(h, kReferenceMapCondEntropy, 1e-13);
  EXPECT_NEAR(ConditionalEntropyDirect(map.probs, ch), kReferenceMapCondEntropy,
              1e-13);
  ASSERT_OK_AND_ASSIGN(double mi, MutualInformation(map, ch));
  EXPECT_NEAR(mi, kReferenceMapMutualInfo, 1e-13);
  ASSERT_OK_AND_ASSIGN(mi, MutualInformation(UniformEstimator(ch), ch));
  EXPECT_NEAR(mi, 0.0, 1e-9);
}

TEST(ConditionalEntropyTest, SinglePrivateSymbolIsZero) {
  std::mt19937_64 rng(5);
  const Channel ch = RandomChannel(rng, 1, 2, 3);
  EXPECT_NEAR(ConditionalEntropy(RandomStochastic(rng, 2, 3), ch), 0.0, 1e-12);
}

TEST(ConditionalEntropyTest, IndependentPrivateVariable) {
  SensorModel model = ReferenceSensorModel();
  model.b = 0.0;
  ASSERT_OK_AND_ASSIGN(Channel ch, BuildChannel(model, ReferencePartition()));
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd p = RandomStochastic(rng, 2, 4);
    EXPECT_NEAR(ConditionalEntropy(p, ch), kReferencePriorEntropy, 1e-12);
  }
}

TEST(ConditionalEntropyTest, ChainIdentityAndBounds) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3;
    const Channel ch = RandomChannel(rng, n, 3, 5);
    const Eigen::MatrixXd p = RandomStochastic(rng, 3, 5);
    const double h = ConditionalEntropy(p, ch);
    const double mi = MutualInformation(p, ch);
    EXPECT_NEAR(h + mi, EntropyBits(ch.x_marginal), 1e-9);
    EXPECT_NEAR(h, ConditionalEntropyDirect(p, ch), 1e-12);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log2(n) + 1e-9);
    EXPECT_GE(mi, 0.0);
  }
}

TEST(MutualInformationTest, ConvexInTheEstimator) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Channel ch = RandomChannel(rng, 3, 3, 4);
    const Eigen::MatrixXd p = RandomStochastic(rng, 3, 4);
    const Eigen::MatrixXd q = RandomStochastic(rng, 3, 4);
    for (double a : {0.25, 0.5, 0.75}) {
      EXPECT_LE(MutualInformation((a * p + (1 - a) * q).eval(), ch),
                a * MutualInformation(p, ch) + (1 - a) * MutualInformation(q, ch) +
                    1e-9);
    }
  }
}

TEST(MutualInformationTest, ExtendedPrecisionAgrees) {
  std::mt19937_64 rng(10);
  const Channel ch = RandomChannel(rng, 2, 2, 3);
  const Eigen::MatrixXd p = RandomStochastic(rng, 2, 3);
  const long double wide =
      MutualInformation(p.cast<long double>().eval(), ch);
  EXPECT_NEAR(static_cast<double>(wide), MutualInformation(p, ch), 1e-14);
}

TEST(FanoTest, Examples) {
  ASSERT_OK_AND_ASSIGN(double f, FanoLowerBound(1.0, 2));
  EXPECT_EQ(f, 0.0);
  ASSERT_OK_AND_ASSIGN(f, FanoLowerBound(1.5, 4));
  EXPECT_NEAR(f, 0.25, 1e-15);
  ASSERT_OK_AND_ASSIGN(f, FanoLowerBound(0.5, 8));
  EXPECT_EQ(f, 0.0);
  EXPECT_FALSE(FanoLowerBound(0.5, 1).ok());
}

TEST(EvaluateTest, ReportIsConsistent) {
  const Channel ch = ReferenceChannel();
  ASSERT_OK_AND_ASSIGN(PrivacyReport r, Evaluate(MapEstimator(ch), ch));
  EXPECT_NEAR(r.error_prob, kReferenceMapError, 1e-13);
  EXPECT_NEAR(r.cond_entropy_bits + r.mutual_info_bits, r.prior_entropy_bits,
              1e-12);
  EXPECT_GT(r.pp_residual, 0.01);
  ASSERT_OK_AND_ASSIGN(r, Evaluate(UniformEstimator(ch), ch));
  EXPECT_LE(r.pp_residual, 1e-12);
}

}  // namespace
}  // namespace privest
