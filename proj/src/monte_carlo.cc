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

#include "privest/monte_carlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "absl/strings/str_format.h"
#include "privest/information.h"

namespace privest {

namespace {

int SampleIndex(SplitMix64& rng, const Eigen::Ref<const Eigen::VectorXd>& pmf) {
  const double u = UniformDouble(rng);
  double cumulative = 0.0;
  for (Eigen::Index k = 0; k < pmf.size(); ++k) {
    cumulative += pmf(k);
    if (u < cumulative) return static_cast<int>(k);
  }
  // Round-off: fall back to the last entry with positive mass.
  for (Eigen::Index k = pmf.size() - 1; k > 0; --k) {
    if (pmf(k) > 0.0) return static_cast<int>(k);
  }
  return 0;
}

Eigen::VectorXd FlatPrior(const JointPrior& prior) {
  // Row-major flattening: index j * m + i.
  Eigen::VectorXd flat(prior.n() * prior.m());
  for (int j = 0; j < prior.n(); ++j) {
    for (int i = 0; i < prior.m(); ++i) flat(j * prior.m() + i) = prior.pmf(j, i);
  }
  return flat;
}

struct ShardTally {
  std::vector<Eigen::MatrixXd> joint;  // per policy, n x m
  std::vector<std::int64_t> errors;
  std::vector<TrialRecord> records;
};

ShardTally RunShard(std::span<const Estimator> policies,
                    const ObservationSampler& sampler,
                    const MonteCarloOptions& options, std::int64_t shard,
                    std::int64_t begin, std::int64_t end) {
  ShardTally tally;
  tally.joint.assign(policies.size(),
                     Eigen::MatrixXd::Zero(sampler.n, sampler.m));
  tally.errors.assign(policies.size(), 0);
  SplitMix64 rng = SplitMix64::Substream(options.seed, shard);
  Draw draw;
  for (std::int64_t t = begin; t < end; ++t) {
    sampler.draw(rng, draw);
    const bool keep = t < options.keep_records;
    TrialRecord record;
    for (size_t p = 0; p < policies.size(); ++p) {
      const int out = SampleIndex(rng, policies[p].probs.col(draw.symbol));
      tally.joint[p](draw.x, out) += 1.0;
      const bool correct = out == draw.y;
      if (!correct) ++tally.errors[p];
      if (keep) {
        record.outputs.push_back(out);
        record.correct.push_back(correct);
      }
    }
    if (keep) {
      record.x = draw.x;
      record.y = draw.y;
      record.symbol = draw.symbol;
      record.sensor_bins = draw.sensor_bins;
      if (sampler.bins > 0) {
        record.counts.assign(sampler.bins, 0);
        for (int b : draw.sensor_bins) ++record.counts[b];
      }
      tally.records.push_back(std::move(record));
    }
  }
  return tally;
}

EmpiricalReport Summarize(const Eigen::MatrixXd& joint, std::int64_t errors,
                          std::int64_t trials) {
  EmpiricalReport r;
  r.trials = trials;
  r.errors = errors;
  r.error_prob = static_cast<double>(errors) / static_cast<double>(trials);
  r.joint_counts = joint;
  const Eigen::MatrixXd freq = joint / static_cast<double>(trials);
  r.output_freq = freq.colwise().sum().transpose();
  r.x_given_output.resize(joint.rows(), joint.cols());
  for (Eigen::Index i = 0; i < joint.cols(); ++i) {
    const double total = joint.col(i).sum();
    if (total > 0.0) {
      r.x_given_output.col(i) = joint.col(i) / total;
    } else {
      r.x_given_output.col(i).setConstant(
          std::numeric_limits<double>::quiet_NaN());
    }
  }
  const Eigen::VectorXd x_freq = freq.rowwise().sum();
  double h_joint = 0.0;
  for (Eigen::Index k = 0; k < freq.size(); ++k) {
    const double p = freq(k);
    if (p > 0.0) h_joint -= p * std::log2(p);
  }
  r.cond_entropy_bits = h_joint - EntropyBits(r.output_freq);
  r.mutual_info_bits = EntropyBits(x_freq) - r.cond_entropy_bits;
  return r;
}

}  // namespace

ObservationSampler DiscreteChannelSampler(const Channel& ch) {
  ObservationSampler sampler;
  sampler.n = ch.n();
  sampler.m = ch.m();
  sampler.symbols = ch.symbols();
  sampler.draw = [flat = FlatPrior(ch.prior), rows = ch.given_xy,
                  m = ch.m()](SplitMix64& rng, Draw& d) {
    const int cell = SampleIndex(rng, flat);
    d.x = cell / m;
    d.y = cell % m;
    d.symbol = SampleIndex(rng, rows.row(cell).transpose());
    d.sensor_bins.clear();
  };
  return sampler;
}

absl::StatusOr<ObservationSampler> SensorArraySampler(
    const SensorModel& model, const Partition& partition, int sensors,
    std::shared_ptr<const CountAlphabet> alphabet) {
  if (auto s = ValidateSensorModel(model); !s.ok()) return s;
  if (sensors < 1) return absl::InvalidArgumentError("need at least 1 sensor");
  if (alphabet == nullptr && sensors != 1) {
    return absl::InvalidArgumentError("a sensor array needs a count alphabet");
  }
  if (alphabet != nullptr && (alphabet->sensors != sensors ||
                              alphabet->bins != partition.size())) {
    return absl::InvalidArgumentError("count alphabet does not match");
  }
  ObservationSampler sampler;
  sampler.n = model.prior.n();
  sampler.m = model.prior.m();
  sampler.symbols = alphabet ? alphabet->size() : partition.size();
  sampler.bins = partition.size();
  sampler.draw = [flat = FlatPrior(model.prior), model, partition, sensors,
                  alphabet](SplitMix64& rng, Draw& d) {
    const int m = model.prior.m();
    const int cell = SampleIndex(rng, flat);
    d.x = cell / m;
    d.y = cell % m;
    const double mean = model.Mean(d.x, d.y);
    d.sensor_bins.resize(sensors);
    for (int s = 0; s < sensors; ++s) {
      d.sensor_bins[s] =
          partition.BinOf(mean + model.noise_std * StandardNormal(rng));
    }
    if (alphabet == nullptr) {
      d.symbol = d.sensor_bins[0];
      return;
    }
    std::vector<int> counts(partition.size(), 0);
    for (int b : d.sensor_bins) ++counts[b];
    d.symbol = *alphabet->IndexOf(counts);
  };
  return sampler;
}

absl::StatusOr<MonteCarloResult> MonteCarloEval(
    std::span<const Estimator> policies, const ObservationSampler& sampler,
    const MonteCarloOptions& options) {
  if (options.trials < 1) {
    return absl::InvalidArgumentError("trials must be at least 1");
  }
  if (options.shard_size < 1) {
    return absl::InvalidArgumentError("shard size must be positive");
  }
  for (const Estimator& est : policies) {
    if (auto s = ValidateEstimator(est); !s.ok()) return s;
    if (est.outputs() != sampler.m || est.symbols() != sampler.symbols) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "policy is %dx%d, sampler produces %d outputs over %d symbols",
          est.outputs(), est.symbols(), sampler.m, sampler.symbols));
    }
  }

  const std::int64_t shards =
      (options.trials + options.shard_size - 1) / options.shard_size;
  std::vector<ShardTally> tallies(shards);
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < std::min<std::int64_t>(workers, shards); ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t s = w; s < shards; s += workers) {
          const std::int64_t begin = s * options.shard_size;
          const std::int64_t end =
              std::min(options.trials, begin + options.shard_size);
          tallies[s] = RunShard(policies, sampler, options, s, begin, end);
        }
      });
    }
  }

  MonteCarloResult result;
  for (size_t p = 0; p < policies.size(); ++p) {
    Eigen::MatrixXd joint = Eigen::MatrixXd::Zero(sampler.n, sampler.m);
    std::int64_t errors = 0;
    for (const ShardTally& t : tallies) {
      joint += t.joint[p];
      errors += t.errors[p];
    }
    result.policies.push_back(Summarize(joint, errors, options.trials));
  }
  for (ShardTally& t : tallies) {
    for (TrialRecord& r : t.records) result.records.push_back(std::move(r));
  }
  return result;
}

absl::StatusOr<EmpiricalReport> MonteCarloEval(
    const Estimator& est, const ObservationSampler& sampler,
    const MonteCarloOptions& options) {
  auto result = MonteCarloEval(std::span<const Estimator>(&est, 1), sampler,
                               options);
  if (!result.ok()) return result.status();
  return std::move(result->policies.front());
}

double BinomialSigma(double p, std::int64_t trials) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

bool WithinSigmas(double analytic, double empirical, std::int64_t trials,
                  double k) {
  return std::abs(empirical - analytic) <=
         k * BinomialSigma(analytic, trials) + 1e-12;
}

}  // namespace privest
