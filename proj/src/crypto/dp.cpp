// Copyright 2026 The fedkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fedkit/crypto/dp.hpp"

#include <cmath>

#include "fedkit/common/error.hpp"

namespace fedkit::crypto {

namespace {
void validate(const DpParams& p) {
  if (!(p.epsilon > 0)) throw ParameterError("dp: epsilon must be positive");
  if (!(p.clip_norm > 0)) throw ParameterError("dp: clip_norm must be positive");
  if (p.mechanism == DpMechanism::kGaussian && std::isfinite(p.epsilon) &&
      !(p.delta > 0 && p.delta < 1)) {
    throw ParameterError("dp: gaussian mechanism needs delta in (0, 1)");
  }
}
}  // namespace

double dp_noise_scale(const DpParams& params, double sensitivity) {
  validate(params);
  if (std::isinf(params.epsilon)) return 0.0;
  if (params.mechanism == DpMechanism::kLaplace) {
    return sensitivity / params.epsilon;
  }
  return sensitivity * std::sqrt(2.0 * std::log(1.25 / params.delta)) / params.epsilon;
}

std::vector<double> clip_l2(std::span<const double> v, double c) {
  if (!(c > 0)) throw ParameterError("clip_l2: bound must be positive");
  double sq = 0;
  for (double x : v) sq += x * x;
  double norm = std::sqrt(sq);
  std::vector<double> out(v.begin(), v.end());
  if (norm > c) {
    double f = c / norm;
    for (double& x : out) x *= f;
  }
  return out;
}

double sample_laplace(double scale, Rng& rng) {
  if (scale == 0) return 0.0;
  double u = rng.next_open_unit() - 0.5;  // (-1/2, 1/2)
  return -scale * (u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
}

double sample_gaussian(double stddev, Rng& rng) {
  if (stddev == 0) return 0.0;
  return stddev * rng.next_gaussian();
}

std::vector<double> dp_perturb(std::span<const double> v, const DpParams& params, Rng& rng) {
  double scale = dp_noise_scale(params, params.clip_norm);
  std::vector<double> out = clip_l2(v, params.clip_norm);
  for (double& x : out) {
    x += params.mechanism == DpMechanism::kLaplace ? sample_laplace(scale, rng)
                                                   : sample_gaussian(scale, rng);
  }
  return out;
}

}  // namespace fedkit::crypto
