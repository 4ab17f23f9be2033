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

#pragma once

#include <span>
#include <vector>

#include "fedkit/common/rng.hpp"

namespace fedkit::crypto {

enum class DpMechanism { kLaplace, kGaussian };

struct DpParams {
  DpMechanism mechanism = DpMechanism::kGaussian;
  double epsilon = 1.0;     // > 0; +infinity means zero noise (test mode)
  double delta = 1e-5;      // in (0, 1) for the Gaussian mechanism
  double clip_norm = 1.0;   // L2 clipping bound C, > 0
};

// Noise scale for the given sensitivity: Laplace b = s / epsilon; Gaussian
// sigma = s * sqrt(2 ln(1.25 / delta)) / epsilon (Dwork & Roth, Thm. A.1).
double dp_noise_scale(const DpParams& params, double sensitivity);

// Scales v down to L2 norm <= c; direction preserved.
std::vector<double> clip_l2(std::span<const double> v, double c);

// Clip to clip_norm, then add per-coordinate noise of the configured
// mechanism with sensitivity = clip_norm.
std::vector<double> dp_perturb(std::span<const double> v, const DpParams& params, Rng& rng);

double sample_laplace(double scale, Rng& rng);
double sample_gaussian(double stddev, Rng& rng);

}  // namespace fedkit::crypto
