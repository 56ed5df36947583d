// Copyright 2026 The satriage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <string>
#include <string_view>

#include "satriage/common/json_io.hpp"

namespace satriage::workflow {

enum class Band { low, medium, high };

std::string_view to_string(Band band);
Band parse_band(std::string_view text);

inline constexpr double kHighConfidence = 0.95;
inline constexpr double kMediumConfidence = 0.66;
inline constexpr std::size_t kMinBandSamples = 30;
inline constexpr double kMinBandSigma = 1e-9;

struct BandThresholds {
  std::string cwe;
  double mu = 0.0;
  double sigma = 0.0;
  double z_high = 0.0;
  double z_med = 0.0;
  double t_high = kHighConfidence;
  double t_med = kMediumConfidence;
  /// True when the absolute 0.95 / 0.66 cutoffs are in force.
  bool fallback = true;
};

/// Inverse standard normal CDF for p in (0, 1).
double normal_quantile(double p);

/// Thresholds from mu and sigma directly (no fallback).
BandThresholds bands_from_moments(double mu, double sigma, const std::string &cwe = {});

/// Sample mean and standard deviation of the scores; fewer than 30 scores
/// or sigma below 1e-9 selects the absolute fallback.
BandThresholds fit_bands(std::span<const double> scores, const std::string &cwe = {});

Band assign_band(const BandThresholds &thresholds, double score);

Json to_json(const BandThresholds &thresholds);
BandThresholds bands_from_json(const Json &value);

} // namespace satriage::workflow
