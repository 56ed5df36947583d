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

#include "satriage/workflow/bands.hpp"

#include <cmath>
#include <numbers>

#include "satriage/common/error.hpp"

namespace satriage::workflow {

std::string_view to_string(Band band) {
  switch (band) {
  case Band::high:
    return "high";
  case Band::medium:
    return "medium";
  case Band::low:
    break;
  }
  return "low";
}

Band parse_band(std::string_view text) {
  if (text == "high")
    return Band::high;
  if (text == "medium")
    return Band::medium;
  if (text == "low")
    return Band::low;
  throw Error("unknown band " + std::string(text));
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw Error("quantile probability must lie in (0, 1)");
  // Acklam's rational approximation, refined by one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

BandThresholds bands_from_moments(double mu, double sigma, const std::string &cwe) {
  BandThresholds t;
  t.cwe = cwe;
  t.mu = mu;
  t.sigma = sigma;
  t.z_high = normal_quantile(kHighConfidence);
  t.z_med = normal_quantile(kMediumConfidence);
  t.t_high = mu + t.z_high * sigma;
  t.t_med = mu + t.z_med * sigma;
  t.fallback = false;
  return t;
}

BandThresholds fit_bands(std::span<const double> scores, const std::string &cwe) {
  double mu = 0.0;
  double sigma = 0.0;
  if (!scores.empty()) {
    for (double s : scores)
      mu += s;
    mu /= static_cast<double>(scores.size());
  }
  if (scores.size() > 1) {
    double ss = 0.0;
    for (double s : scores)
      ss += (s - mu) * (s - mu);
    sigma = std::sqrt(ss / static_cast<double>(scores.size() - 1));
  }
  BandThresholds t = bands_from_moments(mu, sigma, cwe);
  if (scores.size() < kMinBandSamples || sigma < kMinBandSigma) {
    t.t_high = kHighConfidence;
    t.t_med = kMediumConfidence;
    t.fallback = true;
  }
  return t;
}

Band assign_band(const BandThresholds &thresholds, double score) {
  if (score >= thresholds.t_high)
    return Band::high;
  if (score >= thresholds.t_med)
    return Band::medium;
  return Band::low;
}

Json to_json(const BandThresholds &t) {
  return {{"cwe", t.cwe},       {"mu", t.mu},         {"sigma", t.sigma},
          {"z_high", t.z_high}, {"z_med", t.z_med},   {"t_high", t.t_high},
          {"t_med", t.t_med},   {"fallback", t.fallback}};
}

BandThresholds bands_from_json(const Json &value) {
  BandThresholds t;
  t.cwe = value.value("cwe", std::string{});
  t.mu = value.at("mu").get<double>();
  t.sigma = value.at("sigma").get<double>();
  t.z_high = value.at("z_high").get<double>();
  t.z_med = value.at("z_med").get<double>();
  t.t_high = value.at("t_high").get<double>();
  t.t_med = value.at("t_med").get<double>();
  t.fallback = value.at("fallback").get<bool>();
  return t;
}

} // namespace satriage::workflow
