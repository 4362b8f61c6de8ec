// Copyright 2026 The cocreate Authors
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

#include "context/blend.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "core/errors.h"

namespace cocreate {
namespace {

// Relative tolerance under which two topic weights count as tied.
constexpr double kTieEpsilon = 1e-12;

}  // namespace

absl::StatusOr<std::map<std::string, double>> BlendWeights(
    int line_index, const SketchSpec& sketch) {
  if (sketch.empty()) {
    return MakeError(ErrorCode::kNoControlSignal, "sketch has no control points");
  }
  const double two_sigma_sq = 2.0 * sketch.sigma * sketch.sigma;

  // Work in log space and shift by the largest exponent so that far-away
  // kernels cannot underflow every term to zero.
  std::vector<double> exponents;
  exponents.reserve(sketch.control_points.size());
  double max_exponent = -std::numeric_limits<double>::infinity();
  for (const auto& point : sketch.control_points) {
    const double d = line_index - point.center();
    exponents.push_back(-(d * d) / two_sigma_sq);
    max_exponent = std::max(max_exponent, exponents.back());
  }
  double total = 0.0;
  for (double& e : exponents) {
    e = std::exp(e - max_exponent);
    total += e;
  }

  std::map<std::string, double> weights;
  for (size_t j = 0; j < exponents.size(); ++j) {
    weights[sketch.control_points[j].topic] += exponents[j] / total;
  }
  return weights;
}

std::string DominantTopic(int line_index, const SketchSpec& sketch) {
  auto weights = BlendWeights(line_index, sketch);
  if (!weights.ok()) return kGenericTopic;

  std::map<std::string, double> lowest_center;
  for (const auto& point : sketch.control_points) {
    auto [it, inserted] = lowest_center.emplace(point.topic, point.center());
    if (!inserted) it->second = std::min(it->second, point.center());
  }

  const std::string* best = nullptr;
  double best_weight = -1.0;
  // std::map iterates topics lexicographically, which settles the last tie.
  for (const auto& [topic, weight] : *weights) {
    if (best == nullptr) {
      best = &topic;
      best_weight = weight;
      continue;
    }
    const double tol = kTieEpsilon * std::max(weight, best_weight);
    if (weight > best_weight + tol) {
      best = &topic;
      best_weight = weight;
    } else if (std::abs(weight - best_weight) <= tol &&
               lowest_center[topic] < lowest_center[*best]) {
      best = &topic;
      best_weight = weight;
    }
  }
  return *best;
}

}  // namespace cocreate
