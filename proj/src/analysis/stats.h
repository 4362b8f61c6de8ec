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

#ifndef COCREATE_ANALYSIS_STATS_H_
#define COCREATE_ANALYSIS_STATS_H_

#include <span>

#include "absl/status/statusor.h"

namespace cocreate {

// Standard normal CDF.
double NormalCdf(double x);

// CDF of Student's t distribution with `df` > 0 degrees of freedom.
double StudentTCdf(double t, double df);

enum class Sided {
  kOneSidedGreater,  // H0: p2 <= p1
  kTwoSided,         // H0: p2 == p1
};

struct ProportionTestInput {
  double p1 = 0.0;
  int n1 = 0;
  double p2 = 0.0;
  int n2 = 0;
  Sided sided = Sided::kOneSidedGreater;
};

struct ZTestResult {
  double z = 0.0;
  double p = 1.0;
};

// Two-proportion z-test of p2 against p1. Unpooled standard error unless
// `pooled`. With zero standard error and p1 == p2 the result is z = 0,
// p = 1; with p1 != p2 it is z = +-inf.
absl::StatusOr<ZTestResult> TwoProportionZTest(const ProportionTestInput& input,
                                               bool pooled = false);

struct WelchResult {
  double mean_local = 0.0;
  double mean_global = 0.0;
  double t = 0.0;
  double df = 0.0;
  double p = 0.5;
};

// Welch's t-test with Welch-Satterthwaite degrees of freedom and the one-
// sided p-value for H0: mean_global >= mean_local. Each sample needs at
// least two values.
absl::StatusOr<WelchResult> WelchTTest(std::span<const double> local,
                                       std::span<const double> global);

}  // namespace cocreate

#endif  // COCREATE_ANALYSIS_STATS_H_
