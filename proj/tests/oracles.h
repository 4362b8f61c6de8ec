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


// Independent reference computations for the numerical checks. Nothing here
// calls the code under test: the formulas are re-derived with wider types,
// a different evaluation order or a different method.

#ifndef COCREATE_TESTS_ORACLES_H_
#define COCREATE_TESTS_ORACLES_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cocreate::oracle {

struct Point {
  std::string topic;
  int start = 0;
  int end = 0;
};

// Gaussian kernel weights normalized over points, summed per topic, using
// long double and a direct (unshifted) exponential.
std::map<std::string, long double> BlendWeights(int line,
                                                const std::vector<Point>& points,
                                                long double sigma);

// Phi(x) from erf evaluated with 50 decimal digits.
double NormalCdf(double x);

// One-sided Welch p-value for H0: mean(global) >= mean(local), with the t
// density integrated by composite Simpson's rule.
struct Welch {
  double t = 0.0;
  double df = 0.0;
  double p = 0.0;
};
Welch WelchBySimpson(const std::vector<double>& local,
                     const std::vector<double>& global);

// Two-proportion z statistic and one-sided p = P(Z > z), in long double
// from raw counts.
std::pair<double, double> ZTestFromCounts(int k1, int n1, int k2, int n2);

// Randomized edit/freeze/unfreeze/regenerate interleavings against a story
// context on the mock backend. Returns the number of regenerations that
// changed a line which was frozen when the regeneration started.
struct FreezeRun {
  int sequences = 0;
  int regenerations = 0;
  int violations = 0;
};
FreezeRun FreezeInterleavings(int sequences, uint64_t seed);

}  // namespace cocreate::oracle

#endif  // COCREATE_TESTS_ORACLES_H_
