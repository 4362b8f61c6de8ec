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

#include "analysis/stats.h"

#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

namespace cocreate {
namespace {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // sample variance, n - 1 denominator
};

Moments SampleMoments(std::span<const double> xs) {
  Moments m;
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.variance = ss / (xs.size() - 1);
  return m;
}

double Clamp01(double p) { return std::min(1.0, std::max(0.0, p)); }

}  // namespace

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double StudentTCdf(double t, double df) {
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  return boost::math::cdf(boost::math::students_t(df), t);
}

absl::StatusOr<ZTestResult> TwoProportionZTest(const ProportionTestInput& in,
                                               bool pooled) {
  if (in.n1 < 1 || in.n2 < 1) {
    return absl::InvalidArgumentError("sample sizes must be at least 1");
  }
  if (!(in.p1 >= 0.0 && in.p1 <= 1.0 && in.p2 >= 0.0 && in.p2 <= 1.0)) {
    return absl::InvalidArgumentError("rates must lie in [0, 1]");
  }
  double variance = 0.0;
  if (pooled) {
    const double p = (in.p1 * in.n1 + in.p2 * in.n2) / (in.n1 + in.n2);
    variance = p * (1.0 - p) * (1.0 / in.n1 + 1.0 / in.n2);
  } else {
    variance = in.p1 * (1.0 - in.p1) / in.n1 + in.p2 * (1.0 - in.p2) / in.n2;
  }
  const double diff = in.p2 - in.p1;
  ZTestResult r;
  if (variance <= 0.0) {
    if (diff == 0.0) return ZTestResult{0.0, 1.0};
    r.z = diff > 0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
  } else {
    r.z = diff / std::sqrt(variance);
  }
  // Upper tails via the complementary CDF keep precision for large |z|.
  r.p = in.sided == Sided::kOneSidedGreater ? NormalCdf(-r.z)
                                            : 2.0 * NormalCdf(-std::abs(r.z));
  r.p = Clamp01(r.p);
  return r;
}

absl::StatusOr<WelchResult> WelchTTest(std::span<const double> local,
                                       std::span<const double> global) {
  if (local.size() < 2 || global.size() < 2) {
    return absl::InvalidArgumentError("each sample needs at least two values");
  }
  const Moments l = SampleMoments(local);
  const Moments g = SampleMoments(global);
  const double vl = l.variance / local.size();
  const double vg = g.variance / global.size();
  WelchResult r;
  r.mean_local = l.mean;
  r.mean_global = g.mean;
  const double diff = g.mean - l.mean;
  const double se2 = vl + vg;
  if (se2 <= 0.0) {
    r.df = static_cast<double>(local.size() + global.size() - 2);
    if (diff == 0.0) {
      r.t = 0.0;
      r.p = 0.5;
    } else {
      r.t = diff > 0 ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
      r.p = diff > 0 ? 1.0 : 0.0;
    }
    return r;
  }
  r.t = diff / std::sqrt(se2);
  r.df = se2 * se2 / (vl * vl / (local.size() - 1) + vg * vg / (global.size() - 1));
  // Small p supports mean_global < mean_local.
  r.p = Clamp01(StudentTCdf(r.t, r.df));
  return r;
}

}  // namespace cocreate
