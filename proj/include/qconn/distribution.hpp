// Copyright 2026 The qconn authors
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

#include <algorithm>
#include <cmath>

#include "qconn/errors.hpp"
#include "qconn/rng.hpp"

namespace qconn {

/// Edge-concurrence distribution p_C: a point mass at c0 (homogeneous
/// network) or a uniform distribution given by mean and variance.
///
/// A uniform with mean cbar and variance s2 has support
/// [cbar - sqrt(3 s2), cbar + sqrt(3 s2)]. To keep the support inside
/// [0, 1] without moving the mean, the variance is clipped to
///   s2_eff = min(s2, min(cbar, 1 - cbar)^2 / 3),
/// the largest admissible value.
class ConcurrenceDistribution {
 public:
  enum class Kind { delta, uniform };

  static ConcurrenceDistribution delta(double c0) {
    detail::require(c0 >= 0.0 && c0 <= 1.0, errc::invalid_parameter,
                    "delta concurrence must lie in [0,1]");
    ConcurrenceDistribution d;
    d.kind_ = Kind::delta;
    d.mean_ = c0;
    return d;
  }

  static ConcurrenceDistribution uniform(double mean, double variance) {
    detail::require(mean >= 0.0 && mean <= 1.0, errc::invalid_parameter,
                    "uniform mean must lie in [0,1]");
    detail::require(variance >= 0.0, errc::invalid_parameter,
                    "variance must be non-negative");
    ConcurrenceDistribution d;
    d.kind_ = Kind::uniform;
    d.mean_ = mean;
    d.requested_variance_ = variance;
    const double cap = std::min(mean, 1.0 - mean);
    d.effective_variance_ = std::min(variance, cap * cap / 3.0);
    const double half_width = std::sqrt(3.0 * d.effective_variance_);
    d.min_c_ = std::max(0.0, mean - half_width);
    d.max_c_ = std::min(1.0, mean + half_width);
    return d;
  }

  Kind kind() const noexcept { return kind_; }
  double mean() const noexcept { return mean_; }
  double requested_variance() const noexcept { return requested_variance_; }
  double effective_variance() const noexcept { return effective_variance_; }
  double min_c() const noexcept {
    return kind_ == Kind::delta ? mean_ : min_c_;
  }
  double max_c() const noexcept {
    return kind_ == Kind::delta ? mean_ : max_c_;
  }

  /// Delta draws consume no randomness.
  double sample(Rng& rng) const {
    if (kind_ == Kind::delta) return mean_;
    return rng.uniform(min_c_, max_c_);
  }

 private:
  ConcurrenceDistribution() = default;

  Kind kind_ = Kind::delta;
  double mean_ = 0.0;
  double requested_variance_ = 0.0;
  double effective_variance_ = 0.0;
  double min_c_ = 0.0;
  double max_c_ = 0.0;
};

}  // namespace qconn
