// Copyright 2026 The qdisorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qdisorder/ensemble.hpp"

namespace qdisorder {

struct SweepPoint {
    double x = 0.0;
    QuenchedEstimate estimate;
};

struct SweepMaximum {
    double x = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

/// Largest mean on the curve; ties go to the smaller abscissa.
SweepMaximum find_max_over_sweep(std::span<const SweepPoint> curve);

/// Sweep maxima Q_max(N) against a reference size N_c standing in for the
/// infinite chain. `reference_size` may be +infinity for an exact limit.
struct ScalingSeries {
    std::string observable;
    std::vector<double> sizes;
    std::vector<double> values;
    std::vector<double> std_errors;
    double reference_size = 0.0;
    double reference_value = 0.0;
    double reference_std_error = 0.0;

    void validate() const;
};

/// Points whose |Q(N) - Q(N_c)| is not above this multiple of the combined
/// standard error are dropped from the fit.
inline constexpr double kNoiseRetentionFactor = 10.0;

struct ScalingPoint {
    double size = 0.0;
    double abs_difference = 0.0;
    double combined_std_error = 0.0;
    bool retained = false;
};

struct FitResult {
    /// ln|Q(N) - Q(N_c)| ~ intercept + slope ln N; the decay exponent is -slope.
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<ScalingPoint> points;
    std::vector<double> residuals;  // one per retained point, in size order

    std::size_t retained() const;
};

/// Ordinary least squares of ln|Q(N) - Q(N_c)| on ln N. Throws
/// InsufficientDataError with fewer than three retained points.
FitResult scaling_fit(const ScalingSeries &series, double noise_factor = kNoiseRetentionFactor);

}  // namespace qdisorder
