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

#include "qdisorder/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "qdisorder/errors.hpp"

namespace qdisorder {

SweepMaximum find_max_over_sweep(std::span<const SweepPoint> curve) {
    if (curve.empty()) throw InsufficientDataError("cannot take the maximum of an empty sweep");
    const SweepPoint *best = &curve.front();
    for (const SweepPoint &p : curve) {
        const double v = p.estimate.mean;
        if (v > best->estimate.mean || (v == best->estimate.mean && p.x < best->x)) best = &p;
    }
    return SweepMaximum{best->x, best->estimate.mean, best->estimate.std_error};
}

void ScalingSeries::validate() const {
    if (values.size() != sizes.size() || std_errors.size() != sizes.size()) {
        throw InsufficientDataError("scaling series arrays differ in length");
    }
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (!std::isfinite(values[k]) || !std::isfinite(std_errors[k]) || !(sizes[k] > 0.0)) {
            throw InsufficientDataError("scaling series has a non-finite entry");
        }
        if (k > 0 && !(sizes[k] > sizes[k - 1])) {
            throw InsufficientDataError("scaling series sizes must be strictly increasing");
        }
        if (!(sizes[k] < reference_size)) {
            throw InsufficientDataError("scaling series sizes must lie below the reference size");
        }
    }
    if (!std::isfinite(reference_value) || !std::isfinite(reference_std_error)) {
        throw InsufficientDataError("scaling reference is not finite");
    }
}

std::size_t FitResult::retained() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto &p) { return p.retained; }));
}

FitResult scaling_fit(const ScalingSeries &series, double noise_factor) {
    series.validate();
    FitResult fit;
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < series.sizes.size(); ++k) {
        ScalingPoint p;
        p.size = series.sizes[k];
        p.abs_difference = std::abs(series.values[k] - series.reference_value);
        p.combined_std_error = std::hypot(series.std_errors[k], series.reference_std_error);
        p.retained = p.abs_difference > 0.0 && p.abs_difference > noise_factor * p.combined_std_error;
        if (p.retained) {
            xs.push_back(std::log(p.size));
            ys.push_back(std::log(p.abs_difference));
        }
        fit.points.push_back(p);
    }
    if (xs.size() < 3) {
        throw InsufficientDataError("scaling fit needs at least 3 points above the noise floor, got " +
                                    std::to_string(xs.size()));
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double r = ys[k] - (fit.intercept + fit.slope * xs[k]);
        fit.residuals.push_back(r);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
    return fit;
}

}  // namespace qdisorder
