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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "qdisorder/errors.hpp"
#include "qdisorder/scaling.hpp"

using namespace qdisorder;

namespace {

SweepPoint pt(double x, double mean, double se = 0.0) {
    SweepPoint p;
    p.x = x;
    p.estimate.mean = mean;
    p.estimate.std_error = se;
    return p;
}

ScalingSeries power_law(double q_inf, double a, double exponent, std::vector<double> sizes) {
    ScalingSeries s;
    s.observable = "delta";
    s.sizes = sizes;
    for (double n : sizes) {
        s.values.push_back(q_inf + a * std::pow(n, -exponent));
        s.std_errors.push_back(0.0);
    }
    s.reference_size = std::numeric_limits<double>::infinity();
    s.reference_value = q_inf;
    return s;
}

}  // namespace

TEST(FindMax, Examples) {
    const std::vector<SweepPoint> zeros{pt(-1, 0), pt(0, 0), pt(1, 0)};
    const SweepMaximum m = find_max_over_sweep(zeros);
    EXPECT_EQ(m.x, -1.0);
    EXPECT_EQ(m.value, 0.0);
    const std::vector<SweepPoint> one{pt(0.3, 0.2, 0.01)};
    EXPECT_EQ(find_max_over_sweep(one).x, 0.3);
    EXPECT_EQ(find_max_over_sweep(one).std_error, 0.01);
    const std::vector<SweepPoint> peak{pt(-1, 0.1), pt(0, 0.3, 0.02), pt(1, 0.2)};
    EXPECT_EQ(find_max_over_sweep(peak).x, 0.0);
    EXPECT_EQ(find_max_over_sweep(peak).std_error, 0.02);
    // ties go to the smaller abscissa whatever the input order
    const std::vector<SweepPoint> tie{pt(2, 0.5), pt(1, 0.5)};
    EXPECT_EQ(find_max_over_sweep(tie).x, 1.0);
    EXPECT_THROW(find_max_over_sweep(std::vector<SweepPoint>{}), InsufficientDataError);
}

TEST(ScalingFit, ExactPowerLaw) {
    const FitResult f = scaling_fit(power_law(0.4, 3.0, 2.0, {10, 14, 20, 30, 40}));
    EXPECT_NEAR(f.slope, -2.0, 1e-6);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-6);
    EXPECT_GE(f.r_squared, 1.0 - 1e-9);
    EXPECT_EQ(f.retained(), 5u);
    for (double r : f.residuals) EXPECT_NEAR(r, 0.0, 1e-9);
}

TEST(ScalingFit, ApproachFromBelow) {
    const FitResult f = scaling_fit(power_law(0.4, -0.7, 3.27, {10, 14, 20, 30, 40}));
    EXPECT_NEAR(f.slope, -3.27, 1e-6);
}

TEST(ScalingFit, SlopeInvariantUnderRescaling) {
    ScalingSeries s = power_law(0.1, 0.5, 2.3, {10, 14, 20, 30, 40});
    s.values[2] += 1e-4;  // make it imperfect
    const FitResult a = scaling_fit(s);
    for (double &v : s.values) v *= 7.0;
    s.reference_value *= 7.0;
    const FitResult b = scaling_fit(s);
    EXPECT_NEAR(a.slope, b.slope, 1e-12);
    EXPECT_NEAR(b.intercept - a.intercept, std::log(7.0), 1e-12);
    EXPECT_NEAR(a.r_squared, b.r_squared, 1e-12);
}

TEST(ScalingFit, FiniteReference) {
    ScalingSeries s = power_law(0.0, 1.0, 2.0, {10, 14, 20, 30, 40});
    s.reference_size = 50;
    s.reference_value = 0.0;
    EXPECT_NEAR(scaling_fit(s).slope, -2.0, 1e-6);
}

TEST(ScalingFit, NoiseGuardDropsPoints) {
    ScalingSeries s = power_law(0.2, 1.0, 2.0, {10, 14, 20, 30, 40});
    // 1/N^2 at N = 30, 40 is about 1e-3 and 6e-4; stderr 1.2e-4 keeps only 10, 14, 20
    s.std_errors.assign(5, 1.2e-4);
    const FitResult f = scaling_fit(s);
    EXPECT_EQ(f.retained(), 3u);
    EXPECT_FALSE(f.points[3].retained);
    EXPECT_FALSE(f.points[4].retained);
    s.std_errors.assign(5, 2e-3);
    EXPECT_THROW(scaling_fit(s), InsufficientDataError);
}

TEST(ScalingFit, NeedsThreePoints) {
    EXPECT_THROW(scaling_fit(power_law(0.2, 1.0, 2.0, {10, 20})), InsufficientDataError);
}

TEST(ScalingSeries, Validation) {
    ScalingSeries s = power_law(0.2, 1.0, 2.0, {10, 20, 14});
    EXPECT_THROW(s.validate(), std::exception);
    s = power_law(0.2, 1.0, 2.0, {10, 14, 20});
    s.reference_size = 20;
    EXPECT_THROW(s.validate(), std::exception);
}
