// Copyright 2026 The ifm-lab Authors
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

#include "ifm/classical.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

using namespace ifm::classical;
using std::numbers::sqrt2;

namespace {

const double kHalf = sqrt2 / 2;

// Path-sum oracle: every route from the source to a detector is a product of
// per-splitter factors (t for staying in the same lane, i r for crossing).
// Lane 0 leaves the first splitter by transmission, lane 1 by reflection; the
// object blocks lane 1.  At the second splitter lane 0 -> R is "stay".
OutcomeTable path_sum(double t1, double t2) {
    using C = std::complex<double>;
    const double r1 = std::sqrt(1 - t1 * t1), r2 = std::sqrt(1 - t2 * t2);
    const C i(0, 1);
    const C via0_R = t1 * t2, via0_T = t1 * (i * r2);
    const C via1_R = (i * r1) * (i * r2), via1_T = (i * r1) * t2;
    OutcomeTable o;
    o.p_abs_u = std::norm(i * r1);
    o.p_R_u = std::norm(via0_R);
    o.p_T_u = std::norm(via0_T);
    o.p_R_l = std::norm(via0_R + via1_R);
    o.p_T_l = std::norm(via0_T + via1_T);
    return o;
}

// Closed form on the branch where R is credited to U: L = 5/8 + cos2θ/8 + sin2θ/4.
double closed_form_L(double t2) {
    const double th = std::acos(t2);
    return 5.0 / 8 + std::cos(2 * th) / 8 + std::sin(2 * th) / 4;
}

}  // namespace

TEST_CASE("balanced scheme reproduces the textbook table") {
    const OutcomeTable o = enumerate_outcomes({kHalf, kHalf});
    CHECK(std::abs(o.p_abs_u - 0.5) <= 1e-12);
    CHECK(std::abs(o.p_R_u - 0.25) <= 1e-12);
    CHECK(std::abs(o.p_T_u - 0.25) <= 1e-12);
    CHECK(std::abs(o.p_R_l) <= 1e-12);
    CHECK(std::abs(o.p_T_l - 1.0) <= 1e-12);
    // joint probabilities with equal priors
    CHECK(0.5 * o.p_abs_u == doctest::Approx(0.25));
    CHECK(0.5 * o.p_R_u == doctest::Approx(0.125));
    CHECK(0.5 * o.p_T_u == doctest::Approx(0.125));
    CHECK(0.5 * o.p_T_l == doctest::Approx(0.5));

    const Likelihood l = likelihood(o);
    CHECK(std::abs(l.L_m - 0.875) <= 1e-12);
    CHECK(std::abs(l.A - 0.25) <= 1e-12);
    CHECK(std::abs(l.L_m - l.A - 0.625) <= 1e-12);
}

TEST_CASE("enumerate_outcomes") {
    SUBCASE("fully transmitting first splitter never meets the object") {
        CHECK(enumerate_outcomes({1.0, 0.3}).p_abs_u == 0.0);
    }
    SUBCASE("path-sum oracle") {
        for (double t2 : {0.9, 0.1, 0.5, 1.0, 0.0}) {
            const OutcomeTable a = enumerate_outcomes({kHalf, t2});
            const OutcomeTable b = path_sum(kHalf, t2);
            CHECK(std::abs(a.p_abs_u - b.p_abs_u) <= 1e-12);
            CHECK(std::abs(a.p_R_u - b.p_R_u) <= 1e-12);
            CHECK(std::abs(a.p_T_u - b.p_T_u) <= 1e-12);
            CHECK(std::abs(a.p_R_l - b.p_R_l) <= 1e-12);
            CHECK(std::abs(a.p_T_l - b.p_T_l) <= 1e-12);
        }
    }
    SUBCASE("normalization and likelihood bounds over random schemes") {
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int k = 0; k < 1000; ++k) {
            const double t1 = u(rng), t2 = u(rng);
            const OutcomeTable o = enumerate_outcomes({t1, t2});
            CHECK(std::abs(o.p_abs_u + o.p_R_u + o.p_T_u - 1.0) <= 1e-12);
            CHECK(std::abs(o.p_R_l + o.p_T_l - 1.0) <= 1e-12);
            const OutcomeTable ref = path_sum(t1, t2);
            CHECK(std::abs(o.p_R_l - ref.p_R_l) <= 1e-12);

            const Likelihood l = likelihood(o);
            CHECK(l.L_m >= 0.5 - 1e-12);
            CHECK(l.L_m <= 1.0 + 1e-12);
            // relabeling the detectors changes nothing
            OutcomeTable swapped = o;
            std::swap(swapped.p_R_u, swapped.p_T_u);
            std::swap(swapped.p_R_l, swapped.p_T_l);
            CHECK(likelihood(swapped).L_m == doctest::Approx(l.L_m).epsilon(1e-14));
        }
    }
    SUBCASE("identical conditionals carry no information") {
        const OutcomeTable same{0.0, 0.3, 0.7, 0.3, 0.7};
        CHECK(likelihood(same).L_m == doctest::Approx(0.5));
    }
    SUBCASE("invalid transmittivity") {
        CHECK_THROWS_AS(enumerate_outcomes({1.1, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_outcomes({0.5, -0.1}), std::invalid_argument);
    }
}

TEST_CASE("closed-form reduction at t1 = 1/sqrt2") {
    // Valid while R is credited to U, i.e. cos^2θ >= 1 - sin2θ; this branch
    // contains the optimum.
    for (double t2 = 0.45; t2 <= 1.0; t2 += 0.01) {
        const double th = std::acos(t2);
        if (t2 * t2 < 1 - std::sin(2 * th)) continue;
        CHECK(likelihood(enumerate_outcomes({kHalf, t2})).L_m == doctest::Approx(closed_form_L(t2)).epsilon(1e-13));
    }
}

TEST_CASE("optimize_second_bs") {
    const double t2_exact = std::sqrt((1 + 1 / std::sqrt(5.0)) / 2);
    const double l_exact = (5 + std::sqrt(5.0)) / 8;

    SUBCASE("likelihood") {
        const SecondBSOptimum opt = optimize_second_bs(kHalf, Objective::likelihood);
        CHECK(std::abs(opt.t2_star - t2_exact) <= 1e-8);
        CHECK(std::abs(opt.value - l_exact) <= 1e-9);
        const Likelihood l = likelihood(enumerate_outcomes({kHalf, opt.t2_star}));
        CHECK(std::abs(l.L_m - l.A - (3 + std::sqrt(5.0)) / 8) <= 1e-9);
    }
    SUBCASE("grid-scan oracle for both objectives") {
        for (Objective obj : {Objective::likelihood, Objective::likelihood_minus_absorption}) {
            double best = -1, best_t2 = 0;
            const int n = 1000000;
            for (int k = 0; k <= n; ++k) {
                const double t2 = static_cast<double>(k) / n;
                const Likelihood l = likelihood(enumerate_outcomes({kHalf, t2}));
                const double v = obj == Objective::likelihood ? l.L_m : l.L_m - l.A;
                if (v > best) best = v, best_t2 = t2;
            }
            const SecondBSOptimum opt = optimize_second_bs(kHalf, obj);
            CHECK(opt.value >= best - 1e-12);
            CHECK(opt.value - best <= 1e-11);  // grid spacing 1e-6, quadratic peak
            CHECK(std::abs(opt.t2_star - best_t2) <= 2e-6);
        }
    }
    SUBCASE("golden section on a smooth test function") {
        const double x = golden_section_max([](double v) { return -(v - 0.3) * (v - 0.3); }, 0.0, 1.0);
        CHECK(std::abs(x - 0.3) <= 1e-9);
    }
}

TEST_CASE("resonator_figures") {
    const ResonatorFigures one = resonator_figures(1.0);
    CHECK(one.A == 0.0);
    CHECK(one.L_m - one.A == 1.0);
    CHECK(resonator_figures(0.0).A == 1.0);
    const ResonatorFigures r = resonator_figures(0.9);
    CHECK(r.L_m == 1.0);
    CHECK(r.A == doctest::Approx(0.1));
    CHECK(r.L_m - r.A == doctest::Approx(0.9));
    CHECK_THROWS_AS(resonator_figures(1.5), std::invalid_argument);
    CHECK_THROWS_AS(resonator_figures(-0.1), std::invalid_argument);
}
