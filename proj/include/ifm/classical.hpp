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

// classical.hpp — likelihood analysis of classical interaction-free schemes.
//
// Two hypotheses with equal priors: the opaque object sits in the arm the
// photon reaches by reflection at the first beamsplitter (U) or it is absent
// from the interferometer (L). Beamsplitters transmit with amplitude t and
// reflect with amplitude i*r, r = sqrt(1 - t^2). Port T is the one that an
// empty balanced interferometer feeds with certainty.

#pragma once

#include <functional>
#include <numbers>

namespace ifm::classical {

struct TwoBSScheme {
    double t1{std::numbers::sqrt2 / 2.0};
    double t2{std::numbers::sqrt2 / 2.0};

    void validate() const;
};

struct OutcomeTable {
    // given U
    double p_abs_u{0.0};
    double p_R_u{0.0};
    double p_T_u{0.0};
    // given L
    double p_R_l{0.0};
    double p_T_l{0.0};
};

struct Likelihood {
    double L_m{0.5};
    double A{0.0};
};

struct ResonatorFigures {
    double R{1.0};
    double L_m{1.0};
    double A{0.0};
};

enum class Objective { likelihood, likelihood_minus_absorption };

struct SecondBSOptimum {
    double t2_star{0.0};
    double value{0.0};
};

OutcomeTable enumerate_outcomes(const TwoBSScheme& scheme);

// Guess the more likely hypothesis for every detector click; an absorbed
// photon identifies U for certain.
Likelihood likelihood(const OutcomeTable& table);

// Maximize over t2 in [0, 1] with t1 fixed.
SecondBSOptimum optimize_second_bs(double t1 = std::numbers::sqrt2 / 2.0,
                                   Objective objective = Objective::likelihood);

ResonatorFigures resonator_figures(double reflectance);

// Golden-section search for the maximum of a unimodal f on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-11);

}  // namespace ifm::classical
