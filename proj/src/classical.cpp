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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace ifm::classical {

namespace {

using Amp = std::complex<double>;
using Arms = std::array<Amp, 2>;  // {transmitted arm, reflected arm}

Arms split(double t, Amp in_0, Amp in_1) {
    const Amp ir(0.0, std::sqrt(1.0 - t * t));
    return {t * in_0 + ir * in_1, ir * in_0 + t * in_1};
}

}  // namespace

void TwoBSScheme::validate() const {
    if (!(t1 >= 0.0 && t1 <= 1.0) || !(t2 >= 0.0 && t2 <= 1.0)) {
        throw std::invalid_argument("TwoBSScheme: transmittivities must lie in [0, 1]");
    }
}

OutcomeTable enumerate_outcomes(const TwoBSScheme& scheme) {
    scheme.validate();
    const Arms inner = split(scheme.t1, 1.0, 0.0);

    // Second splitter output 0 is port R, output 1 is port T.
    const Arms empty = split(scheme.t2, inner[0], inner[1]);
    const Arms blocked = split(scheme.t2, inner[0], 0.0);

    OutcomeTable table;
    table.p_abs_u = std::norm(inner[1]);
    table.p_R_u = std::norm(blocked[0]);
    table.p_T_u = std::norm(blocked[1]);
    table.p_R_l = std::norm(empty[0]);
    table.p_T_l = std::norm(empty[1]);
    return table;
}

Likelihood likelihood(const OutcomeTable& table) {
    Likelihood out;
    out.A = 0.5 * table.p_abs_u;
    out.L_m = out.A + 0.5 * std::max(table.p_R_u, table.p_R_l) + 0.5 * std::max(table.p_T_u, table.p_T_l);
    return out;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

SecondBSOptimum optimize_second_bs(double t1, Objective objective) {
    auto score = [&](double t2) {
        const Likelihood l = likelihood(enumerate_outcomes({t1, t2}));
        return objective == Objective::likelihood ? l.L_m : l.L_m - l.A;
    };
    SecondBSOptimum best;
    best.t2_star = golden_section_max(score, 0.0, 1.0);
    best.value = score(best.t2_star);
    return best;
}

ResonatorFigures resonator_figures(double reflectance) {
    if (!(reflectance >= 0.0 && reflectance <= 1.0)) {
        throw std::invalid_argument("resonator_figures: reflectance must lie in [0, 1]");
    }
    // Opaque object: every photon is either reflected (object detected) or
    // absorbed (object detected destructively).
    return {reflectance, 1.0, 1.0 - reflectance};
}

}  // namespace ifm::classical
