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

// measures.hpp — which-path and complementarity measures.
//
// Every function expects the atom mode (see models.hpp) to be the first mode
// of the state's space. All other modes form the probe.

#pragma once

#include "ifm/dynamics.hpp"
#include "ifm/hilbert.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace ifm {

// How the upper-path atom's internal state enters the path markers.
//   kept:   the marker is (internal g/e) ⊗ probe. Pure joint states give pure
//           markers, so D^2 + V^2 = 1 holds exactly for unitary evolution.
//   traced: rho_u = <g-|rho|g-> + <e-|rho|e->, an operator on the probe alone.
enum class InternalState { kept, traced };

inline constexpr std::string_view kInternalLabel = "atom_internal";

// Unnormalized path-conditioned marker states; Tr upper + Tr lower = Tr rho.
struct PathSplit {
    LinOp upper;
    LinOp lower;
};

PathSplit path_split(const DensityMatrix& rho, InternalState internal = InternalState::kept);

// Trace norm of (upper - lower).
double distinguishability(const PathSplit& split);

// sum_i |<psi_i|(upper - lower)|psi_i>| over the columns of `basis`
// (orthonormal, spanning the marker space). Defaults to the number basis.
double measured_distinguishability(const PathSplit& split, const std::optional<Matrix>& basis = std::nullopt);

// 2 |<g-| Tr_probe rho |-g>|
double visibility(const DensityMatrix& rho);

// A(t) series recorded by the integrator. Throws if the run has no "A" accumulator.
std::vector<double> absorption(const Trajectory& traj);

// Atom state given one photon in `detector_label`: project, trace out the
// probe, normalize. Throws std::domain_error when the branch probability is
// below 1e-12.
DensityMatrix condition_on_detector(const DensityMatrix& rho, std::string_view detector_label);

// Probability of finding one photon in `detector_label`.
double detector_probability(const DensityMatrix& rho, std::string_view detector_label);

// 50 % beamsplitter on the detector pair:
//   |d_R> -> (|d_R> + |d_T>)/sqrt2,  |d_T> -> (|d_R> - |d_T>)/sqrt2.
DensityMatrix eraser_rotate(const DensityMatrix& rho);

// (|g->|d_R = 1> + |-g>|d_T = 1>)/sqrt2 on the cavity space: complete
// which-path marking, zero atom visibility.
DensityMatrix which_path_marked_state();

struct MeasureRecord {
    double t{0.0};
    double V{0.0};
    double D{0.0};
    double D_m{0.0};
    double L_opt{0.5};
    double L_m{0.5};
    double A{0.0};
};

MeasureRecord measure_state(const DensityMatrix& rho, double absorbed = 0.0, double t = 0.0);

std::vector<MeasureRecord> measure_timeseries(const Trajectory& traj);

}  // namespace ifm
