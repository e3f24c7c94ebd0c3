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

// models.hpp — builders for the coupled atom-photon Mach-Zehnder and the
// cascaded cavity interaction-free measurement.

#pragma once

#include "ifm/dynamics.hpp"
#include "ifm/hilbert.hpp"

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

namespace ifm {

// Atom mode: which path the atom takes, and its internal state on the upper
// path. The lower-path atom never interacts and stays in g.
namespace atom {
inline constexpr std::size_t dim = 3;
inline constexpr std::size_t g_upper = 0;  // |g->
inline constexpr std::size_t e_upper = 1;  // |e->
inline constexpr std::size_t g_lower = 2;  // |-g>
}  // namespace atom

namespace labels {
inline constexpr std::string_view atom = "atom";
inline constexpr std::string_view photon_upper = "photon_u";
inline constexpr std::string_view photon_lower = "photon_l";
inline constexpr std::string_view cavity = "a";
inline constexpr std::string_view source = "b";
inline constexpr std::string_view detector_r = "d_R";
inline constexpr std::string_view detector_t = "d_T";
}  // namespace labels

// atom(3) ⊗ photon_u(2) ⊗ photon_l(2)
CompositeSpace build_space_mz();
// atom(3) ⊗ a(2) ⊗ b(2) ⊗ d_R(2) ⊗ d_T(2)
CompositeSpace build_space_cavity();

// sigma_- = |g-><e-| on the atom mode (3x3 local matrix).
Matrix atom_lowering();

// Single-excitation beamsplitter between two 0/1 photon modes:
//   |1,0> -> t|1,0> + i r|0,1>,  |0,1> -> i r|1,0> + t|0,1>,  r = sqrt(1 - t^2).
// |0,0> and |1,1> are left alone.
LinOp beamsplitter_unitary(const CompositeSpace& space, std::string_view mode_1, std::string_view mode_2,
                           double t);

// Exchanges the occupations of two 0/1 photon modes (the interferometer mirrors).
LinOp arm_swap(const CompositeSpace& space, std::string_view mode_1, std::string_view mode_2);

// Rotation on the atom path pair {|g->, |-g>}:
//   |g-> -> cos(theta/2)|g-> + i sin(theta/2)|-g>, |e-> untouched.
LinOp atom_pulse(const CompositeSpace& space, double theta);

// a† sigma_- + a sigma_+ in units of Omega_R, coupling `photon_label` to the
// upper-path atom.
LinOp jc_generator(const CompositeSpace& space, std::string_view photon_label);

struct CoupledMZParams {
    double omega_r_tau{std::numbers::pi};
    double photon_bs_t{std::numbers::sqrt2 / 2.0};
};

struct CoupledMZ {
    StateVector initial;
    std::vector<UnitaryStage> stages;
};

// Initial |g-> ⊗ |1,0>; stages: photon splitter, atom splitter, interaction
// (lower photon arm with upper atom arm), mirrors, second photon splitter.
CoupledMZ build_coupled_mz(const CoupledMZParams& params);

struct CavityIFMParams {
    double gamma_a{0.4};
    double gamma_b{0.04};
    double gamma_c{0.0};
    double t_max{50.0};
    double dt{1e-3};
    std::size_t sample_every{100};

    TimeGrid grid() const { return {t_max, dt, sample_every}; }
    void validate() const;
};

// Rotating-frame model. Observables: p_a, p_b, p_dR, p_dT, p_e, n_total.
// Accumulator: A = gamma_c * integral of <sigma_+ sigma_->.
LindbladModel build_cavity_ifm(const CavityIFMParams& params, bool atom_present = true);

}  // namespace ifm
