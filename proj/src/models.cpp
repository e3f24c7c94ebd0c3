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

#include "ifm/models.hpp"

#include <stdexcept>
#include <string>

namespace ifm {

namespace {

Matrix photon_lowering() { return lowering(2); }

void require_photon_pair(const CompositeSpace& space, std::string_view m1, std::string_view m2,
                         const char* who) {
    if (space.dim(m1) != 2 || space.dim(m2) != 2) {
        throw std::invalid_argument(std::string(who) + ": both modes must be 0/1 photon modes");
    }
}

}  // namespace

CompositeSpace build_space_mz() {
    return CompositeSpace({{std::string(labels::atom), atom::dim},
                           {std::string(labels::photon_upper), 2},
                           {std::string(labels::photon_lower), 2}});
}

CompositeSpace build_space_cavity() {
    return CompositeSpace({{std::string(labels::atom), atom::dim},
                           {std::string(labels::cavity), 2},
                           {std::string(labels::source), 2},
                           {std::string(labels::detector_r), 2},
                           {std::string(labels::detector_t), 2}});
}

Matrix atom_lowering() { return basis_op(atom::dim, atom::g_upper, atom::e_upper); }

LinOp beamsplitter_unitary(const CompositeSpace& space, std::string_view mode_1, std::string_view mode_2,
                           double t) {
    require_photon_pair(space, mode_1, mode_2, "beamsplitter_unitary");
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("beamsplitter_unitary: t must lie in [0, 1]");
    const double r = std::sqrt(1.0 - t * t);
    // Local basis |n1 n2>: 00, 01, 10, 11.
    Matrix local = Matrix::Identity(4, 4);
    local(2, 2) = t;
    local(1, 2) = Complex(0, r);
    local(2, 1) = Complex(0, r);
    local(1, 1) = t;
    return embed_pair(local, mode_1, mode_2, space);
}

LinOp arm_swap(const CompositeSpace& space, std::string_view mode_1, std::string_view mode_2) {
    require_photon_pair(space, mode_1, mode_2, "arm_swap");
    Matrix local = Matrix::Zero(4, 4);
    local(0, 0) = 1.0;
    local(1, 2) = 1.0;
    local(2, 1) = 1.0;
    local(3, 3) = 1.0;
    return embed_pair(local, mode_1, mode_2, space);
}

LinOp atom_pulse(const CompositeSpace& space, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    Matrix local = Matrix::Identity(atom::dim, atom::dim);
    local(atom::g_upper, atom::g_upper) = c;
    local(atom::g_lower, atom::g_upper) = Complex(0, s);
    local(atom::g_upper, atom::g_lower) = Complex(0, s);
    local(atom::g_lower, atom::g_lower) = c;
    return embed(local, labels::atom, space);
}

LinOp jc_generator(const CompositeSpace& space, std::string_view photon_label) {
    if (space.dim(photon_label) != 2) throw std::invalid_argument("jc_generator: photon mode must be 0/1");
    const Matrix a = embed(photon_lowering(), photon_label, space).matrix;
    const Matrix sm = embed(atom_lowering(), labels::atom, space).matrix;
    Matrix h = a.adjoint() * sm + a * sm.adjoint();
    return LinOp(space, std::move(h));
}

CoupledMZ build_coupled_mz(const CoupledMZParams& params) {
    if (!(params.photon_bs_t >= 0.0 && params.photon_bs_t <= 1.0)) {
        throw std::invalid_argument("build_coupled_mz: photon_bs_t must lie in [0, 1]");
    }
    const CompositeSpace space = build_space_mz();
    CoupledMZ mz;
    mz.initial = StateVector::basis(space, {atom::g_upper, 1, 0});
    mz.stages.push_back({"photon_splitter_1",
                         beamsplitter_unitary(space, labels::photon_upper, labels::photon_lower,
                                              std::numbers::sqrt2 / 2.0)});
    mz.stages.push_back({"atom_splitter", atom_pulse(space, std::numbers::pi / 2.0)});
    mz.stages.push_back({"interaction", GeneratorStage{jc_generator(space, labels::photon_lower),
                                                       params.omega_r_tau}});
    mz.stages.push_back({"photon_mirrors", arm_swap(space, labels::photon_upper, labels::photon_lower)});
    mz.stages.push_back({"photon_splitter_2", beamsplitter_unitary(space, labels::photon_upper,
                                                                   labels::photon_lower, params.photon_bs_t)});
    return mz;
}

void CavityIFMParams::validate() const {
    if (gamma_a < 0.0 || gamma_b < 0.0 || gamma_c < 0.0) {
        throw std::invalid_argument("CavityIFMParams: rates must be non-negative");
    }
    grid().validate();
}

LindbladModel build_cavity_ifm(const CavityIFMParams& params, bool atom_present) {
    params.validate();
    const CompositeSpace space = build_space_cavity();
    const Matrix a = embed(photon_lowering(), labels::cavity, space).matrix;
    const Matrix b = embed(photon_lowering(), labels::source, space).matrix;
    const Matrix dr = embed(photon_lowering(), labels::detector_r, space).matrix;
    const Matrix dt = embed(photon_lowering(), labels::detector_t, space).matrix;
    const Matrix sm = embed(atom_lowering(), labels::atom, space).matrix;

    const double ga = params.gamma_a;
    const double gb = params.gamma_b;
    const double coupling = 0.5 * std::sqrt(ga * gb);

    // Cascade term i(g/2)(b†a - a†b): with C_R = (sqrt(ga) a + sqrt(gb) b) d_R†
    // this sign makes b drive a and leaves b unaffected by a.
    Matrix h = a.adjoint() * sm + a * sm.adjoint();
    h += Complex(0, coupling) * (b.adjoint() * a - a.adjoint() * b);

    LindbladModel model;
    model.space = space;
    model.hamiltonian = LinOp(space, std::move(h));
    model.jumps.emplace_back(space, (std::sqrt(ga) * a + std::sqrt(gb) * b) * dr.adjoint());
    model.jumps.emplace_back(space, std::sqrt(ga) * a * dt.adjoint());
    if (params.gamma_c > 0.0) model.jumps.emplace_back(space, std::sqrt(params.gamma_c) * sm);

    const Matrix pe = sm.adjoint() * sm;
    model.observables = {
        {"p_a", LinOp(space, a.adjoint() * a)},
        {"p_b", LinOp(space, b.adjoint() * b)},
        {"p_dR", LinOp(space, dr.adjoint() * dr)},
        {"p_dT", LinOp(space, dt.adjoint() * dt)},
        {"p_e", LinOp(space, pe)},
        {"n_total", LinOp(space, pe + a.adjoint() * a + b.adjoint() * b + dr.adjoint() * dr +
                                      dt.adjoint() * dt)},
    };
    model.accumulators = {{"A", params.gamma_c, LinOp(space, pe)}};

    Vector psi = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    if (atom_present) {
        const double amp = std::numbers::sqrt2 / 2.0;
        psi(static_cast<Eigen::Index>(space.flat_index({atom::g_upper, 0, 1, 0, 0}))) = amp;
        psi(static_cast<Eigen::Index>(space.flat_index({atom::g_lower, 0, 1, 0, 0}))) = amp;
    } else {
        psi(static_cast<Eigen::Index>(space.flat_index({atom::g_lower, 0, 1, 0, 0}))) = 1.0;
    }
    model.initial = DensityMatrix::pure(StateVector(space, std::move(psi)));
    return model;
}

}  // namespace ifm
