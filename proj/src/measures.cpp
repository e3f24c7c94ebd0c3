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

#include "ifm/measures.hpp"

#include "ifm/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ifm {

namespace {

constexpr double kGramTol = 1e-9;
constexpr double kConditionFloor = 1e-12;

void require_atom_first(const CompositeSpace& space, const char* who) {
    if (space.size() < 2 || space.modes().front().label != labels::atom ||
        space.modes().front().dim != atom::dim) {
        throw std::invalid_argument(std::string(who) + ": space has no leading atom mode");
    }
}

}  // namespace

PathSplit path_split(const DensityMatrix& rho, InternalState internal) {
    require_atom_first(rho.space, "path_split");
    const LinOp gg = block_element(rho, labels::atom, atom::g_upper, atom::g_upper);
    const LinOp ee = block_element(rho, labels::atom, atom::e_upper, atom::e_upper);
    const LinOp ll = block_element(rho, labels::atom, atom::g_lower, atom::g_lower);

    if (internal == InternalState::traced) {
        return {LinOp(gg.space, gg.matrix + ee.matrix), ll};
    }

    std::vector<Mode> modes{{std::string(kInternalLabel), 2}};
    for (const auto& m : gg.space.modes()) modes.push_back(m);
    const CompositeSpace marker(std::move(modes));

    const LinOp ge = block_element(rho, labels::atom, atom::g_upper, atom::e_upper);
    const LinOp eg = block_element(rho, labels::atom, atom::e_upper, atom::g_upper);
    Matrix upper = kron(basis_op(2, 0, 0), gg.matrix) + kron(basis_op(2, 0, 1), ge.matrix) +
                   kron(basis_op(2, 1, 0), eg.matrix) + kron(basis_op(2, 1, 1), ee.matrix);
    Matrix lower = kron(basis_op(2, 0, 0), ll.matrix);
    return {LinOp(marker, std::move(upper)), LinOp(marker, std::move(lower))};
}

double distinguishability(const PathSplit& split) {
    const Matrix diff = split.upper.matrix - split.lower.matrix;
    if (!is_hermitian(diff)) throw std::invalid_argument("distinguishability: marker difference is not Hermitian");
    return trace_norm(Matrix((diff + diff.adjoint()) / 2.0), true);
}

double measured_distinguishability(const PathSplit& split, const std::optional<Matrix>& basis) {
    const Matrix diff = split.upper.matrix - split.lower.matrix;
    if (!basis) return diff.diagonal().cwiseAbs().sum();

    const Matrix& b = *basis;
    if (b.rows() != diff.rows() || b.cols() != diff.rows()) {
        throw std::invalid_argument("measured_distinguishability: basis must be square and span the marker space");
    }
    const Matrix gram = b.adjoint() * b;
    if ((gram - Matrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff() > kGramTol) {
        throw std::invalid_argument("measured_distinguishability: basis is not orthonormal");
    }
    return (b.adjoint() * diff * b).diagonal().cwiseAbs().sum();
}

double visibility(const DensityMatrix& rho) {
    require_atom_first(rho.space, "visibility");
    const DensityMatrix at = partial_trace(rho, {std::string(labels::atom)});
    return 2.0 * std::abs(at.matrix(atom::g_upper, atom::g_lower));
}

std::vector<double> absorption(const Trajectory& traj) {
    if (traj.empty() || !traj.records.front().contains("A")) {
        throw std::invalid_argument("absorption: trajectory has no 'A' accumulator");
    }
    return traj.series("A");
}

double detector_probability(const DensityMatrix& rho, std::string_view detector_label) {
    const LinOp proj = embed(basis_op(rho.space.dim(detector_label), 1, 1), detector_label, rho.space);
    return expectation(proj, rho).real();
}

DensityMatrix condition_on_detector(const DensityMatrix& rho, std::string_view detector_label) {
    require_atom_first(rho.space, "condition_on_detector");
    const LinOp proj = embed(basis_op(rho.space.dim(detector_label), 1, 1), detector_label, rho.space);
    const DensityMatrix branch(rho.space, proj.matrix * rho.matrix * proj.matrix);
    const double p = branch.trace();
    if (!(p >= kConditionFloor)) {
        throw std::domain_error("condition_on_detector: detector '" + std::string(detector_label) +
                                "' has zero click probability");
    }
    DensityMatrix at = partial_trace(branch, {std::string(labels::atom)});
    at.matrix /= p;
    return at;
}

DensityMatrix eraser_rotate(const DensityMatrix& rho) {
    const double h = std::numbers::sqrt2 / 2.0;
    // Local basis |n_R n_T>: 00, 01, 10, 11.
    Matrix local = Matrix::Identity(4, 4);
    local(2, 2) = h;   // |10> -> h|10> + h|01>
    local(1, 2) = h;
    local(2, 1) = h;   // |01> -> h|10> - h|01>
    local(1, 1) = -h;
    const LinOp u = embed_pair(local, labels::detector_r, labels::detector_t, rho.space);
    return DensityMatrix(rho.space, u.matrix * rho.matrix * u.matrix.adjoint());
}

DensityMatrix which_path_marked_state() {
    const CompositeSpace space = build_space_cavity();
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
    const double amp = std::numbers::sqrt2 / 2.0;
    psi(static_cast<Eigen::Index>(space.flat_index({atom::g_upper, 0, 0, 1, 0}))) = amp;
    psi(static_cast<Eigen::Index>(space.flat_index({atom::g_lower, 0, 0, 0, 1}))) = amp;
    return DensityMatrix::pure(StateVector(space, std::move(psi)));
}

MeasureRecord measure_state(const DensityMatrix& rho, double absorbed, double t) {
    const PathSplit split = path_split(rho);
    MeasureRecord rec;
    rec.t = t;
    rec.V = visibility(rho);
    rec.D = distinguishability(split);
    rec.D_m = measured_distinguishability(split);
    rec.L_opt = 0.5 * (1.0 + rec.D);
    rec.L_m = 0.5 * (1.0 + rec.D_m);
    rec.A = absorbed;
    return rec;
}

std::vector<MeasureRecord> measure_timeseries(const Trajectory& traj) {
    const std::vector<double> a = absorption(traj);
    std::vector<MeasureRecord> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) out.push_back(measure_state(traj.states[k], a[k], traj.times[k]));
    return out;
}

}  // namespace ifm
