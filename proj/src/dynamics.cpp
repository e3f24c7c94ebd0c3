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

#include "ifm/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace ifm {

namespace {

constexpr double kTraceGuard = 1e-6;
constexpr double kPositivityGuard = -1e-6;
constexpr double kUnitaryTol = 1e-9;

void require_space(const CompositeSpace& expected, const CompositeSpace& got, const char* who) {
    if (!(expected == got)) throw std::invalid_argument(std::string(who) + ": space mismatch");
}

// Precomputed pieces of the Lindblad generator:
//   drho/dt = -i (H_eff rho - rho H_eff†) + sum_k C_k rho C_k†,
//   H_eff = H - (i/2) sum_k C_k†C_k.
class Generator {
public:
    explicit Generator(const LindbladModel& model) {
        const auto n = static_cast<Eigen::Index>(model.space.total_dim());
        Matrix decay = Matrix::Zero(n, n);
        for (const auto& c : model.jumps) {
            jumps_.push_back(c.matrix);
            jumps_adj_.push_back(c.matrix.adjoint());
            decay.noalias() += c.matrix.adjoint() * c.matrix;
        }
        minus_i_heff_ = Complex(0, -1) * (model.hamiltonian.matrix - Complex(0, 0.5) * decay);
        work_.resize(n, n);
        tmp_.resize(n, n);
    }

    // General rho.
    void apply(const Matrix& rho, Matrix& out) const {
        out.noalias() = minus_i_heff_ * rho;
        out.noalias() += rho * minus_i_heff_.adjoint();
        add_jumps(rho, out);
    }

    // rho Hermitian: rho H_eff† is the adjoint of H_eff rho.
    void apply_hermitian(const Matrix& rho, Matrix& out) {
        work_.noalias() = minus_i_heff_ * rho;
        out = work_ + work_.adjoint();
        add_jumps(rho, out);
    }

private:
    void add_jumps(const Matrix& rho, Matrix& out) const {
        for (std::size_t k = 0; k < jumps_.size(); ++k) {
            tmp_.noalias() = jumps_[k] * rho;
            out.noalias() += tmp_ * jumps_adj_[k];
        }
    }

    Matrix minus_i_heff_;
    std::vector<Matrix> jumps_;
    std::vector<Matrix> jumps_adj_;
    Matrix work_;
    mutable Matrix tmp_;
};

std::string describe_abort(const char* what, double t, double value) {
    std::ostringstream os;
    os.precision(12);
    os << "evolve_master: " << what << " at t = " << t << " (value " << value << ")";
    return os.str();
}

}  // namespace

void LindbladModel::validate() const {
    require_space(space, hamiltonian.space, "LindbladModel hamiltonian");
    if (!is_hermitian(hamiltonian.matrix)) {
        throw std::invalid_argument("LindbladModel: Hamiltonian is not Hermitian");
    }
    for (const auto& c : jumps) require_space(space, c.space, "LindbladModel jump");
    for (const auto& o : observables) require_space(space, o.op.space, "LindbladModel observable");
    for (const auto& a : accumulators) require_space(space, a.op.space, "LindbladModel accumulator");
}

std::size_t TimeGrid::steps() const {
    validate();
    return static_cast<std::size_t>(std::llround(t_max / dt));
}

void TimeGrid::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be positive");
    if (!(t_max >= dt)) throw std::invalid_argument("TimeGrid: t_max must be >= dt");
    if (sample_every == 0) throw std::invalid_argument("TimeGrid: sample_every must be positive");
    const double n = t_max / dt;
    if (std::abs(n - std::round(n)) > 1e-9 * n) {
        throw std::invalid_argument("TimeGrid: t_max must be an integer multiple of dt");
    }
}

double Trajectory::record(std::size_t sample, std::string_view name) const {
    const auto& rec = records.at(sample);
    const auto it = rec.find(std::string(name));
    if (it == rec.end()) throw std::out_of_range("Trajectory: no record named '" + std::string(name) + "'");
    return it->second;
}

std::vector<double> Trajectory::series(std::string_view name) const {
    std::vector<double> out;
    out.reserve(size());
    for (std::size_t k = 0; k < size(); ++k) out.push_back(record(k, name));
    return out;
}

Matrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho) {
    require_space(model.space, rho.space, "lindblad_rhs");
    Generator gen(model);
    Matrix out;
    gen.apply(rho.matrix, out);
    return out;
}

Trajectory evolve_master(const LindbladModel& model, const DensityMatrix& rho0, const TimeGrid& grid) {
    model.validate();
    require_space(model.space, rho0.space, "evolve_master");
    if (!is_hermitian(rho0.matrix)) throw std::invalid_argument("evolve_master: rho0 is not Hermitian");
    if (std::abs(rho0.trace() - 1.0) > kTraceGuard) {
        throw std::invalid_argument("evolve_master: rho0 does not have unit trace");
    }

    const std::size_t steps = grid.steps();
    const double dt = grid.dt;
    Generator gen(model);

    Matrix rho = (rho0.matrix + rho0.matrix.adjoint()) / 2.0;
    const auto n = rho.rows();
    Matrix k1(n, n), k2(n, n), k3(n, n), k4(n, n), stage(n, n);

    std::vector<double> acc_value(model.accumulators.size(), 0.0);
    std::vector<double> acc_last(model.accumulators.size(), 0.0);
    auto expect = [&](const LinOp& op) { return op.matrix.cwiseProduct(rho.transpose()).sum().real(); };
    for (std::size_t a = 0; a < model.accumulators.size(); ++a) acc_last[a] = expect(model.accumulators[a].op);

    Trajectory traj;
    auto sample = [&](double t) {
        DensityMatrix state(model.space, rho);
        std::map<std::string, double> rec;
        rec["trace"] = state.trace();
        const double lam = min_eigenvalue(state);
        if (lam < kPositivityGuard) throw NumericalAbort(describe_abort("positivity lost", t, lam));
        rec["min_eig"] = lam;
        for (const auto& o : model.observables) rec[o.name] = expect(o.op);
        for (std::size_t a = 0; a < model.accumulators.size(); ++a) {
            rec[model.accumulators[a].name] = acc_value[a];
        }
        traj.times.push_back(t);
        traj.states.push_back(std::move(state));
        traj.records.push_back(std::move(rec));
    };

    sample(0.0);
    for (std::size_t step = 1; step <= steps; ++step) {
        gen.apply_hermitian(rho, k1);
        stage = rho + (0.5 * dt) * k1;
        gen.apply_hermitian(stage, k2);
        stage = rho + (0.5 * dt) * k2;
        gen.apply_hermitian(stage, k3);
        stage = rho + dt * k3;
        gen.apply_hermitian(stage, k4);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        stage = rho.adjoint();
        rho = 0.5 * (rho + stage);

        const double t = static_cast<double>(step) * dt;
        const double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > kTraceGuard) throw NumericalAbort(describe_abort("trace drift", t, tr));

        for (std::size_t a = 0; a < model.accumulators.size(); ++a) {
            const double now = expect(model.accumulators[a].op);
            acc_value[a] += model.accumulators[a].rate * 0.5 * dt * (acc_last[a] + now);
            acc_last[a] = now;
        }
        if (step % grid.sample_every == 0 || step == steps) sample(t);
    }
    return traj;
}

LinOp UnitaryStage::unitary() const {
    if (const auto* g = std::get_if<GeneratorStage>(&action)) return expm_skew(g->generator, g->duration);
    return std::get<LinOp>(action);
}

std::vector<StateVector> unitary_sequence_history(const StateVector& psi0,
                                                  const std::vector<UnitaryStage>& stages) {
    if (std::abs(psi0.norm() - 1.0) > kUnitaryTol) {
        throw std::invalid_argument("evolve_unitary_sequence: initial state is not normalized");
    }
    std::vector<StateVector> history{psi0};
    for (const auto& s : stages) {
        const LinOp u = s.unitary();
        require_space(psi0.space, u.space, "evolve_unitary_sequence");
        if (std::holds_alternative<LinOp>(s.action)) {
            const auto n = u.matrix.rows();
            const double defect = (u.matrix.adjoint() * u.matrix - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
            if (defect > kUnitaryTol) {
                throw std::invalid_argument("evolve_unitary_sequence: stage '" + s.name + "' is not unitary");
            }
        }
        history.emplace_back(psi0.space, u.matrix * history.back().amplitudes);
    }
    return history;
}

StateVector evolve_unitary_sequence(const StateVector& psi0, const std::vector<UnitaryStage>& stages) {
    return unitary_sequence_history(psi0, stages).back();
}

Matrix liouvillian_dense(const LindbladModel& model, bool force) {
    model.validate();
    const std::size_t dim = model.space.total_dim();
    if (dim > kLiouvillianOracleMaxDim && !force) {
        throw std::invalid_argument("liouvillian_dense: total_dim " + std::to_string(dim) +
                                    " exceeds the oracle guard; pass force = true");
    }
    const auto n = static_cast<Eigen::Index>(dim);
    const Matrix id = Matrix::Identity(n, n);
    const Matrix& h = model.hamiltonian.matrix;
    // vec(A X B) = (B^T ⊗ A) vec(X)
    Matrix l = Complex(0, -1) * (kron(id, h) - kron(Matrix(h.transpose()), id));
    for (const auto& c : model.jumps) {
        const Matrix k = c.matrix.adjoint() * c.matrix;
        l += kron(Matrix(c.matrix.conjugate()), c.matrix);
        l -= 0.5 * kron(id, k);
        l -= 0.5 * kron(Matrix(k.transpose()), id);
    }
    return l;
}

DensityMatrix propagate_liouvillian(const Matrix& liouvillian, const DensityMatrix& rho0, double t) {
    const auto n = rho0.matrix.rows();
    if (liouvillian.rows() != n * n || liouvillian.cols() != n * n) {
        throw std::invalid_argument("propagate_liouvillian: superoperator dimension mismatch");
    }
    Vector v = Eigen::Map<const Vector>(rho0.matrix.data(), n * n);
    const double norm1 = liouvillian.cwiseAbs().colwise().sum().maxCoeff() * std::abs(t);
    const int substeps = std::max(1, static_cast<int>(std::ceil(norm1 / 0.5)));
    const double h = t / substeps;
    Vector term(n * n), acc(n * n);
    for (int s = 0; s < substeps; ++s) {
        term = v;
        acc = v;
        for (int k = 1; k <= 60; ++k) {
            v.noalias() = liouvillian * term;
            term = v * (h / k);
            acc += term;
            if (term.norm() <= 1e-18 * acc.norm()) break;
        }
        v = acc;
    }
    Matrix out = Eigen::Map<const Matrix>(v.data(), n, n);
    return DensityMatrix(rho0.space, std::move(out));
}

}  // namespace ifm
