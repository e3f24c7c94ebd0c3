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

// dynamics.hpp — Lindblad RK4 integrator, unitary stage sequences, and the
// dense Liouvillian used as a validation oracle.
//
// Units: hbar = 1, times in 1/Omega_R.

#pragma once

#include "ifm/hilbert.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ifm {

// Thrown when the integrator's trace or positivity guard trips.
class NumericalAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Observable {
    std::string name;
    LinOp op;
};

// Records rate * integral of <op> dt.
struct Accumulator {
    std::string name;
    double rate{0.0};
    LinOp op;
};

struct LindbladModel {
    CompositeSpace space;
    LinOp hamiltonian;
    std::vector<LinOp> jumps;
    std::vector<Observable> observables;
    std::vector<Accumulator> accumulators;
    DensityMatrix initial;

    // Throws std::invalid_argument on space mismatch or non-Hermitian H.
    void validate() const;
};

struct TimeGrid {
    double t_max{1.0};
    double dt{1e-3};
    std::size_t sample_every{1};

    std::size_t steps() const;
    void validate() const;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<DensityMatrix> states;
    std::vector<std::map<std::string, double>> records;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
    double record(std::size_t sample, std::string_view name) const;
    std::vector<double> series(std::string_view name) const;
};

// -i[H, rho] + sum_k (C_k rho C_k† - {C_k†C_k, rho}/2)
Matrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho);

// Fixed-step RK4 with per-step re-hermitization. Aborts with NumericalAbort
// when |Tr rho - 1| > 1e-6 or the sampled min eigenvalue drops below -1e-6.
Trajectory evolve_master(const LindbladModel& model, const DensityMatrix& rho0, const TimeGrid& grid);

// A stage is either exp(-i H duration) or an explicit unitary.
struct GeneratorStage {
    LinOp generator;
    double duration{0.0};
};

struct UnitaryStage {
    std::string name;
    std::variant<GeneratorStage, LinOp> action;

    LinOp unitary() const;
};

// States after each stage; element 0 is psi0.
std::vector<StateVector> unitary_sequence_history(const StateVector& psi0,
                                                  const std::vector<UnitaryStage>& stages);
StateVector evolve_unitary_sequence(const StateVector& psi0, const std::vector<UnitaryStage>& stages);

inline constexpr std::size_t kLiouvillianOracleMaxDim = 16;

// Superoperator L with vec(drho/dt) = L vec(rho), column-stacking vec.
// Refuses total_dim > 16 unless `force` is set.
Matrix liouvillian_dense(const LindbladModel& model, bool force = false);

// exp(L t) vec(rho0) by scaled Taylor series, reshaped back to a matrix.
DensityMatrix propagate_liouvillian(const Matrix& liouvillian, const DensityMatrix& rho0, double t);

}  // namespace ifm
