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
#include "ifm/models.hpp"

#include "support.hpp"

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <numbers>

using namespace ifm;
using ifm::test::max_abs;

namespace {

const CompositeSpace kQubit{{"q", 2}};

// Two-level decay: C = sqrt(gamma) |0><1|.
LindbladModel decay_model(double gamma) {
    LindbladModel m;
    m.space = kQubit;
    m.hamiltonian = LinOp::zero(kQubit);
    m.jumps.emplace_back(kQubit, std::sqrt(gamma) * lowering(2));
    m.observables.push_back({"p1", LinOp(kQubit, basis_op(2, 1, 1))});
    m.accumulators.push_back({"lost", gamma, LinOp(kQubit, basis_op(2, 1, 1))});
    m.initial = DensityMatrix(kQubit, basis_op(2, 1, 1));
    return m;
}

// Driven two-level atom whose decay is recorded in a one-shot detector register.
LindbladModel atom_register_model() {
    const CompositeSpace s{{"atom", 2}, {"det", 2}};
    const Matrix sm = embed(lowering(2), "atom", s).matrix;
    const Matrix d = embed(lowering(2), "det", s).matrix;
    LindbladModel m;
    m.space = s;
    m.hamiltonian = LinOp(s, 0.7 * (sm + sm.adjoint()) + 0.3 * sm.adjoint() * sm);
    m.jumps.emplace_back(s, std::sqrt(0.9) * sm * d.adjoint());
    m.jumps.emplace_back(s, std::sqrt(0.2) * sm.adjoint() * sm);
    m.initial = DensityMatrix(s, basis_op(4, 2, 2));  // atom excited, register empty
    return m;
}

LindbladModel random_model(std::mt19937& rng, Eigen::Index n, int jumps) {
    const CompositeSpace s{{"x", static_cast<std::size_t>(n)}};
    LindbladModel m;
    m.space = s;
    m.hamiltonian = LinOp(s, ifm::test::random_hermitian(rng, n));
    for (int k = 0; k < jumps; ++k) m.jumps.emplace_back(s, 0.3 * ifm::test::random_matrix(rng, n));
    m.initial = DensityMatrix(s, ifm::test::random_density(rng, n));
    return m;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

TEST_CASE("lindblad_rhs") {
    SUBCASE("no dynamics") {
        LindbladModel m;
        m.space = kQubit;
        m.hamiltonian = LinOp::zero(kQubit);
        const Matrix r = lindblad_rhs(m, DensityMatrix(kQubit, basis_op(2, 1, 1)));
        CHECK(max_abs(r) == 0.0);
    }
    SUBCASE("decay rate equation") {
        const double gamma = 0.7;
        const LindbladModel m = decay_model(gamma);
        const Matrix r = lindblad_rhs(m, m.initial);
        const Matrix expected = gamma * (basis_op(2, 0, 0) - basis_op(2, 1, 1));
        CHECK(max_abs(r - expected) <= 1e-15);
    }
    SUBCASE("random model agrees with the superoperator") {
        std::mt19937 rng(5);
        const LindbladModel m = random_model(rng, 6, 3);
        const Matrix l = liouvillian_dense(m);
        const Matrix rho = ifm::test::random_density(rng, 6);
        const Matrix r = lindblad_rhs(m, DensityMatrix(m.space, rho));
        CHECK((vec(r) - l * vec(rho)).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK(max_abs(r - r.adjoint()) <= 1e-12);
        // non-Hermitian argument goes through the general path as well
        const Matrix x = ifm::test::random_matrix(rng, 6);
        CHECK((vec(lindblad_rhs(m, DensityMatrix(m.space, x))) - l * vec(x)).cwiseAbs().maxCoeff() <= 1e-11);
    }
    SUBCASE("space mismatch") {
        const LindbladModel m = decay_model(1.0);
        const CompositeSpace other{{"z", 2}};
        CHECK_THROWS_AS(lindblad_rhs(m, DensityMatrix(other, basis_op(2, 0, 0))), std::invalid_argument);
    }
}

TEST_CASE("evolve_master on analytic toys") {
    SUBCASE("exponential decay") {
        const double gamma = 1.25;
        const LindbladModel m = decay_model(gamma);
        const Trajectory tr = evolve_master(m, m.initial, {1.0 / gamma, 1e-3, 1});
        const std::size_t last = tr.size() - 1;
        CHECK(tr.times[last] == doctest::Approx(1.0 / gamma).epsilon(1e-9));
        CHECK(std::abs(tr.record(last, "p1") - std::exp(-1.0)) <= 1e-6);
        // gamma * integral of e^{-gamma t} = 1 - e^{-1}
        CHECK(std::abs(tr.record(last, "lost") - (1.0 - std::exp(-1.0))) <= 1e-6);
        for (std::size_t k = 0; k < tr.size(); ++k) CHECK(std::abs(tr.record(k, "trace") - 1.0) <= 1e-8);
    }
    SUBCASE("unitary evolution keeps purity") {
        std::mt19937 rng(7);
        LindbladModel m = random_model(rng, 5, 0);
        Vector psi = ifm::test::random_matrix(rng, 5).col(0);
        psi.normalize();
        const DensityMatrix rho0 = DensityMatrix::pure(StateVector(m.space, psi));
        const Trajectory tr = evolve_master(m, rho0, {2.0, 1e-3, 100});
        for (const auto& s : tr.states) CHECK(std::abs(s.purity() - 1.0) <= 1e-8);
    }
    SUBCASE("sampling cadence") {
        const LindbladModel m = decay_model(1.0);
        const Trajectory tr = evolve_master(m, m.initial, {1.0, 0.01, 30});
        // samples at steps 0, 30, 60, 90 and the final step 100
        REQUIRE(tr.size() == 5);
        CHECK(tr.times[4] == doctest::Approx(1.0));
        CHECK(std::is_sorted(tr.times.begin(), tr.times.end()));
        CHECK(tr.records.size() == tr.states.size());
    }
}

TEST_CASE("evolve_master guards") {
    const LindbladModel m = decay_model(100.0);
    // RK4 is unstable at gamma * dt = 10: populations overshoot and go negative.
    CHECK_THROWS_AS(evolve_master(m, m.initial, {1.0, 0.1, 1}), NumericalAbort);

    const DensityMatrix bad(kQubit, 2.0 * basis_op(2, 1, 1));
    CHECK_THROWS_AS(evolve_master(decay_model(1.0), bad, {1.0, 0.1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(evolve_master(decay_model(1.0), m.initial, {1.0, 0.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(evolve_master(decay_model(1.0), m.initial, {0.01, 0.1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(evolve_master(decay_model(1.0), m.initial, {0.25, 0.1, 1}), std::invalid_argument);
}

TEST_CASE("RK4 converges at fourth order") {
    const LindbladModel m = atom_register_model();
    const Matrix l = liouvillian_dense(m);
    const double t = 2.0;
    const DensityMatrix exact = propagate_liouvillian(l, m.initial, t);
    auto error = [&](double dt) {
        const Trajectory tr = evolve_master(m, m.initial, {t, dt, 1000000});
        return max_abs(tr.states.back().matrix - exact.matrix);
    };
    const double e1 = error(0.2), e2 = error(0.1), e3 = error(0.05);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.25));
    CHECK(e2 / e3 == doctest::Approx(16.0).epsilon(0.25));
}

TEST_CASE("liouvillian_dense") {
    SUBCASE("zero generator") {
        LindbladModel m;
        m.space = kQubit;
        m.hamiltonian = LinOp::zero(kQubit);
        CHECK(max_abs(liouvillian_dense(m)) == 0.0);
    }
    SUBCASE("amplitude damping spectrum") {
        // populations relax at gamma, coherences at gamma / 2
        const double gamma = 0.8;
        Eigen::ComplexEigenSolver<Matrix> es(liouvillian_dense(decay_model(gamma)));
        std::vector<double> ev;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            CHECK(std::abs(es.eigenvalues()(k).imag()) <= 1e-12);
            ev.push_back(es.eigenvalues()(k).real());
        }
        std::sort(ev.begin(), ev.end());
        CHECK(ev[0] == doctest::Approx(-gamma));
        CHECK(ev[1] == doctest::Approx(-gamma / 2));
        CHECK(ev[2] == doctest::Approx(-gamma / 2));
        CHECK(std::abs(ev[3]) <= 1e-12);
    }
    SUBCASE("atom plus detector register: exp(Lt) against RK4") {
        const LindbladModel m = atom_register_model();
        const Matrix l = liouvillian_dense(m);
        const Trajectory tr = evolve_master(m, m.initial, {3.0, 1e-3, 500});
        for (std::size_t k = 0; k < tr.size(); ++k) {
            const DensityMatrix ref = propagate_liouvillian(l, m.initial, tr.times[k]);
            CHECK(max_abs(ref.matrix - tr.states[k].matrix) <= 1e-8);
        }
    }
    SUBCASE("Taylor propagation agrees with the Pade matrix exponential") {
        std::mt19937 rng(9);
        const LindbladModel m = random_model(rng, 4, 2);
        const Matrix l = liouvillian_dense(m);
        const double t = 1.7;
        const Matrix e = (l * t).exp();
        const Vector ref = e * vec(m.initial.matrix);
        const DensityMatrix got = propagate_liouvillian(l, m.initial, t);
        CHECK((vec(got.matrix) - ref).cwiseAbs().maxCoeff() <= 1e-11);
    }
    SUBCASE("dimension guard") {
        const LindbladModel big = build_cavity_ifm({});
        CHECK_THROWS_AS(liouvillian_dense(big), std::invalid_argument);
    }
}

TEST_CASE("evolve_unitary_sequence") {
    const CompositeSpace s{{"u", 2}, {"l", 2}};
    const StateVector in = StateVector::basis(s, {1, 0});

    SUBCASE("no stages") {
        const StateVector out = evolve_unitary_sequence(in, {});
        CHECK((out.amplitudes - in.amplitudes).norm() == 0.0);
    }
    SUBCASE("two balanced splitters route the photon to one port") {
        const LinOp bs = beamsplitter_unitary(s, "u", "l", std::numbers::sqrt2 / 2.0);
        const StateVector out = evolve_unitary_sequence(in, {{"bs1", bs}, {"bs2", bs}});
        CHECK(std::norm(out.amplitudes(static_cast<Eigen::Index>(s.flat_index({0, 1})))) == doctest::Approx(1.0));
        CHECK(std::abs(out.norm() - 1.0) <= 1e-9);
    }
    SUBCASE("generator stages") {
        Matrix x = Matrix::Zero(4, 4);
        x(1, 2) = x(2, 1) = 1.0;
        const StateVector out =
            evolve_unitary_sequence(in, {{"half", GeneratorStage{LinOp(s, x), std::numbers::pi / 2}}});
        CHECK(std::norm(out.amplitudes(1)) == doctest::Approx(1.0));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(evolve_unitary_sequence(in, {{"bad", LinOp(s, 2.0 * Matrix::Identity(4, 4))}}),
                        std::invalid_argument);
        const StateVector unnormalized(s, 2.0 * in.amplitudes);
        CHECK_THROWS_AS(evolve_unitary_sequence(unnormalized, {}), std::invalid_argument);
    }
}
