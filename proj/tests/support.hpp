// support.hpp — deterministic random operators for tests

#pragma once

#include "ifm/hilbert.hpp"

#include <random>

namespace ifm::test {

inline Matrix random_matrix(std::mt19937& rng, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(g(rng), g(rng));
    return m;
}

inline Matrix random_hermitian(std::mt19937& rng, Eigen::Index n) {
    const Matrix m = random_matrix(rng, n);
    return (m + m.adjoint()) / 2.0;
}

inline Matrix random_density(std::mt19937& rng, Eigen::Index n) {
    const Matrix m = random_matrix(rng, n);
    Matrix rho = m * m.adjoint();
    return rho / rho.trace().real();
}

inline Matrix random_unitary(std::mt19937& rng, Eigen::Index n) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, n));
    return qr.householderQ();
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace ifm::test
