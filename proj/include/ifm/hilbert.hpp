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

// hilbert.hpp — labeled composite Hilbert spaces and dense operator algebra
//
// Index convention: row-major over the mode order. For modes (m0, m1, ..., mk)
// the flat index of the multi-index (i0, i1, ..., ik) is
//     ((i0 * d1 + i1) * d2 + i2) ... * dk + ik,
// so kron(A0, A1, ..., Ak) acts as A0 on m0, A1 on m1, and so on. Every
// operator factory and partial trace in this library follows that rule.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ifm {

template <typename Real>
using BasicMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using BasicVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using BasicRealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Matrix = BasicMatrix<double>;
using Vector = BasicVector<double>;
using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;

// --------------------------- CompositeSpace ---------------------------------

struct Mode {
    std::string label;
    std::size_t dim{1};

    friend bool operator==(const Mode&, const Mode&) = default;
};

class CompositeSpace {
public:
    CompositeSpace() = default;

    CompositeSpace(std::initializer_list<Mode> modes) : CompositeSpace(std::vector<Mode>(modes)) {}

    explicit CompositeSpace(std::vector<Mode> modes) : modes_(std::move(modes)) {
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (modes_[k].dim == 0) {
                throw std::invalid_argument("CompositeSpace: mode '" + modes_[k].label +
                                            "' has dimension 0");
            }
            for (std::size_t j = 0; j < k; ++j) {
                if (modes_[j].label == modes_[k].label) {
                    throw std::invalid_argument("CompositeSpace: duplicate label '" +
                                                modes_[k].label + "'");
                }
            }
        }
        strides_.assign(modes_.size(), 1);
        total_dim_ = 1;
        for (std::size_t k = modes_.size(); k-- > 0;) {
            strides_[k] = total_dim_;
            total_dim_ *= modes_[k].dim;
        }
    }

    const std::vector<Mode>& modes() const noexcept { return modes_; }
    std::size_t size() const noexcept { return modes_.size(); }
    std::size_t total_dim() const noexcept { return total_dim_; }
    std::size_t stride(std::size_t position) const { return strides_.at(position); }

    bool contains(std::string_view label) const noexcept {
        return std::any_of(modes_.begin(), modes_.end(),
                           [&](const Mode& m) { return m.label == label; });
    }

    std::size_t position(std::string_view label) const {
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (modes_[k].label == label) return k;
        }
        throw std::invalid_argument("CompositeSpace: unknown mode label '" + std::string(label) +
                                    "'");
    }

    std::size_t dim(std::string_view label) const { return modes_[position(label)].dim; }

    std::size_t flat_index(std::span<const std::size_t> multi) const {
        if (multi.size() != modes_.size()) {
            throw std::invalid_argument("CompositeSpace: multi-index has wrong length");
        }
        std::size_t flat = 0;
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (multi[k] >= modes_[k].dim) {
                throw std::out_of_range("CompositeSpace: multi-index entry out of range");
            }
            flat += multi[k] * strides_[k];
        }
        return flat;
    }

    std::size_t flat_index(std::initializer_list<std::size_t> multi) const {
        return flat_index(std::span<const std::size_t>(multi.begin(), multi.size()));
    }

    std::vector<std::size_t> multi_index(std::size_t flat) const {
        if (flat >= total_dim_) throw std::out_of_range("CompositeSpace: flat index out of range");
        std::vector<std::size_t> multi(modes_.size());
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            multi[k] = flat / strides_[k];
            flat %= strides_[k];
        }
        return multi;
    }

    // Kept modes appear in this space's order, not in the order of `labels`.
    CompositeSpace subspace(std::span<const std::string> labels) const {
        for (const auto& l : labels) (void)position(l);
        std::vector<Mode> kept;
        for (const auto& m : modes_) {
            if (std::find(labels.begin(), labels.end(), m.label) != labels.end()) kept.push_back(m);
        }
        return CompositeSpace(std::move(kept));
    }

    CompositeSpace without(std::string_view label) const {
        const std::size_t p = position(label);
        std::vector<Mode> rest;
        for (std::size_t k = 0; k < modes_.size(); ++k) {
            if (k != p) rest.push_back(modes_[k]);
        }
        return CompositeSpace(std::move(rest));
    }

    friend bool operator==(const CompositeSpace& a, const CompositeSpace& b) {
        return a.modes_ == b.modes_;
    }

private:
    std::vector<Mode> modes_;
    std::vector<std::size_t> strides_;
    std::size_t total_dim_{1};
};

// --------------------------- Tagged dense types -----------------------------

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, std::size_t dim, const char* who) {
    if (m.rows() != static_cast<Eigen::Index>(dim) || m.cols() != static_cast<Eigen::Index>(dim)) {
        throw std::invalid_argument(std::string(who) + ": matrix dimension does not match space");
    }
}

}  // namespace detail

template <typename Real>
struct BasicLinOp {
    CompositeSpace space;
    BasicMatrix<Real> matrix;

    BasicLinOp() = default;
    BasicLinOp(CompositeSpace s, BasicMatrix<Real> m) : space(std::move(s)), matrix(std::move(m)) {
        detail::require_square(matrix, space.total_dim(), "LinOp");
    }

    static BasicLinOp identity(const CompositeSpace& s) {
        const auto n = static_cast<Eigen::Index>(s.total_dim());
        return BasicLinOp(s, BasicMatrix<Real>::Identity(n, n));
    }
    static BasicLinOp zero(const CompositeSpace& s) {
        const auto n = static_cast<Eigen::Index>(s.total_dim());
        return BasicLinOp(s, BasicMatrix<Real>::Zero(n, n));
    }

    BasicLinOp adjoint() const { return BasicLinOp(space, matrix.adjoint()); }
};

template <typename Real>
struct BasicStateVector {
    CompositeSpace space;
    BasicVector<Real> amplitudes;

    BasicStateVector() = default;
    BasicStateVector(CompositeSpace s, BasicVector<Real> a)
        : space(std::move(s)), amplitudes(std::move(a)) {
        if (amplitudes.size() != static_cast<Eigen::Index>(space.total_dim())) {
            throw std::invalid_argument("StateVector: length does not match space");
        }
    }

    static BasicStateVector basis(const CompositeSpace& s, std::initializer_list<std::size_t> multi) {
        BasicVector<Real> v = BasicVector<Real>::Zero(static_cast<Eigen::Index>(s.total_dim()));
        v(static_cast<Eigen::Index>(s.flat_index(multi))) = Real(1);
        return BasicStateVector(s, std::move(v));
    }

    Real norm() const { return amplitudes.norm(); }
};

template <typename Real>
struct BasicDensityMatrix {
    CompositeSpace space;
    BasicMatrix<Real> matrix;

    BasicDensityMatrix() = default;
    BasicDensityMatrix(CompositeSpace s, BasicMatrix<Real> m)
        : space(std::move(s)), matrix(std::move(m)) {
        detail::require_square(matrix, space.total_dim(), "DensityMatrix");
    }

    static BasicDensityMatrix pure(const BasicStateVector<Real>& psi) {
        return BasicDensityMatrix(psi.space, psi.amplitudes * psi.amplitudes.adjoint());
    }

    Real trace() const { return matrix.trace().real(); }
    Real purity() const { return (matrix * matrix).trace().real(); }
};

using LinOp = BasicLinOp<double>;
using StateVector = BasicStateVector<double>;
using DensityMatrix = BasicDensityMatrix<double>;

// --------------------------- Small matrix helpers ---------------------------

template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& m) {
    using RealT = typename Derived::RealScalar;
    if (m.size() == 0) return RealT(0);
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = kHermitianTol) {
    using RealT = typename Derived::RealScalar;
    if (m.rows() != m.cols()) return false;
    if (m.size() == 0) return true;
    const RealT scale = std::max(RealT(1), m.cwiseAbs().maxCoeff());
    return hermitian_defect(m) <= RealT(tol) * scale;
}

template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Out = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Out k = Eigen::kroneckerProduct(a.derived(), b.derived());
    return k;
}

// Lowering operator on an n-level ladder: |k-1><k| sqrt(k).
template <typename Real = double>
BasicMatrix<Real> lowering(std::size_t n) {
    if (n == 0) throw std::invalid_argument("lowering: dimension must be > 0");
    BasicMatrix<Real> m = BasicMatrix<Real>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 1; k < n; ++k) {
        m(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k)) = std::sqrt(Real(k));
    }
    return m;
}

// |i><j| on an n-dimensional mode.
template <typename Real = double>
BasicMatrix<Real> basis_op(std::size_t n, std::size_t i, std::size_t j) {
    if (i >= n || j >= n) throw std::out_of_range("basis_op: index out of range");
    BasicMatrix<Real> m = BasicMatrix<Real>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Real(1);
    return m;
}

// --------------------------- Operations -------------------------------------

// I ⊗ ... ⊗ op ⊗ ... ⊗ I with op placed on `target_label`.
template <typename Derived>
BasicLinOp<typename Derived::RealScalar> embed(const Eigen::MatrixBase<Derived>& op,
                                               std::string_view target_label,
                                               const CompositeSpace& space) {
    using Real = typename Derived::RealScalar;
    const std::size_t p = space.position(target_label);
    const std::size_t d = space.modes()[p].dim;
    if (op.rows() != op.cols() || op.rows() != static_cast<Eigen::Index>(d)) {
        throw std::invalid_argument("embed: operator dimension does not match mode '" +
                                    std::string(target_label) + "'");
    }
    std::size_t left = 1;
    for (std::size_t k = 0; k < p; ++k) left *= space.modes()[k].dim;
    const std::size_t right = space.total_dim() / (left * d);
    const auto il = BasicMatrix<Real>::Identity(static_cast<Eigen::Index>(left), static_cast<Eigen::Index>(left));
    const auto ir = BasicMatrix<Real>::Identity(static_cast<Eigen::Index>(right), static_cast<Eigen::Index>(right));
    BasicMatrix<Real> local = op.template cast<std::complex<Real>>();
    return BasicLinOp<Real>(space, kron(kron(il, local), ir));
}

template <typename Real>
BasicLinOp<Real> embed(const BasicLinOp<Real>& op_on_mode, std::string_view target_label,
                       const CompositeSpace& space) {
    return embed(op_on_mode.matrix, target_label, space);
}

// Operator on the ordered mode pair (label_1 ⊗ label_2), identity elsewhere.
// The modes need not be adjacent.
template <typename Derived>
BasicLinOp<typename Derived::RealScalar> embed_pair(const Eigen::MatrixBase<Derived>& op,
                                                    std::string_view label_1,
                                                    std::string_view label_2,
                                                    const CompositeSpace& space) {
    using Real = typename Derived::RealScalar;
    const std::size_t p1 = space.position(label_1);
    const std::size_t p2 = space.position(label_2);
    if (p1 == p2) throw std::invalid_argument("embed_pair: labels must differ");
    const std::size_t d1 = space.modes()[p1].dim;
    const std::size_t d2 = space.modes()[p2].dim;
    if (op.rows() != op.cols() || op.rows() != static_cast<Eigen::Index>(d1 * d2)) {
        throw std::invalid_argument("embed_pair: operator dimension does not match the mode pair");
    }
    const std::size_t n = space.total_dim();
    const std::size_t s1 = space.stride(p1);
    const std::size_t s2 = space.stride(p2);
    BasicMatrix<Real> out = BasicMatrix<Real>::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t v1 = (col / s1) % d1;
        const std::size_t v2 = (col / s2) % d2;
        const std::size_t base = col - v1 * s1 - v2 * s2;
        const auto local_col = static_cast<Eigen::Index>(v1 * d2 + v2);
        for (std::size_t w1 = 0; w1 < d1; ++w1) {
            for (std::size_t w2 = 0; w2 < d2; ++w2) {
                const auto amp = op(static_cast<Eigen::Index>(w1 * d2 + w2), local_col);
                if (amp == std::complex<Real>(0)) continue;
                out(static_cast<Eigen::Index>(base + w1 * s1 + w2 * s2), static_cast<Eigen::Index>(col)) = amp;
            }
        }
    }
    return BasicLinOp<Real>(space, std::move(out));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho,
                                       std::span<const std::string> keep_labels) {
    const CompositeSpace& full = rho.space;
    const CompositeSpace reduced = full.subspace(keep_labels);
    std::vector<bool> keep(full.size(), false);
    for (const auto& l : keep_labels) keep[full.position(l)] = true;

    // Split every flat index into (kept flat, traced flat).
    const std::size_t n = full.total_dim();
    std::vector<std::size_t> kept_of(n), traced_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto multi = full.multi_index(i);
        std::size_t kf = 0, tf = 0;
        for (std::size_t k = 0; k < full.size(); ++k) {
            if (keep[k]) kf = kf * full.modes()[k].dim + multi[k];
            else tf = tf * full.modes()[k].dim + multi[k];
        }
        kept_of[i] = kf;
        traced_of[i] = tf;
    }

    const auto m = static_cast<Eigen::Index>(reduced.total_dim());
    BasicMatrix<Real> out = BasicMatrix<Real>::Zero(m, m);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            if (traced_of[i] != traced_of[j]) continue;
            out(static_cast<Eigen::Index>(kept_of[i]), static_cast<Eigen::Index>(kept_of[j])) +=
                rho.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return BasicDensityMatrix<Real>(reduced, std::move(out));
}

template <typename Real>
BasicDensityMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho,
                                       std::initializer_list<std::string> keep_labels) {
    return partial_trace(rho, std::span<const std::string>(keep_labels.begin(), keep_labels.size()));
}

// <i|rho|j> on `mode_label`, as an operator on the remaining modes.
template <typename Real>
BasicLinOp<Real> block_element(const BasicDensityMatrix<Real>& rho, std::string_view mode_label,
                               std::size_t i, std::size_t j) {
    const CompositeSpace& full = rho.space;
    const std::size_t p = full.position(mode_label);
    const std::size_t d = full.modes()[p].dim;
    if (i >= d || j >= d) throw std::out_of_range("block_element: basis index out of range");

    const CompositeSpace rest = full.without(mode_label);
    const std::size_t stride = full.stride(p);
    const std::size_t n = rest.total_dim();
    // Flat index in `full` of (mode value v, remaining flat r).
    auto lift = [&](std::size_t v, std::size_t r) {
        const std::size_t hi = r / stride;
        const std::size_t lo = r % stride;
        return static_cast<Eigen::Index>((hi * d + v) * stride + lo);
    };
    BasicMatrix<Real> out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t r = 0; r < n; ++r) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rho.matrix(lift(i, r), lift(j, c));
        }
    }
    return BasicLinOp<Real>(rest, std::move(out));
}

template <typename Real>
struct BasicHermitianEig {
    BasicRealVector<Real> values;  // ascending
    BasicMatrix<Real> vectors;     // orthonormal columns
};
using HermitianEig = BasicHermitianEig<double>;

template <typename Derived>
BasicHermitianEig<typename Derived::RealScalar> hermitian_eig(const Eigen::MatrixBase<Derived>& a) {
    using Real = typename Derived::RealScalar;
    if (!is_hermitian(a)) throw std::invalid_argument("hermitian_eig: operator is not Hermitian");
    Eigen::SelfAdjointEigenSolver<BasicMatrix<Real>> es(a.template cast<std::complex<Real>>());
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_eig: solver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

template <typename Real>
BasicHermitianEig<Real> hermitian_eig(const BasicLinOp<Real>& op) {
    return hermitian_eig(op.matrix);
}

// Tr sqrt(A†A). Hermitian input is summed over |eigenvalues|; general input
// goes through the eigenvalues of A†A.
template <typename Derived>
typename Derived::RealScalar trace_norm(const Eigen::MatrixBase<Derived>& a, bool hermitian) {
    using Real = typename Derived::RealScalar;
    if (hermitian) {
        if (!is_hermitian(a)) throw std::invalid_argument("trace_norm: operator is not Hermitian");
        return hermitian_eig(a).values.cwiseAbs().sum();
    }
    const BasicMatrix<Real> g = a.adjoint() * a;
    const BasicMatrix<Real> gh = (g + g.adjoint()) / Real(2);
    Real sum = 0;
    for (const Real ev : hermitian_eig(gh).values) sum += std::sqrt(std::max(ev, Real(0)));
    return sum;
}

template <typename Real>
Real trace_norm(const BasicLinOp<Real>& op, bool hermitian) {
    return trace_norm(op.matrix, hermitian);
}

// exp(-i H t) via the spectral decomposition of H.
template <typename Real>
BasicLinOp<Real> expm_skew(const BasicLinOp<Real>& h, Real t) {
    const auto eig = hermitian_eig(h.matrix);
    BasicVector<Real> phases(eig.values.size());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
        phases(k) = std::polar(Real(1), -eig.values(k) * t);
    }
    BasicMatrix<Real> u = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
    return BasicLinOp<Real>(h.space, std::move(u));
}

template <typename Real>
Real min_eigenvalue(const BasicDensityMatrix<Real>& rho) {
    const BasicMatrix<Real> h = (rho.matrix + rho.matrix.adjoint()) / Real(2);
    return hermitian_eig(h).values(0);
}

template <typename Real>
std::complex<Real> expectation(const BasicLinOp<Real>& op, const BasicDensityMatrix<Real>& rho) {
    // Tr(O rho) = sum_ij O_ij rho_ji
    return op.matrix.cwiseProduct(rho.matrix.transpose()).sum();
}

// |<a|b>|^2 for normalized kets; insensitive to global phase.
template <typename Real>
Real fidelity(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b) {
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

// <psi|rho|psi> for a normalized ket.
template <typename Real>
Real fidelity(const BasicDensityMatrix<Real>& rho, const BasicStateVector<Real>& psi) {
    return (psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes)(0, 0).real();
}

}  // namespace ifm
