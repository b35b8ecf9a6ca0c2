// Copyright 2026 The anonqss Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ANONQSS_CORE_LINALG_HPP
#define ANONQSS_CORE_LINALG_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonqss {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Raised when an object would violate one of its structural invariants.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kStateTol = 1e-10;
inline constexpr double kEigClampTol = 1e-10;
inline constexpr double kEntropyCutoff = 1e-12;

inline std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

inline bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); i++) {
        if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) {
            return false;
        }
    }
    return true;
}

inline double hermitian_deviation(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        return INFINITY;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Spectral decomposition of a Hermitian matrix (input is symmetrized first).
struct HermitianEigen {
    RealVector values;  // ascending
    ComplexMatrix vectors;

    explicit HermitianEigen(const ComplexMatrix &m) {
        ComplexMatrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("Hermitian eigendecomposition failed");
        }
        values = solver.eigenvalues();
        vectors = solver.eigenvectors();
    }
};

/// Eigenvalues of a PSD operator. Values in [-kEigClampTol, 0) are clamped to 0,
/// anything more negative is treated as a corrupted input.
inline RealVector psd_eigenvalues(const ComplexMatrix &m) {
    HermitianEigen eig(m);
    for (Eigen::Index i = 0; i < eig.values.size(); i++) {
        double &v = eig.values[i];
        if (v < -kEigClampTol) {
            throw InvariantError("operator has eigenvalue " + std::to_string(v) + " below -1e-10");
        }
        v = std::max(v, 0.0);
    }
    return eig.values;
}

/// Applies f to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix &m, F &&f) {
    HermitianEigen eig(m);
    RealVector mapped = eig.values.unaryExpr(f);
    return eig.vectors * mapped.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
}

/// Principal square root of a PSD matrix via Hermitian eigendecomposition.
inline ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    return hermitian_function(m, [](double v) { return std::sqrt(std::max(v, 0.0)); });
}

/// Orthonormal basis (as columns) of the eigenspace with eigenvalue > cutoff.
inline ComplexMatrix support_basis(const ComplexMatrix &m, double cutoff) {
    HermitianEigen eig(m);
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < eig.values.size(); i++) {
        if (eig.values[i] > cutoff) {
            cols.push_back(i);
        }
    }
    ComplexMatrix basis(m.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); c++) {
        basis.col(static_cast<Eigen::Index>(c)) = eig.vectors.col(cols[c]);
    }
    return basis;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline ComplexVector kron(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a[i] * b;
    }
    return out;
}

namespace pauli_matrices {
inline ComplexMatrix I() { return ComplexMatrix::Identity(2, 2); }
inline ComplexMatrix X() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline ComplexMatrix Y() {
    ComplexMatrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return m;
}
inline ComplexMatrix Z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
inline ComplexMatrix H() {
    ComplexMatrix m(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}
}  // namespace pauli_matrices

}  // namespace anonqss

#endif
