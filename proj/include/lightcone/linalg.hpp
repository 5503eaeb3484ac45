// Copyright 2026 The lightcone Authors
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

/**
 * @file
 * Dense complex linear algebra for small systems: tensor products, partial
 * traces, commutators, trace-norm distance, and Hermitian spectral
 * decomposition. Everything in scope is at most 64-dimensional, so storage
 * is plain row-major and algorithms are the textbook ones. Spectral
 * decomposition and singular values are delegated to Eigen.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lightcone/errors.hpp"

namespace lightcone {

using cplx = std::complex<double>;

/// Max entrywise |A - A^dagger| below which a matrix counts as Hermitian.
inline constexpr double kHermitianTol = 1e-10;

/// Eigenvalue gap below which neighboring eigenvalues are merged into a
/// single degenerate cluster with one projector.
inline constexpr double kEigenvalueMergeTol = 1e-8;

/// Dense row-major complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    /// Zero matrix of the given shape.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) {
            throw DimensionError("entry count " + std::to_string(data_.size()) +
                                 " does not match shape " + shape_string());
        }
        for (const cplx& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw PreconditionError("matrix entries must be finite");
            }
        }
    }

    /// Row-major brace construction: ComplexMatrix{{a, b}, {c, d}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw DimensionError("ragged initializer rows");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }

    ComplexMatrix& operator*=(const cplx& s) {
        for (cplx& z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(const cplx& s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, const cplx& s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw DimensionError("matrix product shape mismatch: " + a.shape_string() + " * " +
                                 b.shape_string());
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(j, i) = std::conj((*this)(i, j));
            }
        }
        return out;
    }

    cplx trace() const {
        if (!is_square()) {
            throw DimensionError("trace of non-square matrix " + shape_string());
        }
        cplx t(0.0, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest entrywise modulus.
    double max_abs() const {
        double m = 0.0;
        for (const cplx& z : data_) {
            m = std::max(m, std::abs(z));
        }
        return m;
    }

    bool is_hermitian(double tol = kHermitianTol) const {
        if (!is_square()) {
            return false;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i; j < cols_; ++j) {
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                    return false;
                }
            }
        }
        return true;
    }

    bool approx_equal(const ComplexMatrix& o, double tol) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            return false;
        }
        for (std::size_t k = 0; k < data_.size(); ++k) {
            if (std::abs(data_[k] - o.data_[k]) > tol) {
                return false;
            }
        }
        return true;
    }

    std::string shape_string() const {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

  private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw DimensionError("shape mismatch: " + shape_string() + " vs " + o.shape_string());
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Complex column vector (kets).
class ComplexVector {
  public:
    ComplexVector() = default;

    explicit ComplexVector(std::vector<cplx> entries) : data_(std::move(entries)) {
        for (const cplx& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw PreconditionError("vector entries must be finite");
            }
        }
    }

    ComplexVector(std::initializer_list<cplx> entries) : ComplexVector(std::vector<cplx>(entries)) {}

    std::size_t dim() const { return data_.size(); }
    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }
    const std::vector<cplx>& entries() const { return data_; }

    double norm() const {
        double s = 0.0;
        for (const cplx& z : data_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    ComplexVector normalized() const {
        const double n = norm();
        if (n == 0.0) {
            throw PreconditionError("cannot normalize zero vector");
        }
        ComplexVector out = *this;
        for (cplx& z : out.data_) {
            z /= n;
        }
        return out;
    }

  private:
    std::vector<cplx> data_;
};

/// <a|b> with the convention that the left argument is conjugated.
inline cplx inner(const ComplexVector& a, const ComplexVector& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("inner product dimension mismatch");
    }
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// |a><b|.
inline ComplexMatrix outer(const ComplexVector& a, const ComplexVector& b) {
    ComplexMatrix out(a.dim(), b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return out;
}

/// |a> tensor |b>, left factor major.
inline ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
    std::vector<cplx> out;
    out.reserve(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            out.push_back(a[i] * b[j]);
        }
    }
    return ComplexVector(std::move(out));
}

/// Kronecker product; composite index order is left-factor major.
inline ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.empty() || b.empty()) {
        throw PreconditionError("tensor_product of empty matrix");
    }
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

/// I_pre tensor op tensor I_post, where op sits at position `slot` of the
/// subsystem decomposition `dims`.
inline ComplexMatrix embed_at(const ComplexMatrix& op, const std::vector<std::size_t>& dims,
                              std::size_t slot) {
    if (slot >= dims.size()) {
        throw DimensionError("embed slot " + std::to_string(slot) + " out of range");
    }
    if (op.rows() != dims[slot] || op.cols() != dims[slot]) {
        throw DimensionError("operator shape " + op.shape_string() +
                             " does not match subsystem dimension " + std::to_string(dims[slot]));
    }
    std::size_t pre = 1, post = 1;
    for (std::size_t k = 0; k < slot; ++k) {
        pre *= dims[k];
    }
    for (std::size_t k = slot + 1; k < dims.size(); ++k) {
        post *= dims[k];
    }
    ComplexMatrix out = op;
    if (pre > 1) {
        out = tensor_product(ComplexMatrix::identity(pre), out);
    }
    if (post > 1) {
        out = tensor_product(out, ComplexMatrix::identity(post));
    }
    return out;
}

/// Partial trace over all subsystems except `keep`. `dims` lists the
/// subsystem dimensions whose product must equal the matrix dimension.
/// Trace is preserved.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<std::size_t>& dims,
                                   std::size_t keep) {
    if (!rho.is_square()) {
        throw DimensionError("partial_trace requires a square matrix");
    }
    std::size_t total = 1;
    for (std::size_t d : dims) {
        total *= d;
    }
    if (total != rho.rows()) {
        throw DimensionError("subsystem dims multiply to " + std::to_string(total) +
                             " but matrix is " + rho.shape_string());
    }
    if (keep >= dims.size()) {
        throw DimensionError("keep index out of range");
    }

    // Strides for the mixed-radix index (i_0, ..., i_{m-1}).
    std::vector<std::size_t> strides(dims.size(), 1);
    for (std::size_t k = dims.size(); k-- > 1;) {
        strides[k - 1] = strides[k] * dims[k];
    }

    const std::size_t dk = dims[keep];
    const std::size_t env = total / dk;
    ComplexMatrix out(dk, dk);

    // Enumerate environment configurations as mixed-radix counters over the
    // non-kept subsystems.
    std::vector<std::size_t> env_index(dims.size(), 0);
    for (std::size_t e = 0; e < env; ++e) {
        std::size_t offset = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (k != keep) {
                offset += env_index[k] * strides[k];
            }
        }
        for (std::size_t a = 0; a < dk; ++a) {
            for (std::size_t b = 0; b < dk; ++b) {
                out(a, b) += rho(offset + a * strides[keep], offset + b * strides[keep]);
            }
        }
        // Advance the counter, skipping the kept slot.
        for (std::size_t k = dims.size(); k-- > 0;) {
            if (k == keep) {
                continue;
            }
            if (++env_index[k] < dims[k]) {
                break;
            }
            env_index[k] = 0;
        }
    }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("commutator requires equal square shapes");
    }
    return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("anticommutator requires equal square shapes");
    }
    return a * b + b * a;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
        }
    }
    return out;
}

} // namespace detail

/// Sum of singular values of a - b. Zero iff a == b; symmetric in its
/// arguments. For density operators this is twice the standard trace
/// distance convention with the 1/2 prefactor omitted, matching the
/// consistency metric used throughout.
inline double trace_norm_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("trace_norm_distance requires equal square shapes");
    }
    const Eigen::MatrixXcd diff = detail::to_eigen(a) - detail::to_eigen(b);
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(diff).singularValues().sum();
}

/// Raw ascending eigenvalues of a Hermitian matrix (no degeneracy merge).
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("eigenvalues of non-square matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(a),
                                                           Eigen::EigenvaluesOnly);
    std::vector<double> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    }
    return out;
}

struct Eigensystem {
    /// Distinct eigenvalues, ascending; near-degenerate values merged.
    std::vector<double> values;
    /// One orthogonal projector per merged eigenvalue; they are idempotent
    /// and sum to the identity.
    std::vector<ComplexMatrix> projectors;
};

/// Spectral decomposition of a Hermitian matrix. Eigenvalues closer than
/// kEigenvalueMergeTol are treated as one degenerate level and share a
/// projector.
inline Eigensystem hermitian_eigensystem(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionError("eigensystem of non-square matrix");
    }
    if (!a.is_hermitian()) {
        throw HermiticityError("matrix is not Hermitian within " + std::to_string(kHermitianTol));
    }
    // Symmetrize to scrub the (sub-tolerance) anti-Hermitian part.
    ComplexMatrix sym = a;
    sym += a.adjoint();
    sym *= cplx(0.5, 0.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(detail::to_eigen(sym));
    if (solver.info() != Eigen::Success) {
        throw Error("eigensolver failed to converge");
    }

    const std::size_t n = a.rows();
    Eigensystem out;
    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && solver.eigenvalues()(static_cast<Eigen::Index>(stop)) -
                                   solver.eigenvalues()(static_cast<Eigen::Index>(stop - 1)) <
                               kEigenvalueMergeTol) {
            ++stop;
        }
        double value = 0.0;
        ComplexMatrix projector(n, n);
        for (std::size_t k = start; k < stop; ++k) {
            value += solver.eigenvalues()(static_cast<Eigen::Index>(k));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    projector(i, j) += solver.eigenvectors()(static_cast<Eigen::Index>(i),
                                                             static_cast<Eigen::Index>(k)) *
                                       std::conj(solver.eigenvectors()(
                                           static_cast<Eigen::Index>(j),
                                           static_cast<Eigen::Index>(k)));
                }
            }
        }
        out.values.push_back(value / static_cast<double>(stop - start));
        out.projectors.push_back(std::move(projector));
        start = stop;
    }
    return out;
}

} // namespace lightcone
