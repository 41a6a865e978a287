// Copyright 2026 The qfridge Authors
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

#ifndef QFRIDGE_QMAT_H
#define QFRIDGE_QMAT_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfridge {

using Complex = std::complex<double>;

/// Tolerance used for algebraic identities unless an operation states its own.
inline constexpr double kIdentityTolerance = 1e-10;

/// Raised when operand shapes are inconsistent.
class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Dense complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(size_t rows, size_t cols);
    ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(size_t n);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::span<const Complex> values);

    size_t rows() const {
        return rows_;
    }
    size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(size_t r, size_t c) {
        return data_[r * cols_ + c];
    }
    const Complex &operator()(size_t r, size_t c) const {
        return data_[r * cols_ + c];
    }

    std::span<const Complex> entries() const {
        return data_;
    }
    std::span<Complex> entries() {
        return data_;
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    std::vector<double> real_diagonal() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t rows_ = 0;
    size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(ComplexMatrix a, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
bool is_hermitian(const ComplexMatrix &m, double tol = kIdentityTolerance);
bool is_diagonal(const ComplexMatrix &m, double tol = 0.0);

/// A * B * A^dag, the building block of every channel application.
ComplexMatrix sandwich(const ComplexMatrix &a, const ComplexMatrix &b);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix matrix_power(const ComplexMatrix &m, unsigned exponent);

/// Principal square root of a diagonal matrix with nonnegative real entries.
ComplexMatrix sqrt_diagonal(const ComplexMatrix &m);

/// Ordered tensor-factor dimensions annotating a matrix, e.g. {N, 2} for control (x) target.
struct SubsystemShape {
    std::vector<size_t> dims;

    size_t total() const;
    bool operator==(const SubsystemShape &) const = default;
};

/// Reduced matrix over the subsystems listed in `keep` (in ascending subsystem order).
ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemShape &shape, std::span<const size_t> keep);

/// Traces out subsystem `index` and puts `replacement` in its slot, i.e. Tr_i[m] (x)_i replacement.
ComplexMatrix replace_subsystem(
    const ComplexMatrix &m, const SubsystemShape &shape, size_t index, const ComplexMatrix &replacement);

/// Orthogonal unitary basis of d x d matrices: tr(U_i^dag U_j) = d delta_ij.
/// d = 2 gives {I, X, Y, Z}; larger d gives the clock-and-shift products X^a Z^b.
std::vector<ComplexMatrix> pauli_basis(size_t d);

/// Square unit-trace Hermitian matrix carrying its tensor-factor structure.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix m);
    DensityMatrix(ComplexMatrix m, SubsystemShape shape);

    /// Divides by the trace. Throws if the trace is not positive.
    static DensityMatrix normalized(const ComplexMatrix &m);
    static DensityMatrix normalized(const ComplexMatrix &m, SubsystemShape shape);

    const ComplexMatrix &matrix() const {
        return matrix_;
    }
    const SubsystemShape &shape() const {
        return shape_;
    }
    size_t dim() const {
        return matrix_.rows();
    }
    double population(size_t i) const {
        return matrix_(i, i).real();
    }

   private:
    ComplexMatrix matrix_;
    SubsystemShape shape_;
};

std::string to_string(const ComplexMatrix &m);

}  // namespace qfridge

#endif
