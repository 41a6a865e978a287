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

#include "qfridge/qmat.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qfridge {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x" << b.cols();
        throw DimensionError(msg.str());
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
}

ComplexMatrix::ComplexMatrix(size_t rows, size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw DimensionError(
            "ComplexMatrix: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " needs " +
            std::to_string(rows_ * cols_) + " entries, got " + std::to_string(data_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(size_t n) {
    ComplexMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size(), values.size());
    for (size_t i = 0; i < values.size(); i++) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
        for (size_t c = 0; c < cols_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw DimensionError("trace of a non-square matrix");
    }
    Complex t = 0;
    for (size_t i = 0; i < rows_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
    std::vector<double> d(std::min(rows_, cols_));
    for (size_t i = 0; i < d.size(); i++) {
        d[i] = (*this)(i, i).real();
    }
    return d;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+=");
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-=");
    for (size_t i = 0; i < data_.size(); i++) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
    for (auto &v : data_) {
        v *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw DimensionError(
            "matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (size_t r = 0; r < a.rows(); r++) {
        for (size_t k = 0; k < a.cols(); k++) {
            Complex v = a(r, k);
            if (v == Complex(0)) {
                continue;
            }
            for (size_t c = 0; c < b.cols(); c++) {
                out(r, c) += v * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(ComplexMatrix a, Complex scale) {
    a *= scale;
    return a;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix a) {
    a *= scale;
    return a;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t i = 0; i < ea.size(); i++) {
        worst = std::max(worst, std::abs(ea[i] - eb[i]));
    }
    return worst;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        return false;
    }
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = r; c < m.cols(); c++) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool is_diagonal(const ComplexMatrix &m, double tol) {
    for (size_t r = 0; r < m.rows(); r++) {
        for (size_t c = 0; c < m.cols(); c++) {
            if (r != c && std::abs(m(r, c)) > tol) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix sandwich(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b * a.adjoint();
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (size_t ar = 0; ar < a.rows(); ar++) {
        for (size_t ac = 0; ac < a.cols(); ac++) {
            Complex v = a(ar, ac);
            if (v == Complex(0)) {
                continue;
            }
            for (size_t br = 0; br < b.rows(); br++) {
                for (size_t bc = 0; bc < b.cols(); bc++) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = v * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix matrix_power(const ComplexMatrix &m, unsigned exponent) {
    if (!m.is_square()) {
        throw DimensionError("matrix_power of a non-square matrix");
    }
    ComplexMatrix result = ComplexMatrix::identity(m.rows());
    ComplexMatrix base = m;
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * base;
        }
        exponent >>= 1;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

ComplexMatrix sqrt_diagonal(const ComplexMatrix &m) {
    if (!m.is_square() || !is_diagonal(m)) {
        throw DimensionError("sqrt_diagonal needs a square diagonal matrix");
    }
    ComplexMatrix out(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); i++) {
        Complex v = m(i, i);
        if (v.imag() != 0.0 || v.real() < 0.0) {
            throw std::domain_error("sqrt_diagonal: entry " + std::to_string(i) + " is not a nonnegative real");
        }
        out(i, i) = std::sqrt(v.real());
    }
    return out;
}

size_t SubsystemShape::total() const {
    size_t t = 1;
    for (size_t d : dims) {
        t *= d;
    }
    return t;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemShape &shape, std::span<const size_t> keep) {
    const size_t n = shape.dims.size();
    if (!m.is_square() || shape.total() != m.rows()) {
        throw DimensionError(
            "partial_trace: shape of total dimension " + std::to_string(shape.total()) + " does not annotate a " +
            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " matrix");
    }
    std::vector<bool> kept(n, false);
    for (size_t k : keep) {
        if (k >= n) {
            throw DimensionError("partial_trace: subsystem index " + std::to_string(k) + " out of range");
        }
        kept[k] = true;
    }

    // Full index = sum over subsystems of digit * stride.
    std::vector<size_t> stride(n);
    size_t s = 1;
    for (size_t i = n; i-- > 0;) {
        stride[i] = s;
        s *= shape.dims[i];
    }
    auto offsets = [&](bool want_kept) {
        std::vector<size_t> out{0};
        for (size_t i = 0; i < n; i++) {
            if (kept[i] != want_kept) {
                continue;
            }
            std::vector<size_t> next;
            next.reserve(out.size() * shape.dims[i]);
            for (size_t base : out) {
                for (size_t digit = 0; digit < shape.dims[i]; digit++) {
                    next.push_back(base + digit * stride[i]);
                }
            }
            out = std::move(next);
        }
        return out;
    };
    const auto keep_off = offsets(true);
    const auto trace_off = offsets(false);

    ComplexMatrix out(keep_off.size(), keep_off.size());
    for (size_t a = 0; a < keep_off.size(); a++) {
        for (size_t b = 0; b < keep_off.size(); b++) {
            Complex acc = 0;
            for (size_t t : trace_off) {
                acc += m(keep_off[a] + t, keep_off[b] + t);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix replace_subsystem(
    const ComplexMatrix &m, const SubsystemShape &shape, size_t index, const ComplexMatrix &replacement) {
    if (index >= shape.dims.size()) {
        throw DimensionError("replace_subsystem: subsystem index " + std::to_string(index) + " out of range");
    }
    const size_t dq = shape.dims[index];
    if (replacement.rows() != dq || replacement.cols() != dq) {
        throw DimensionError("replace_subsystem: replacement does not match subsystem dimension");
    }
    std::vector<size_t> rest;
    for (size_t i = 0; i < shape.dims.size(); i++) {
        if (i != index) {
            rest.push_back(i);
        }
    }
    const ComplexMatrix reduced = partial_trace(m, shape, rest);

    size_t inner = 1;
    for (size_t i = index + 1; i < shape.dims.size(); i++) {
        inner *= shape.dims[i];
    }
    const size_t total = m.rows();
    ComplexMatrix out(total, total);
    for (size_t i = 0; i < total; i++) {
        const size_t iq = (i / inner) % dq;
        const size_t ir = (i / (inner * dq)) * inner + i % inner;
        for (size_t j = 0; j < total; j++) {
            const size_t jq = (j / inner) % dq;
            const size_t jr = (j / (inner * dq)) * inner + j % inner;
            out(i, j) = replacement(iq, jq) * reduced(ir, jr);
        }
    }
    return out;
}

std::vector<ComplexMatrix> pauli_basis(size_t d) {
    if (d < 2) {
        throw DimensionError("pauli_basis needs d >= 2");
    }
    using namespace std::complex_literals;
    if (d == 2) {
        return {
            ComplexMatrix::identity(2),
            ComplexMatrix(2, 2, {0, 1, 1, 0}),
            ComplexMatrix(2, 2, {0, -1i, 1i, 0}),
            ComplexMatrix(2, 2, {1, 0, 0, -1}),
        };
    }
    std::vector<ComplexMatrix> basis;
    basis.reserve(d * d);
    const double w = 2 * std::numbers::pi / static_cast<double>(d);
    for (size_t a = 0; a < d; a++) {
        for (size_t b = 0; b < d; b++) {
            // X^a Z^b |j> = omega^{b j} |j + a mod d>
            ComplexMatrix u(d, d);
            for (size_t j = 0; j < d; j++) {
                u((j + a) % d, j) = std::polar(1.0, w * static_cast<double>((b * j) % d));
            }
            basis.push_back(std::move(u));
        }
    }
    return basis;
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : DensityMatrix(m, SubsystemShape{{m.rows()}}) {
}

DensityMatrix::DensityMatrix(ComplexMatrix m, SubsystemShape shape) : matrix_(std::move(m)), shape_(std::move(shape)) {
    if (!matrix_.is_square()) {
        throw DimensionError("DensityMatrix must be square");
    }
    if (shape_.total() != matrix_.rows()) {
        throw DimensionError("DensityMatrix: subsystem dims do not multiply to the matrix dimension");
    }
    const Complex t = matrix_.trace();
    if (std::abs(t - Complex(1.0)) > 1e-9) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace is " << t.real() << "+" << t.imag() << "i, expected 1";
        throw std::invalid_argument(msg.str());
    }
    if (!is_hermitian(matrix_, 1e-9)) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix &m) {
    return normalized(m, SubsystemShape{{m.rows()}});
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix &m, SubsystemShape shape) {
    const double t = m.trace().real();
    if (!(t > 0)) {
        throw std::invalid_argument("DensityMatrix::normalized: trace is not positive");
    }
    return DensityMatrix(m * Complex(1.0 / t), std::move(shape));
}

std::string to_string(const ComplexMatrix &m) {
    std::ostringstream out;
    out.precision(6);
    for (size_t r = 0; r < m.rows(); r++) {
        out << (r == 0 ? "[" : " ");
        for (size_t c = 0; c < m.cols(); c++) {
            const Complex v = m(r, c);
            out << " " << v.real();
            if (v.imag() != 0.0) {
                out << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
            }
        }
        out << (r + 1 == m.rows() ? " ]" : "\n");
    }
    return out.str();
}

}  // namespace qfridge
