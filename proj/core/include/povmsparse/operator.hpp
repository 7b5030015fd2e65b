// Copyright 2026 The povmsparse Authors
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

#ifndef POVMSPARSE_OPERATOR_HPP
#define POVMSPARSE_OPERATOR_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "povmsparse/rng.hpp"

namespace povmsparse {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative tolerance used when a matrix is accepted as Hermitian.
inline constexpr double kHermitianTolerance = 1e-12;

/// Dense Hermitian d x d operator.
///
/// Construction checks Hermiticity up to kHermitianTolerance (relative to the
/// largest entry) and then replaces the matrix by (A + A^dagger)/2, so that
/// every stored operator is exactly Hermitian. Instances are immutable.
class HermitianOperator {
   public:
    explicit HermitianOperator(ComplexMatrix m, double tolerance = kHermitianTolerance);

    static HermitianOperator identity(std::size_t d);
    static HermitianOperator zero(std::size_t d);
    static HermitianOperator diagonal(std::span<const double> entries);
    static HermitianOperator from_real(const Eigen::MatrixXd& m);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }
    [[nodiscard]] Complex operator()(std::size_t row, std::size_t col) const {
        return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    [[nodiscard]] double trace() const { return m_.diagonal().real().sum(); }
    /// Eigenvalues in ascending order.
    [[nodiscard]] RealVector eigenvalues() const;

    HermitianOperator operator+(const HermitianOperator& other) const;
    HermitianOperator operator-(const HermitianOperator& other) const;
    HermitianOperator operator*(double scale) const;
    HermitianOperator operator-() const { return *this * -1.0; }

    /// B A B for Hermitian B; the result is Hermitian.
    [[nodiscard]] HermitianOperator conjugated_by(const HermitianOperator& b) const;

    friend HermitianOperator operator*(double scale, const HermitianOperator& a) { return a * scale; }

   private:
    struct Trusted {};
    HermitianOperator(Trusted, ComplexMatrix m) : m_(std::move(m)) {}
    friend HermitianOperator kron(const HermitianOperator&, const HermitianOperator&);

    ComplexMatrix m_;
};

/// Unit vector in C^d.
class PureState {
   public:
    /// Rejects vectors whose Euclidean norm differs from 1 by more than 1e-12.
    explicit PureState(ComplexVector amplitudes);
    /// Normalizes `v`; throws InvalidState on a zero vector.
    static PureState normalized(const ComplexVector& v);
    static PureState basis(std::size_t d, std::size_t index);

    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
    [[nodiscard]] const ComplexVector& amplitudes() const { return v_; }
    /// |psi><psi|
    [[nodiscard]] HermitianOperator projector() const;
    /// <psi|A|psi>, real for Hermitian A.
    [[nodiscard]] double expectation(const HermitianOperator& a) const;

   private:
    ComplexVector v_;
};

/// Positive semidefinite operator of unit trace.
class DensityState {
   public:
    /// Requires smallest eigenvalue >= -1e-10 and |tr - 1| <= 1e-10.
    explicit DensityState(HermitianOperator op);
    static DensityState pure(const PureState& psi);
    static DensityState maximally_mixed(std::size_t d);

    [[nodiscard]] std::size_t dim() const { return op_.dim(); }
    [[nodiscard]] const HermitianOperator& op() const { return op_; }

   private:
    HermitianOperator op_;
};

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);
PureState kron(const PureState& a, const PureState& b);

/// Real Hilbert-Schmidt inner product tr(AB).
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

double trace_norm(const HermitianOperator& a);
double operator_norm(const HermitianOperator& a);
double hs_norm(const HermitianOperator& a);

/// A^{-1/2} via eigendecomposition.
///
/// `eigenvalue_floor` defaults to 1e-10 * operator_norm(A). Throws
/// SingularOperator when some eigenvalue lies below the floor.
HermitianOperator inv_sqrt_psd(const HermitianOperator& a,
                               std::optional<double> eigenvalue_floor = std::nullopt);

/// Partial trace over the tensor factors listed in `traced` (0-based).
///
/// `dims` gives the local dimensions in tensor order; their product must equal
/// a.dim(). Tracing out every factor returns the 1 x 1 operator [tr A].
HermitianOperator partial_trace(const HermitianOperator& a, std::span<const std::size_t> dims,
                                std::span<const std::size_t> traced);

/// Haar-distributed unit vector: a standard complex Gaussian, normalized.
PureState haar_unit_vector(std::size_t d, RngStream& rng);

/// GUE-distributed Hermitian matrix rescaled to unit Hilbert-Schmidt norm.
HermitianOperator random_direction(std::size_t d, RngStream& rng);

std::size_t product(std::span<const std::size_t> dims);

}  // namespace povmsparse

#endif  // POVMSPARSE_OPERATOR_HPP
