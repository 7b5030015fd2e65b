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

#include "povmsparse/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "povmsparse/errors.hpp"

namespace povmsparse {

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> eigensolve(const HermitianOperator& a,
                                                        bool vectors) {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(
        a.matrix(), vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
}

// Offsets into the full index space for every multi-index over `factors`.
std::vector<std::size_t> factor_offsets(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> strides,
                                        std::span<const std::size_t> factors) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t f : factors) {
        std::vector<std::size_t> next;
        next.reserve(offsets.size() * dims[f]);
        for (std::size_t base : offsets) {
            for (std::size_t i = 0; i < dims[f]; ++i) next.push_back(base + i * strides[f]);
        }
        offsets = std::move(next);
    }
    return offsets;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m, double tolerance) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionMismatch("Hermitian operator must be a non-empty square matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!m.allFinite()) throw NotHermitian("matrix has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tolerance * scale) {
        throw NotHermitian("matrix is not Hermitian: max |A - A^dagger| = " +
                           std::to_string(defect));
    }
    m_ = (m + m.adjoint()) * 0.5;
}

HermitianOperator HermitianOperator::identity(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return HermitianOperator(Trusted{}, ComplexMatrix::Identity(n, n));
}

HermitianOperator HermitianOperator::zero(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d);
    return HermitianOperator(Trusted{}, ComplexMatrix::Zero(n, n));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> entries) {
    const auto n = static_cast<Eigen::Index>(entries.size());
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::from_real(const Eigen::MatrixXd& m) {
    return HermitianOperator(m.cast<Complex>());
}

RealVector HermitianOperator::eigenvalues() const { return eigensolve(*this, false).eigenvalues(); }

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("operator sum of different dimensions");
    return HermitianOperator(Trusted{}, m_ + other.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
    if (dim() != other.dim()) throw DimensionMismatch("operator difference of different dimensions");
    return HermitianOperator(Trusted{}, m_ - other.m_);
}

HermitianOperator HermitianOperator::operator*(double scale) const {
    return HermitianOperator(Trusted{}, m_ * scale);
}

HermitianOperator HermitianOperator::conjugated_by(const HermitianOperator& b) const {
    if (dim() != b.dim()) throw DimensionMismatch("conjugation by operator of different dimension");
    ComplexMatrix r = b.m_ * m_ * b.m_;
    return HermitianOperator(Trusted{}, (r + r.adjoint()) * 0.5);
}

PureState::PureState(ComplexVector amplitudes) : v_(std::move(amplitudes)) {
    if (v_.size() == 0) throw InvalidState("pure state must have dimension >= 1");
    const double norm = v_.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-12) {
        throw InvalidState("pure state amplitudes have norm " + std::to_string(norm));
    }
}

PureState PureState::normalized(const ComplexVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidState("cannot normalize a zero vector");
    return PureState(v / norm);
}

PureState PureState::basis(std::size_t d, std::size_t index) {
    if (index >= d) throw InvalidArgument("basis index out of range");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

HermitianOperator PureState::projector() const {
    return HermitianOperator(v_ * v_.adjoint());
}

double PureState::expectation(const HermitianOperator& a) const {
    if (a.dim() != dim()) throw DimensionMismatch("expectation: state and operator dimensions differ");
    return v_.dot(a.matrix() * v_).real();
}

DensityState::DensityState(HermitianOperator op) : op_(std::move(op)) {
    const double tr = op_.trace();
    if (std::abs(tr - 1.0) > 1e-10) {
        throw InvalidState("density operator has trace " + std::to_string(tr));
    }
    const double lmin = op_.eigenvalues()(0);
    if (lmin < -1e-10) {
        throw InvalidState("density operator has negative eigenvalue " + std::to_string(lmin));
    }
}

DensityState DensityState::pure(const PureState& psi) { return DensityState(psi.projector()); }

DensityState DensityState::maximally_mixed(std::size_t d) {
    return DensityState(HermitianOperator::identity(d) * (1.0 / static_cast<double>(d)));
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
    const Eigen::Index da = a.matrix().rows();
    const Eigen::Index db = b.matrix().rows();
    ComplexMatrix r(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) {
            r.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
        }
    }
    return HermitianOperator(HermitianOperator::Trusted{}, std::move(r));
}

PureState kron(const PureState& a, const PureState& b) {
    const Eigen::Index da = a.amplitudes().size();
    const Eigen::Index db = b.amplitudes().size();
    ComplexVector r(da * db);
    for (Eigen::Index i = 0; i < da; ++i) r.segment(i * db, db) = a.amplitudes()(i) * b.amplitudes();
    return PureState::normalized(r);
}

double hs_inner(const HermitianOperator& a, const HermitianOperator& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("hs_inner: operator dimensions differ");
    // tr(AB) = sum_jk A_jk conj(B_jk) for Hermitian B; real up to roundoff.
    const Eigen::Index n = 2 * a.matrix().size();
    Eigen::Map<const RealVector> x(reinterpret_cast<const double*>(a.matrix().data()), n);
    Eigen::Map<const RealVector> y(reinterpret_cast<const double*>(b.matrix().data()), n);
    return x.dot(y);
}

double trace_norm(const HermitianOperator& a) { return a.eigenvalues().cwiseAbs().sum(); }

double operator_norm(const HermitianOperator& a) { return a.eigenvalues().cwiseAbs().maxCoeff(); }

double hs_norm(const HermitianOperator& a) { return a.matrix().norm(); }

HermitianOperator inv_sqrt_psd(const HermitianOperator& a, std::optional<double> eigenvalue_floor) {
    const auto solver = eigensolve(a, true);
    const RealVector& lambda = solver.eigenvalues();
    const double floor = eigenvalue_floor.value_or(1e-10 * lambda.cwiseAbs().maxCoeff());
    if (!(lambda(0) >= floor) || lambda(0) <= 0.0) {
        throw SingularOperator("inv_sqrt_psd: eigenvalue " + std::to_string(lambda(0)) +
                               " below floor " + std::to_string(floor));
    }
    const ComplexMatrix& u = solver.eigenvectors();
    ComplexMatrix r = u * lambda.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * u.adjoint();
    return HermitianOperator((r + r.adjoint()) * 0.5, 1e-8);
}

std::size_t product(std::span<const std::size_t> dims) {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

HermitianOperator partial_trace(const HermitianOperator& a, std::span<const std::size_t> dims,
                                std::span<const std::size_t> traced) {
    if (dims.empty() || product(dims) != a.dim() ||
        std::any_of(dims.begin(), dims.end(), [](std::size_t x) { return x == 0; })) {
        throw DimensionMismatch("partial_trace: product of local dimensions does not match operator");
    }
    const std::size_t k = dims.size();
    std::vector<bool> is_traced(k, false);
    for (std::size_t f : traced) {
        if (f >= k) throw DimensionMismatch("partial_trace: factor index out of range");
        if (is_traced[f]) throw InvalidArgument("partial_trace: repeated factor index");
        is_traced[f] = true;
    }
    std::vector<std::size_t> strides(k);
    std::size_t stride = 1;
    for (std::size_t i = k; i-- > 0;) {
        strides[i] = stride;
        stride *= dims[i];
    }
    std::vector<std::size_t> kept_factors, traced_factors;
    for (std::size_t i = 0; i < k; ++i) (is_traced[i] ? traced_factors : kept_factors).push_back(i);

    const auto kept = factor_offsets(dims, strides, kept_factors);
    const auto summed = factor_offsets(dims, strides, traced_factors);
    const auto n = static_cast<Eigen::Index>(kept.size());
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    const ComplexMatrix& m = a.matrix();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            Complex acc = 0.0;
            for (std::size_t t : summed) {
                acc += m(static_cast<Eigen::Index>(kept[static_cast<std::size_t>(i)] + t),
                         static_cast<Eigen::Index>(kept[static_cast<std::size_t>(j)] + t));
            }
            r(i, j) = acc;
        }
    }
    return HermitianOperator(std::move(r));
}

PureState haar_unit_vector(std::size_t d, RngStream& rng) {
    if (d == 0) throw InvalidArgument("haar_unit_vector: dimension must be >= 1");
    ComplexVector v(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return PureState::normalized(v);
}

HermitianOperator random_direction(std::size_t d, RngStream& rng) {
    if (d == 0) throw InvalidArgument("random_direction: dimension must be >= 1");
    const auto n = static_cast<Eigen::Index>(d);
    const double off = std::sqrt(0.5);
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        m(i, i) = rng.normal();
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double re = off * rng.normal();
            const double im = off * rng.normal();
            m(i, j) = Complex(re, im);
            m(j, i) = std::conj(m(i, j));
        }
    }
    m /= m.norm();
    return HermitianOperator(std::move(m));
}

}  // namespace povmsparse
