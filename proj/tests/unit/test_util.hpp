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

#ifndef POVMSPARSE_TESTS_TEST_UTIL_HPP
#define POVMSPARSE_TESTS_TEST_UTIL_HPP

#include <algorithm>
#include <cstdint>
#include <vector>

#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"
#include "povmsparse/rng.hpp"

namespace povmsparse::testing {

/// Hermitian matrix with unscaled Gaussian entries (not normalized).
inline HermitianOperator random_hermitian(std::size_t d, RngStream& rng, double scale = 1.0) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(rng.normal(), rng.normal()) * scale;
    }
    return HermitianOperator(ComplexMatrix((m + m.adjoint()) * 0.5));
}

inline HermitianOperator random_psd(std::size_t d, std::size_t rank, RngStream& rng) {
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix g(n, static_cast<Eigen::Index>(rank));
    for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = Complex(rng.normal(), rng.normal());
    return HermitianOperator(ComplexMatrix(g * g.adjoint()));
}

inline DensityState random_density(std::size_t d, std::size_t rank, RngStream& rng) {
    const auto p = random_psd(d, rank, rng);
    return DensityState(p * (1.0 / p.trace()));
}

/// Generic POVM built from arbitrary PSD operators Q_i via S^{-1/2} Q_i S^{-1/2};
/// independent of the Haar-vector construction in the sparsify module. The rank
/// is raised to ceil(d / n) when needed so that the sum of the Q_i is invertible.
inline DiscretePOVM random_mixed_povm(std::size_t d, std::size_t n, std::size_t rank, RngStream& rng) {
    rank = std::max(rank, (d + n - 1) / n);
    std::vector<HermitianOperator> q;
    ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        q.push_back(random_psd(d, rank, rng));
        s += q.back().matrix();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
    const ComplexMatrix root =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() *
        es.eigenvectors().adjoint();
    std::vector<HermitianOperator> elements;
    for (const auto& x : q) {
        ComplexMatrix e = root * x.matrix() * root;
        elements.emplace_back(ComplexMatrix((e + e.adjoint()) * 0.5));
    }
    return DiscretePOVM(std::move(elements));
}

/// Sum of singular values: an eigensolver-free trace norm oracle.
inline double svd_trace_norm(const HermitianOperator& a) {
    return Eigen::JacobiSVD<ComplexMatrix>(a.matrix()).singularValues().sum();
}

}  // namespace povmsparse::testing

#endif  // POVMSPARSE_TESTS_TEST_UTIL_HPP
