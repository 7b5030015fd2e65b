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

#ifndef POVMSPARSE_ZONOID_HPP
#define POVMSPARSE_ZONOID_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"

namespace povmsparse {

/// Z = conv{-u_1, u_1} + ... + conv{-u_n, u_n}, stored as generator rows.
class SymmetricZonotope {
   public:
    SymmetricZonotope(std::size_t ambient_dim, std::vector<RealVector> generators);
    explicit SymmetricZonotope(Eigen::MatrixXd generator_rows);

    [[nodiscard]] std::size_t ambient_dim() const { return static_cast<std::size_t>(gens_.cols()); }
    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(gens_.rows()); }
    [[nodiscard]] const Eigen::MatrixXd& generators() const { return gens_; }
    [[nodiscard]] RealVector generator(std::size_t i) const {
        return gens_.row(static_cast<Eigen::Index>(i)).transpose();
    }

   private:
    Eigen::MatrixXd gens_;
};

/// h_Z(x) = sum_i |<u_i, x>|
double support_function(const SymmetricZonotope& z, const RealVector& x);

/// Zonotope whose generator list is the concatenation of both lists.
SymmetricZonotope minkowski_sum(const SymmetricZonotope& a, const SymmetricZonotope& b);
SymmetricZonotope scaled(const SymmetricZonotope& z, double factor);

/// Generators with Euclidean norm below 1e-14. They are kept but reported.
std::vector<std::size_t> negligible_generators(const SymmetricZonotope& z);

/// Coordinates of a Hermitian operator in the orthonormal basis
///   E_jj (j < d), then for j < k: (E_jk + E_kj)/sqrt2, i(E_jk - E_kj)/sqrt2.
/// The map is an isometry from Hilbert-Schmidt to Euclidean geometry.
RealVector vectorize(const HermitianOperator& a);
HermitianOperator devectorize(const RealVector& x, std::size_t d);

/// Coordinates in the product basis B_{a_1} (x) ... (x) B_{a_k} built from the
/// local bases above, first factor most significant. With this basis
/// vectorize(A (x) B, {da, db}) equals kron(vectorize(A), vectorize(B)).
RealVector vectorize(const HermitianOperator& a, std::span<const std::size_t> dims);

/// K_M: one generator per element. Its support function at vectorize(Delta)
/// is dist_norm(M, Delta).
SymmetricZonotope povm_to_zonotope(const Measurement& m);
/// K_M in the product-basis coordinates of `dims`.
SymmetricZonotope povm_to_zonotope(const Measurement& m, std::span<const std::size_t> dims);

/// Zonoid tensor product: generators u_i (x) w_j, i major.
SymmetricZonotope zonotope_tensor(const SymmetricZonotope& z, const SymmetricZonotope& w);

struct RatioExtremes {
    double min_ratio = 0.0;
    double max_ratio = 0.0;
};

/// Extremes of h_Z(x) / h_Zp(x) over `directions`.
///
/// min_ratio < 1 certifies that Zp is not contained in Z; min_ratio >= 1
/// is only a necessary condition for containment. Throws DegenerateDirection
/// when h_Zp vanishes on a supplied direction.
RatioExtremes sampled_ratio(const SymmetricZonotope& z, const SymmetricZonotope& zp,
                            std::span<const RealVector> directions);

}  // namespace povmsparse

#endif  // POVMSPARSE_ZONOID_HPP
