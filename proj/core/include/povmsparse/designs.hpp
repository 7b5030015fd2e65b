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

#ifndef POVMSPARSE_DESIGNS_HPP
#define POVMSPARSE_DESIGNS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"

namespace povmsparse {

/// Largest d^t for which dense operators on (C^d)^{(x)t} are built.
inline constexpr std::size_t kMaxTensorDim = 4096;

/// Finitely supported probability measure on pure states, tested as a
/// t-design of the given order.
class DesignSpec {
   public:
    struct Atom {
        double weight;
        PureState psi;
    };

    DesignSpec(std::size_t dim, int order, std::vector<Atom> atoms);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    /// Same atoms, tested at a different order.
    [[nodiscard]] DesignSpec with_order(int order) const { return {dim_, order, atoms_}; }

   private:
    std::size_t dim_;
    int order_;
    std::vector<Atom> atoms_;
};

/// binom(d + t - 1, t), the dimension of Sym^t(C^d).
std::size_t symmetric_dimension(std::size_t d, int t);

/// U(pi) on (C^d)^{(x)t}: maps e_{i_1} (x) ... (x) e_{i_t} to the product with
/// factor k moved to slot perm[k]. Built by index permutation. Unitary but
/// not Hermitian unless pi is an involution, hence a plain matrix.
ComplexMatrix permutation_operator(std::size_t d, std::span<const int> perm);

/// Orthogonal projector onto Sym^t(C^d). Throws SizeExceeded if d^t > 4096.
HermitianOperator sym_projector(std::size_t d, int t);

/// sum_i w_i (|psi_i><psi_i|)^{(x)t}
HermitianOperator frame_operator(const DesignSpec& spec);

struct DesignDefect {
    /// 1 - smallest eigenvalue of the whitened frame operator (clamped at 0).
    double epsilon_lower = 0.0;
    /// largest eigenvalue of the whitened frame operator - 1 (clamped at 0).
    double epsilon_upper = 0.0;
    /// tr F - tr(P F P), weight of the frame operator off Sym^t.
    double off_support = 0.0;
};

/// Two-sided PSD defect of `spec` against the Haar moment operator
/// T = binom(d+t-1, t)^{-1} P_Sym: the smallest epsilons with
/// (1 - lower) T <= F <= (1 + upper) T, computed on Sym^t after whitening.
/// Throws OffSymmetricSupport if F has weight above 1e-8 outside Sym^t.
DesignDefect design_defect(const DesignSpec& spec);

/// POVM (d w_i |psi_i><psi_i|). Throws NotAOneDesign unless the atoms form a
/// 1-design within 1e-9.
DiscretePOVM design_to_povm(const DesignSpec& spec);

/// Uniform weights on the computational basis.
DesignSpec basis_design(std::size_t d, int order = 1);
/// The six eigenvectors of the Pauli matrices, weight 1/6 (a qubit 3-design).
DesignSpec pauli_mub_design(int order = 2);
/// Twelve qubit states on the vertices of an icosahedron inscribed in the
/// Bloch sphere, weight 1/12 (a qubit 5-design).
DesignSpec icosahedron_design(int order = 4);

/// Qubit pure state with Bloch vector (x, y, z), |(x, y, z)| = 1.
PureState bloch_state(double x, double y, double z);

}  // namespace povmsparse

#endif  // POVMSPARSE_DESIGNS_HPP
