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

#include "povmsparse/designs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "povmsparse/errors.hpp"

namespace povmsparse {

namespace {

std::size_t tensor_dim(std::size_t d, int t) {
    std::size_t n = 1;
    for (int i = 0; i < t; ++i) {
        if (n > kMaxTensorDim / d + 1) return kMaxTensorDim + 1;
        n *= d;
    }
    return n;
}

void require_dense(std::size_t d, int t) {
    if (d == 0 || t < 1) throw InvalidArgument("design dimension and order must be positive");
    if (tensor_dim(d, t) > kMaxTensorDim) {
        throw SizeExceeded("d^t = " + std::to_string(d) + "^" + std::to_string(t) + " exceeds the dense bound " +
                           std::to_string(kMaxTensorDim));
    }
}

// Indices of (C^d)^{(x)t} grouped by the multiset of their digits. Each group
// spans one vector of the standard orthonormal basis of Sym^t.
std::vector<std::vector<std::size_t>> symmetric_groups(std::size_t d, int t) {
    const std::size_t n = tensor_dim(d, t);
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
    std::vector<std::size_t> digits(static_cast<std::size_t>(t));
    for (std::size_t index = 0; index < n; ++index) {
        std::size_t rest = index;
        for (int k = t; k-- > 0;) {
            digits[static_cast<std::size_t>(k)] = rest % d;
            rest /= d;
        }
        auto key = digits;
        std::sort(key.begin(), key.end());
        groups[key].push_back(index);
    }
    std::vector<std::vector<std::size_t>> out;
    out.reserve(groups.size());
    for (auto& [key, members] : groups) out.push_back(std::move(members));
    return out;
}

ComplexVector tensor_power(const PureState& psi, int t) {
    ComplexVector v = ComplexVector::Ones(1);
    const ComplexVector& a = psi.amplitudes();
    for (int k = 0; k < t; ++k) {
        ComplexVector next(v.size() * a.size());
        for (Eigen::Index i = 0; i < v.size(); ++i) next.segment(i * a.size(), a.size()) = v(i) * a;
        v = std::move(next);
    }
    return v;
}

}  // namespace

DesignSpec::DesignSpec(std::size_t dim, int order, std::vector<Atom> atoms)
    : dim_(dim), order_(order), atoms_(std::move(atoms)) {
    if (dim_ == 0) throw InvalidArgument("design dimension must be >= 1");
    if (order_ < 1) throw InvalidArgument("design order must be >= 1");
    if (atoms_.empty()) throw InvalidArgument("design needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms_) {
        if (a.psi.dim() != dim_) throw DimensionMismatch("design atom has the wrong dimension");
        if (!(a.weight >= 0.0)) throw InvalidArgument("design weights must be nonnegative");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-10) throw InvalidArgument("design weights sum to " + std::to_string(total));
}

std::size_t symmetric_dimension(std::size_t d, int t) {
    // binom(d + t - 1, t), exact in integer arithmetic for the sizes used here.
    std::size_t r = 1;
    for (int i = 1; i <= t; ++i) r = r * (d + static_cast<std::size_t>(i) - 1) / static_cast<std::size_t>(i);
    return r;
}

ComplexMatrix permutation_operator(std::size_t d, std::span<const int> perm) {
    const int t = static_cast<int>(perm.size());
    require_dense(d, t);
    std::vector<bool> seen(perm.size(), false);
    for (int p : perm) {
        if (p < 0 || p >= t || seen[static_cast<std::size_t>(p)]) {
            throw InvalidArgument("permutation_operator: not a permutation");
        }
        seen[static_cast<std::size_t>(p)] = true;
    }
    const std::size_t n = tensor_dim(d, t);
    std::vector<std::size_t> stride(perm.size());
    std::size_t s = 1;
    for (int k = t; k-- > 0;) {
        stride[static_cast<std::size_t>(k)] = s;
        s *= d;
    }
    ComplexMatrix u = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t index = 0; index < n; ++index) {
        std::size_t image = 0;
        for (std::size_t k = 0; k < perm.size(); ++k) {
            const std::size_t digit = (index / stride[k]) % d;
            image += digit * stride[static_cast<std::size_t>(perm[k])];
        }
        u(static_cast<Eigen::Index>(image), static_cast<Eigen::Index>(index)) = 1.0;
    }
    return u;
}

HermitianOperator sym_projector(std::size_t d, int t) {
    require_dense(d, t);
    const std::size_t n = tensor_dim(d, t);
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& group : symmetric_groups(d, t)) {
        const double value = 1.0 / static_cast<double>(group.size());
        for (std::size_t i : group) {
            for (std::size_t j : group) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
        }
    }
    return HermitianOperator(std::move(p));
}

HermitianOperator frame_operator(const DesignSpec& spec) {
    require_dense(spec.dim(), spec.order());
    const auto n = static_cast<Eigen::Index>(tensor_dim(spec.dim(), spec.order()));
    ComplexMatrix f = ComplexMatrix::Zero(n, n);
    for (const auto& atom : spec.atoms()) {
        const ComplexVector v = tensor_power(atom.psi, spec.order());
        f.noalias() += atom.weight * (v * v.adjoint());
    }
    return HermitianOperator(std::move(f));
}

DesignDefect design_defect(const DesignSpec& spec) {
    require_dense(spec.dim(), spec.order());
    const auto groups = symmetric_groups(spec.dim(), spec.order());
    const auto sym_dim = static_cast<Eigen::Index>(groups.size());
    ComplexMatrix g = ComplexMatrix::Zero(sym_dim, sym_dim);
    double off_support = 0.0;
    ComplexVector c(sym_dim);
    for (const auto& atom : spec.atoms()) {
        const ComplexVector v = tensor_power(atom.psi, spec.order());
        for (Eigen::Index m = 0; m < sym_dim; ++m) {
            const auto& members = groups[static_cast<std::size_t>(m)];
            Complex acc = 0.0;
            for (std::size_t i : members) acc += v(static_cast<Eigen::Index>(i));
            c(m) = acc / std::sqrt(static_cast<double>(members.size()));
        }
        off_support += atom.weight * (v.squaredNorm() - c.squaredNorm());
        g.noalias() += atom.weight * (c * c.adjoint());
    }
    if (off_support > 1e-8) {
        throw OffSymmetricSupport("frame operator has weight " + std::to_string(off_support) +
                                  " outside the symmetric subspace");
    }
    // On Sym^t the Haar moment operator is Id / dim Sym^t, so whitening is a scalar.
    g *= static_cast<double>(sym_dim);
    const RealVector lambda = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(g, Eigen::EigenvaluesOnly).eigenvalues();
    return {std::max(0.0, 1.0 - lambda.minCoeff()), std::max(0.0, lambda.maxCoeff() - 1.0),
            std::max(0.0, off_support)};
}

DiscretePOVM design_to_povm(const DesignSpec& spec) {
    const auto defect = design_defect(spec.with_order(1));
    if (defect.epsilon_lower > 1e-9 || defect.epsilon_upper > 1e-9) {
        throw NotAOneDesign("atoms are not a 1-design: defect (" + std::to_string(defect.epsilon_lower) + ", " +
                            std::to_string(defect.epsilon_upper) + ")");
    }
    const double d = static_cast<double>(spec.dim());
    std::vector<HermitianOperator> elements;
    elements.reserve(spec.atoms().size());
    for (const auto& a : spec.atoms()) elements.push_back(a.psi.projector() * (d * a.weight));
    return DiscretePOVM(std::move(elements));
}

PureState bloch_state(double x, double y, double z) {
    const double r = std::sqrt(x * x + y * y + z * z);
    if (std::abs(r - 1.0) > 1e-12) throw InvalidArgument("Bloch vector must have unit length");
    ComplexVector v(2);
    if (z > -1.0 + 1e-12) {
        v(0) = std::sqrt((1.0 + z) / 2.0);
        v(1) = Complex(x, y) / std::sqrt(2.0 * (1.0 + z));
    } else {
        v(0) = 0.0;
        v(1) = 1.0;
    }
    return PureState::normalized(v);
}

DesignSpec basis_design(std::size_t d, int order) {
    std::vector<DesignSpec::Atom> atoms;
    for (std::size_t i = 0; i < d; ++i) atoms.push_back({1.0 / static_cast<double>(d), PureState::basis(d, i)});
    return {d, order, std::move(atoms)};
}

DesignSpec pauli_mub_design(int order) {
    const double axes[6][3] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    std::vector<DesignSpec::Atom> atoms;
    for (const auto& a : axes) atoms.push_back({1.0 / 6.0, bloch_state(a[0], a[1], a[2])});
    return {2, order, std::move(atoms)};
}

DesignSpec icosahedron_design(int order) {
    const double phi = std::numbers::phi;
    const double r = std::sqrt(1.0 + phi * phi);
    std::vector<DesignSpec::Atom> atoms;
    for (double s1 : {1.0, -1.0}) {
        for (double s2 : {1.0, -1.0}) {
            const double a = s1 / r;
            const double b = s2 * phi / r;
            atoms.push_back({1.0 / 12.0, bloch_state(0.0, a, b)});
            atoms.push_back({1.0 / 12.0, bloch_state(a, b, 0.0)});
            atoms.push_back({1.0 / 12.0, bloch_state(b, 0.0, a)});
        }
    }
    return {2, order, std::move(atoms)};
}

}  // namespace povmsparse
