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

#include "povmsparse/zonoid.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "povmsparse/errors.hpp"

namespace povmsparse {

namespace {

struct SparseEntry {
    std::size_t row;
    std::size_t col;
    Complex value;
};

// Nonzero entries of each element of the local Hermitian basis, in basis order.
std::vector<std::vector<SparseEntry>> local_basis(std::size_t d) {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<SparseEntry>> basis;
    basis.reserve(d * d);
    for (std::size_t j = 0; j < d; ++j) basis.push_back({{j, j, 1.0}});
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = j + 1; k < d; ++k) {
            basis.push_back({{j, k, s}, {k, j, s}});
            basis.push_back({{j, k, Complex(0.0, s)}, {k, j, Complex(0.0, -s)}});
        }
    }
    return basis;
}

}  // namespace

SymmetricZonotope::SymmetricZonotope(std::size_t ambient_dim, std::vector<RealVector> generators) {
    if (ambient_dim == 0) throw InvalidArgument("zonotope ambient dimension must be >= 1");
    gens_.resize(static_cast<Eigen::Index>(generators.size()), static_cast<Eigen::Index>(ambient_dim));
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (static_cast<std::size_t>(generators[i].size()) != ambient_dim) {
            throw DimensionMismatch("generator " + std::to_string(i) + " has length " +
                                    std::to_string(generators[i].size()) + ", expected " +
                                    std::to_string(ambient_dim));
        }
        gens_.row(static_cast<Eigen::Index>(i)) = generators[i].transpose();
    }
}

SymmetricZonotope::SymmetricZonotope(Eigen::MatrixXd generator_rows) : gens_(std::move(generator_rows)) {
    if (gens_.cols() == 0) throw InvalidArgument("zonotope ambient dimension must be >= 1");
}

double support_function(const SymmetricZonotope& z, const RealVector& x) {
    if (static_cast<std::size_t>(x.size()) != z.ambient_dim()) {
        throw DimensionMismatch("support_function: direction length " + std::to_string(x.size()) +
                                " != ambient dimension " + std::to_string(z.ambient_dim()));
    }
    if (z.size() == 0) return 0.0;
    return (z.generators() * x).cwiseAbs().sum();
}

SymmetricZonotope minkowski_sum(const SymmetricZonotope& a, const SymmetricZonotope& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("minkowski_sum: ambient dimensions differ");
    Eigen::MatrixXd g(a.generators().rows() + b.generators().rows(), a.generators().cols());
    g << a.generators(), b.generators();
    return SymmetricZonotope(std::move(g));
}

SymmetricZonotope scaled(const SymmetricZonotope& z, double factor) {
    return SymmetricZonotope(Eigen::MatrixXd(z.generators() * factor));
}

std::vector<std::size_t> negligible_generators(const SymmetricZonotope& z) {
    std::vector<std::size_t> out;
    for (Eigen::Index i = 0; i < z.generators().rows(); ++i) {
        if (z.generators().row(i).norm() < 1e-14) out.push_back(static_cast<std::size_t>(i));
    }
    return out;
}

RealVector vectorize(const HermitianOperator& a) {
    const std::size_t dims[] = {a.dim()};
    return vectorize(a, dims);
}

RealVector vectorize(const HermitianOperator& a, std::span<const std::size_t> dims) {
    if (dims.empty() || product(dims) != a.dim()) {
        throw DimensionMismatch("vectorize: local dimensions do not multiply to the operator dimension");
    }
    const std::size_t k = dims.size();
    std::vector<std::vector<std::vector<SparseEntry>>> bases;
    std::vector<std::size_t> strides(k);
    std::size_t stride = 1;
    for (std::size_t i = k; i-- > 0;) {
        strides[i] = stride;
        stride *= dims[i];
    }
    for (std::size_t d : dims) bases.push_back(local_basis(d));

    // Expand the product basis one factor at a time; each element keeps its
    // sparse entry list in global indices.
    std::vector<std::vector<SparseEntry>> current{{{0, 0, 1.0}}};
    for (std::size_t f = 0; f < k; ++f) {
        std::vector<std::vector<SparseEntry>> next;
        next.reserve(current.size() * bases[f].size());
        for (const auto& partial : current) {
            for (const auto& local : bases[f]) {
                std::vector<SparseEntry> merged;
                merged.reserve(partial.size() * local.size());
                for (const auto& p : partial) {
                    for (const auto& l : local) {
                        merged.push_back({p.row + l.row * strides[f], p.col + l.col * strides[f], p.value * l.value});
                    }
                }
                next.push_back(std::move(merged));
            }
        }
        current = std::move(next);
    }

    RealVector x(static_cast<Eigen::Index>(current.size()));
    const ComplexMatrix& m = a.matrix();
    for (std::size_t i = 0; i < current.size(); ++i) {
        Complex acc = 0.0;
        for (const auto& e : current[i]) {
            acc += e.value * m(static_cast<Eigen::Index>(e.col), static_cast<Eigen::Index>(e.row));
        }
        x(static_cast<Eigen::Index>(i)) = acc.real();
    }
    return x;
}

HermitianOperator devectorize(const RealVector& x, std::size_t d) {
    if (static_cast<std::size_t>(x.size()) != d * d) throw DimensionMismatch("devectorize: length is not d^2");
    const auto basis = local_basis(d);
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (const auto& e : basis[i]) {
            m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) +=
                x(static_cast<Eigen::Index>(i)) * e.value;
        }
    }
    return HermitianOperator(std::move(m));
}

SymmetricZonotope povm_to_zonotope(const Measurement& m) {
    const std::size_t dims[] = {m.dim()};
    return povm_to_zonotope(m, dims);
}

SymmetricZonotope povm_to_zonotope(const Measurement& m, std::span<const std::size_t> dims) {
    const auto n = static_cast<Eigen::Index>(m.dim() * m.dim());
    Eigen::MatrixXd g(static_cast<Eigen::Index>(m.size()), n);
    for (std::size_t i = 0; i < m.size(); ++i) g.row(static_cast<Eigen::Index>(i)) = vectorize(m[i], dims).transpose();
    return SymmetricZonotope(std::move(g));
}

SymmetricZonotope zonotope_tensor(const SymmetricZonotope& z, const SymmetricZonotope& w) {
    const Eigen::Index nz = z.generators().cols();
    const Eigen::Index nw = w.generators().cols();
    Eigen::MatrixXd g(z.generators().rows() * w.generators().rows(), nz * nw);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < z.generators().rows(); ++i) {
        for (Eigen::Index j = 0; j < w.generators().rows(); ++j, ++row) {
            for (Eigen::Index a = 0; a < nz; ++a) {
                g.block(row, a * nw, 1, nw) = z.generators()(i, a) * w.generators().row(j);
            }
        }
    }
    return SymmetricZonotope(std::move(g));
}

RatioExtremes sampled_ratio(const SymmetricZonotope& z, const SymmetricZonotope& zp,
                            std::span<const RealVector> directions) {
    if (z.ambient_dim() != zp.ambient_dim()) throw DimensionMismatch("sampled_ratio: ambient dimensions differ");
    if (directions.empty()) throw InvalidArgument("sampled_ratio: no directions supplied");
    RatioExtremes r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    const double generator_mass = zp.size() == 0 ? 0.0 : zp.generators().rowwise().norm().sum();
    for (std::size_t i = 0; i < directions.size(); ++i) {
        const double denom = support_function(zp, directions[i]);
        // Zero up to roundoff relative to the largest value h_Z' can take on x.
        if (!(denom > 1e-14 * generator_mass * directions[i].norm())) {
            throw DegenerateDirection("sampled_ratio: h_Z'(x) = 0 on direction " + std::to_string(i));
        }
        const double ratio = support_function(z, directions[i]) / denom;
        r.min_ratio = std::min(r.min_ratio, ratio);
        r.max_ratio = std::max(r.max_ratio, ratio);
    }
    return r;
}

}  // namespace povmsparse
