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

#include "povmsparse/povm.hpp"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "povmsparse/errors.hpp"
#include "povmsparse/sparsify.hpp"
#include "povmsparse/zonoid.hpp"
#include "test_util.hpp"

using namespace povmsparse;
using povmsparse::testing::random_density;
using povmsparse::testing::random_hermitian;
using povmsparse::testing::random_mixed_povm;

namespace {

// Rank of the real span of the elements via LU on coordinates in the
// Hermitian basis; independent of the SVD used by the library.
std::size_t lu_span_rank(const Measurement& m) {
    const auto n2 = static_cast<Eigen::Index>(m.dim() * m.dim());
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(m.size()), n2);
    for (std::size_t i = 0; i < m.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vectorize(m[i]).transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
    lu.setThreshold(1e-9);
    return static_cast<std::size_t>(lu.rank());
}

}  // namespace

TEST(validation, accepts_basis_measurement) {
    const auto m = DiscretePOVM::computational_basis(3);
    EXPECT_EQ(m.size(), 3u);
    EXPECT_TRUE(DiscretePOVM::check(m.elements()).ok());
}

TEST(validation, incomplete_sum_reports_defect) {
    std::vector<HermitianOperator> elements{HermitianOperator::identity(2) * 0.9};
    const auto report = DiscretePOVM::check(elements);
    EXPECT_FALSE(report.ok());
    EXPECT_NEAR(report.checks.back().defect, 0.1, 1e-12);
    EXPECT_THROW(DiscretePOVM{elements}, InvalidPovm);
    EXPECT_NO_THROW(SubPOVM{elements});
}

TEST(validation, negative_element_rejected) {
    const double a[] = {1.5, 0.5};
    const double b[] = {-0.5, 0.5};
    std::vector<HermitianOperator> elements{HermitianOperator::diagonal(a), HermitianOperator::diagonal(b)};
    const auto report = DiscretePOVM::check(elements);
    EXPECT_FALSE(report.checks[1].passed);
    EXPECT_NEAR(report.checks[1].defect, 0.5, 1e-12);
    EXPECT_THROW(SubPOVM{elements}, InvalidPovm);
}

TEST(validation, sub_povm_excess_rejected) {
    std::vector<HermitianOperator> elements{HermitianOperator::identity(2) * 0.6, HermitianOperator::identity(2) * 0.6};
    EXPECT_THROW(SubPOVM{elements}, InvalidPovm);
    EXPECT_NEAR(SubPOVM::check(elements).checks.back().defect, 0.2, 1e-12);
}

TEST(validation, mixed_dimensions_rejected) {
    std::vector<HermitianOperator> elements{HermitianOperator::identity(2), HermitianOperator::zero(3)};
    EXPECT_THROW(DiscretePOVM{elements}, InvalidPovm);
    EXPECT_THROW(DiscretePOVM{std::vector<HermitianOperator>{}}, InvalidPovm);
}

TEST(dist_norm, trivial_povm_gives_abs_trace) {
    RngStream rng(1);
    const auto m = DiscretePOVM::trivial(4);
    for (int i = 0; i < 10; ++i) {
        const auto delta = random_hermitian(4, rng);
        EXPECT_NEAR(dist_norm(m, delta), std::abs(delta.trace()), 1e-12);
    }
}

TEST(dist_norm, basis_measurement_gives_diagonal_l1) {
    RngStream rng(2);
    const auto m = DiscretePOVM::computational_basis(5);
    const auto delta = random_hermitian(5, rng);
    double expected = 0.0;
    for (std::size_t i = 0; i < 5; ++i) expected += std::abs(delta(i, i).real());
    EXPECT_NEAR(dist_norm(m, delta), expected, 1e-12);
}

TEST(dist_norm, equals_one_on_states) {
    RngStream rng(3);
    const auto m = random_mixed_povm(3, 7, 2, rng);
    for (int i = 0; i < 10; ++i) EXPECT_NEAR(dist_norm(m, random_density(3, 1 + i % 3, rng).op()), 1.0, 1e-12);
}

TEST(dist_norm, dimension_mismatch) {
    EXPECT_THROW(dist_norm(DiscretePOVM::trivial(2), HermitianOperator::identity(3)), DimensionMismatch);
}

TEST(dist_norm, seminorm_and_sandwich_properties) {
    RngStream rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 + trial % 4;
        const auto m = random_mixed_povm(d, 3 + trial % 5, 1 + trial % 2, rng);
        const auto a = random_hermitian(d, rng);
        const auto b = random_hermitian(d, rng);
        const double c = rng.normal();
        EXPECT_NEAR(dist_norm(m, a * c), std::abs(c) * dist_norm(m, a), 1e-10);
        EXPECT_LE(dist_norm(m, a + b), dist_norm(m, a) + dist_norm(m, b) + 1e-10);
        EXPECT_LE(dist_norm(m, a), trace_norm(a) + 1e-10);
        EXPECT_GE(dist_norm(m, a) + 1e-10, std::abs(a.trace()));
    }
}

TEST(discrimination_error, examples) {
    const auto basis = DiscretePOVM::computational_basis(2);
    const auto zero = DensityState::pure(PureState::basis(2, 0));
    const auto one = DensityState::pure(PureState::basis(2, 1));
    EXPECT_NEAR(discrimination_error(basis, zero, zero), 0.5, 1e-15);
    EXPECT_NEAR(discrimination_error(basis, zero, one), 0.0, 1e-15);
    EXPECT_NEAR(discrimination_error(basis, zero, DensityState::maximally_mixed(2)), 0.25, 1e-15);
}

TEST(informational_completeness, basis_is_not_complete) {
    EXPECT_FALSE(is_informationally_complete(DiscretePOVM::computational_basis(2)));
    EXPECT_EQ(span_dimension(DiscretePOVM::computational_basis(2)), 2u);
}

TEST(informational_completeness, random_povm_is_complete) {
    RngStream rng(5);
    for (std::size_t d = 2; d <= 4; ++d) {
        const auto m = random_povm(d, 4 * d * d, rng);
        EXPECT_EQ(lu_span_rank(m), d * d);
        EXPECT_TRUE(is_informationally_complete(m));
    }
}

TEST(informational_completeness, tensor_of_complete_is_complete) {
    RngStream rng(6);
    const auto a = random_povm(2, 16, rng);
    const auto b = random_povm(2, 16, rng);
    const auto ab = tensor_povm(a, b);
    EXPECT_EQ(lu_span_rank(ab), 16u);
    EXPECT_TRUE(is_informationally_complete(ab));
}

TEST(informational_completeness, equivalent_to_definiteness) {
    RngStream rng(7);
    // Not complete: an operator orthogonal to the span has zero norm.
    for (const auto& m : {DiscretePOVM::computational_basis(3), random_mixed_povm(3, 5, 1, rng)}) {
        ASSERT_FALSE(is_informationally_complete(m));
        Eigen::MatrixXd rows(static_cast<Eigen::Index>(m.size()), 9);
        for (std::size_t i = 0; i < m.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = vectorize(m[i]).transpose();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
        const Eigen::MatrixXd kernel = lu.kernel();
        ASSERT_GT(kernel.cols(), 0);
        const auto delta = devectorize(kernel.col(0), 3);
        EXPECT_GT(hs_norm(delta), 0.1);
        EXPECT_LT(dist_norm(m, delta), 1e-10);
    }
    // Complete: the norm is bounded below on the unit sphere.
    const auto m = random_povm(3, 40, rng);
    ASSERT_TRUE(is_informationally_complete(m));
    double smallest = 1e9;
    for (int i = 0; i < 500; ++i) smallest = std::min(smallest, dist_norm(m, random_direction(3, rng)));
    EXPECT_GT(smallest, 1e-3);
}

TEST(state_measure, examples) {
    const auto half = DiscretePOVM({HermitianOperator::identity(2) * 0.5, HermitianOperator::identity(2) * 0.5});
    const auto conv = to_state_measure(half);
    ASSERT_EQ(conv.measure.atoms().size(), 2u);
    for (const auto& a : conv.measure.atoms()) {
        EXPECT_NEAR(a.weight, 0.5, 1e-15);
        EXPECT_LT(operator_norm(a.state.op() - HermitianOperator::identity(2) * 0.5), 1e-15);
    }
    const auto basis = to_state_measure(DiscretePOVM::computational_basis(4));
    ASSERT_EQ(basis.measure.atoms().size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(basis.measure.atoms()[i].weight, 0.25, 1e-15);
        EXPECT_LT(operator_norm(basis.measure.atoms()[i].state.op() - PureState::basis(4, i).projector()), 1e-15);
    }
}

TEST(state_measure, drops_zero_elements) {
    const auto m = DiscretePOVM({HermitianOperator::identity(2), HermitianOperator::zero(2)});
    const auto conv = to_state_measure(m);
    EXPECT_EQ(conv.dropped, 1u);
    EXPECT_EQ(conv.measure.atoms().size(), 1u);
    EXPECT_EQ(conv.source_index, std::vector<std::size_t>{0});
}

TEST(state_measure, round_trip) {
    RngStream rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = random_mixed_povm(3, 6, 2, rng);
        const auto back = from_state_measure(to_state_measure(m).measure);
        ASSERT_EQ(back.size(), m.size());
        for (std::size_t i = 0; i < m.size(); ++i) EXPECT_LT(operator_norm(back[i] - m[i]), 1e-10);
    }
}

TEST(state_measure, from_measure_examples) {
    const auto trivial = from_state_measure(StateMeasure({{1.0, DensityState::maximally_mixed(3)}}));
    ASSERT_EQ(trivial.size(), 1u);
    EXPECT_LT(operator_norm(trivial[0] - HermitianOperator::identity(3)), 1e-15);

    std::vector<StateMeasure::Atom> atoms;
    for (std::size_t i = 0; i < 3; ++i) atoms.push_back({1.0 / 3.0, DensityState::pure(PureState::basis(3, i))});
    const auto basis = from_state_measure(StateMeasure(atoms));
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_LT(operator_norm(basis[i] - PureState::basis(3, i).projector()), 1e-15);
    }
}

TEST(state_measure, norm_is_weighted_integral) {
    RngStream rng(9);
    const auto mu = to_state_measure(random_mixed_povm(3, 5, 2, rng)).measure;
    const auto m = from_state_measure(mu);
    const auto delta = random_hermitian(3, rng);
    double integral = 0.0;
    for (const auto& a : mu.atoms()) integral += a.weight * std::abs(hs_inner(delta, a.state.op()));
    EXPECT_NEAR(dist_norm(m, delta), 3.0 * integral, 1e-12);
}

TEST(state_measure, barycenter_violation) {
    EXPECT_THROW(StateMeasure({{1.0, DensityState::pure(PureState::basis(2, 0))}}), BarycenterViolation);
    EXPECT_THROW(StateMeasure({{0.7, DensityState::maximally_mixed(2)}}), InvalidArgument);
}

TEST(tensor_povm, trivial_factor_and_product_basis) {
    RngStream rng(10);
    const auto n = random_mixed_povm(2, 3, 1, rng);
    const auto t = tensor_povm(DiscretePOVM::trivial(1), n);
    ASSERT_EQ(t.size(), n.size());
    for (std::size_t i = 0; i < n.size(); ++i) EXPECT_LT(operator_norm(t[i] - n[i]), 1e-15);

    const auto bb = tensor_povm(DiscretePOVM::computational_basis(2), DiscretePOVM::computational_basis(2));
    const auto b4 = DiscretePOVM::computational_basis(4);
    ASSERT_EQ(bb.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_LT(operator_norm(bb[i] - b4[i]), 1e-15);
}

TEST(tensor_povm, norm_factorizes_on_products) {
    RngStream rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = random_mixed_povm(2, 4, 1, rng);
        const auto n = random_mixed_povm(3, 5, 2, rng);
        const auto a = random_hermitian(2, rng);
        const auto b = random_hermitian(3, rng);
        EXPECT_NEAR(dist_norm(tensor_povm(m, n), kron(a, b)), dist_norm(m, a) * dist_norm(n, b), 1e-10);
    }
}
