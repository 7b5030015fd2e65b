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

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "povmsparse/errors.hpp"
#include "test_util.hpp"

using namespace povmsparse;
using povmsparse::testing::random_hermitian;
using povmsparse::testing::svd_trace_norm;

TEST(hermitian_operator, rejects_non_hermitian) {
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 0.0, 1.0;
    EXPECT_THROW(HermitianOperator{m}, NotHermitian);
    EXPECT_THROW(HermitianOperator{ComplexMatrix(2, 3)}, DimensionMismatch);
}

TEST(hermitian_operator, symmetrizes_small_defects) {
    ComplexMatrix m(2, 2);
    m << 1.0, Complex(0.5, 1e-14), Complex(0.5, 0.0), 2.0;
    const HermitianOperator a(m);
    EXPECT_EQ(a(0, 1), std::conj(a(1, 0)));
    EXPECT_EQ(a(0, 0).imag(), 0.0);
}

TEST(norms, trace_norm_examples) {
    EXPECT_NEAR(trace_norm(HermitianOperator::identity(5)), 5.0, 1e-12);
    const double diag[] = {1.0, -1.0};
    EXPECT_NEAR(trace_norm(HermitianOperator::diagonal(diag)), 2.0, 1e-12);
}

TEST(norms, trace_norm_matches_svd_oracle) {
    RngStream rng(101);
    for (int i = 0; i < 20; ++i) {
        const auto a = random_hermitian(3, rng);
        EXPECT_NEAR(trace_norm(a), svd_trace_norm(a), 1e-10);
    }
}

TEST(norms, operator_norm_examples) {
    EXPECT_NEAR(operator_norm(HermitianOperator::identity(4)), 1.0, 1e-12);
    const double diag[] = {3.0, -5.0};
    EXPECT_NEAR(operator_norm(HermitianOperator::diagonal(diag)), 5.0, 1e-12);
    RngStream rng(3);
    EXPECT_NEAR(operator_norm(haar_unit_vector(4, rng).projector()), 1.0, 1e-12);
}

TEST(norms, hs_norm_examples) {
    EXPECT_NEAR(hs_norm(HermitianOperator::identity(7)), std::sqrt(7.0), 1e-12);
    const double diag[] = {1.0, -1.0};
    EXPECT_NEAR(hs_norm(HermitianOperator::diagonal(diag)), std::sqrt(2.0), 1e-12);
    RngStream rng(4);
    const auto a = random_hermitian(5, rng);
    EXPECT_NEAR(hs_norm(a * (1.0 / hs_norm(a))), 1.0, 1e-12);
}

TEST(norms, ordering_property) {
    RngStream rng(9);
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = 1 + rng() % 8;
        const auto a = random_hermitian(d, rng);
        EXPECT_GE(trace_norm(a) + 1e-10, hs_norm(a));
        EXPECT_GE(hs_norm(a) + 1e-10, operator_norm(a));
    }
}

TEST(inv_sqrt_psd, examples) {
    const auto id = HermitianOperator::identity(3);
    EXPECT_LT(operator_norm(inv_sqrt_psd(id) - id), 1e-14);
    const double diag[] = {4.0, 9.0};
    const double expected[] = {0.5, 1.0 / 3.0};
    EXPECT_LT(operator_norm(inv_sqrt_psd(HermitianOperator::diagonal(diag)) - HermitianOperator::diagonal(expected)),
              1e-14);
}

TEST(inv_sqrt_psd, wishart_two_sided_inverse) {
    RngStream rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        HermitianOperator s = HermitianOperator::zero(4);
        for (int i = 0; i < 50; ++i) s = s + haar_unit_vector(4, rng).projector();
        const auto b = inv_sqrt_psd(s);
        const HermitianOperator bab(b.matrix() * s.matrix() * b.matrix(), 1e-10);
        EXPECT_LT(operator_norm(bab - HermitianOperator::identity(4)), 1e-8);
    }
}

TEST(inv_sqrt_psd, singular_input_throws) {
    const double diag[] = {1.0, 0.0};
    EXPECT_THROW(inv_sqrt_psd(HermitianOperator::diagonal(diag)), SingularOperator);
    const double tiny[] = {1.0, 1e-12};
    EXPECT_THROW(inv_sqrt_psd(HermitianOperator::diagonal(tiny)), SingularOperator);
    EXPECT_NO_THROW(inv_sqrt_psd(HermitianOperator::diagonal(tiny), 1e-13));
    const double negative[] = {1.0, -0.5};
    EXPECT_THROW(inv_sqrt_psd(HermitianOperator::diagonal(negative)), SingularOperator);
}

TEST(partial_trace, product_state_reduction) {
    RngStream rng(21);
    const auto a = random_hermitian(2, rng);
    const auto rho = povmsparse::testing::random_density(3, 3, rng);
    const std::size_t dims[] = {2, 3};
    const std::size_t traced[] = {1};
    EXPECT_LT(operator_norm(partial_trace(kron(a, rho.op()), dims, traced) - a), 1e-12);
}

TEST(partial_trace, empty_subset_is_identity_map) {
    RngStream rng(22);
    const auto a = random_hermitian(6, rng);
    const std::size_t dims[] = {2, 3};
    EXPECT_LT(operator_norm(partial_trace(a, dims, {}) - a), 1e-14);
}

TEST(partial_trace, maximally_entangled_reduces_to_maximally_mixed) {
    // |phi> = (|00> + |11>)/sqrt2; explicit 4x4 projector.
    ComplexVector phi = ComplexVector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const auto rho = PureState(phi).projector();
    const std::size_t dims[] = {2, 2};
    const std::size_t second[] = {1};
    const std::size_t first[] = {0};
    const auto half = HermitianOperator::identity(2) * 0.5;
    EXPECT_LT(operator_norm(partial_trace(rho, dims, second) - half), 1e-15);
    EXPECT_LT(operator_norm(partial_trace(rho, dims, first) - half), 1e-15);
}

TEST(partial_trace, full_trace_is_scalar) {
    RngStream rng(23);
    const auto a = random_hermitian(12, rng);
    const std::size_t dims[] = {2, 3, 2};
    const std::size_t all[] = {0, 1, 2};
    const auto r = partial_trace(a, dims, all);
    ASSERT_EQ(r.dim(), 1u);
    EXPECT_NEAR(r(0, 0).real(), a.trace(), 1e-12);
}

TEST(partial_trace, trace_preserving_and_composable) {
    RngStream rng(24);
    const std::size_t dims[] = {2, 3, 2};
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = random_hermitian(12, rng);
        for (std::size_t mask = 0; mask < 8; ++mask) {
            std::vector<std::size_t> traced;
            for (std::size_t f = 0; f < 3; ++f) {
                if (mask & (1u << f)) traced.push_back(f);
            }
            EXPECT_NEAR(partial_trace(a, dims, traced).trace(), a.trace(), 1e-10);
        }
        // Trace factor 0, then factor 1 of the remaining {3, 2} (= original 2).
        const std::size_t first[] = {0};
        const std::size_t rest_dims[] = {3, 2};
        const std::size_t then[] = {1};
        const std::size_t both[] = {0, 2};
        const auto step = partial_trace(partial_trace(a, dims, first), rest_dims, then);
        EXPECT_LT(operator_norm(step - partial_trace(a, dims, both)), 1e-10);
    }
}

TEST(partial_trace, dimension_errors) {
    const auto a = HermitianOperator::identity(6);
    const std::size_t bad_dims[] = {2, 2};
    const std::size_t dims[] = {2, 3};
    const std::size_t out_of_range[] = {2};
    const std::size_t repeated[] = {0, 0};
    EXPECT_THROW(partial_trace(a, bad_dims, {}), DimensionMismatch);
    EXPECT_THROW(partial_trace(a, dims, out_of_range), DimensionMismatch);
    EXPECT_THROW(partial_trace(a, dims, repeated), InvalidArgument);
}

TEST(haar_unit_vector, unit_norm_and_scalar_case) {
    RngStream rng(31);
    const auto psi = haar_unit_vector(1, rng);
    EXPECT_NEAR(std::abs(psi.amplitudes()(0)), 1.0, 1e-12);
    for (int i = 0; i < 100; ++i) EXPECT_NEAR(haar_unit_vector(5, rng).amplitudes().norm(), 1.0, 1e-12);
}

TEST(haar_unit_vector, deterministic_for_fixed_seed) {
    RngStream a(99), b(99);
    EXPECT_EQ(haar_unit_vector(6, a).amplitudes(), haar_unit_vector(6, b).amplitudes());
}

TEST(haar_unit_vector, first_coordinate_second_moment) {
    // E|psi_1|^2 = 1/d by symmetry.
    RngStream rng(32);
    const int n = 100000;
    const double d = 4.0;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = std::norm(haar_unit_vector(4, rng).amplitudes()(0));
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_NEAR(mean, 1.0 / d, 3.0 * se);
}

TEST(random_direction, hermitian_unit_hs_norm) {
    RngStream rng(41);
    for (std::size_t d = 1; d <= 6; ++d) {
        const auto a = random_direction(d, rng);
        EXPECT_NEAR(hs_norm(a), 1.0, 1e-12);
        EXPECT_EQ((a.matrix() - a.matrix().adjoint()).norm(), 0.0);
    }
}

TEST(random_direction, trace_has_zero_mean) {
    RngStream rng(42);
    const int n = 10000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double t = random_direction(3, rng).trace();
        sum += t;
        sum2 += t * t;
    }
    const double mean = sum / n;
    EXPECT_NEAR(mean, 0.0, 3.0 * std::sqrt((sum2 / n - mean * mean) / n));
}

TEST(random_direction, unitarily_invariant_quadratic_form) {
    // <x|D|x> and <Ux|D|Ux> have the same law; compare first two moments.
    RngStream rng(43);
    ComplexVector x = ComplexVector::Zero(3);
    x(0) = 1.0;
    const ComplexVector y = haar_unit_vector(3, rng).amplitudes();
    const int n = 40000;
    double sx = 0, sx2 = 0, sy = 0, sy2 = 0;
    for (int i = 0; i < n; ++i) {
        const auto d = random_direction(3, rng);
        const double a = x.dot(d.matrix() * x).real();
        const double b = y.dot(d.matrix() * y).real();
        sx += a;
        sx2 += a * a;
        sy += b;
        sy2 += b * b;
    }
    const double vx = sx2 / n - (sx / n) * (sx / n);
    const double vy = sy2 / n - (sy / n) * (sy / n);
    const double se_mean = std::sqrt((vx + vy) / n);
    EXPECT_NEAR(sx / n, sy / n, 3.0 * se_mean);
    // Var of the sample second moment is bounded by E X^4 / n; X is bounded by 1.
    EXPECT_NEAR(sx2 / n, sy2 / n, 3.0 * std::sqrt(2.0 / n));
}

TEST(density_state, validation) {
    const double bad_trace[] = {0.5, 0.4};
    EXPECT_THROW(DensityState(HermitianOperator::diagonal(bad_trace)), InvalidState);
    const double negative[] = {1.2, -0.2};
    EXPECT_THROW(DensityState(HermitianOperator::diagonal(negative)), InvalidState);
    EXPECT_NO_THROW(DensityState::maximally_mixed(5));
}

TEST(pure_state, rejects_unnormalized) {
    EXPECT_THROW(PureState(ComplexVector::Ones(2)), InvalidState);
    EXPECT_THROW(PureState::normalized(ComplexVector::Zero(3)), InvalidState);
}
