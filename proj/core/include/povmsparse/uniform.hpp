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

#ifndef POVMSPARSE_UNIFORM_HPP
#define POVMSPARSE_UNIFORM_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "povmsparse/operator.hpp"
#include "povmsparse/rng.hpp"

namespace povmsparse {

/// Monte Carlo value with its standard error (sample sd / sqrt(samples)).
struct NormEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

/// sqrt(tr(A^2) + (tr A)^2)
double norm_2_1(const HermitianOperator& a);

/// Multipartite modified Hilbert-Schmidt norm: the square root of the sum,
/// over all subsets I of factors (including none and all), of
/// tr[(tr_I A)^2]. At most 8 factors.
double norm_2_k(const HermitianOperator& a, std::span<const std::size_t> dims);

/// d * E|<psi|A|psi>| over Haar-random psi.
///
/// The sample budget is split evenly over `workers` substreams of one batch
/// stream drawn from `rng`; the result is deterministic for a fixed
/// (rng state, workers) pair.
NormEstimate estimate_uniform_norm(const HermitianOperator& a, std::size_t samples, RngStream& rng,
                                   std::size_t workers = 1);

/// d * E|<psi|A|psi>| with psi = psi_1 (x) ... (x) psi_k, independent Haar
/// factors. With a single factor this consumes randomness exactly like
/// estimate_uniform_norm and returns the same value.
NormEstimate estimate_local_uniform_norm(const HermitianOperator& a, std::span<const std::size_t> dims,
                                         std::size_t samples, RngStream& rng, std::size_t workers = 1);

/// E[(d tr(A P))^2] for P a Haar-random rank-one projector, in closed form:
/// d ((tr A)^2 + tr A^2) / (d + 1).
double exact_second_moment(const HermitianOperator& a);

struct MomentRow {
    int q = 0;
    /// E X^{2q} for X = d |<psi|A|psi>|
    double moment = 0.0;
    double moment_std_error = 0.0;
    /// (E X^{2q})^{1/(2q)}
    double root = 0.0;
    /// 2q * norm_2_1(A)
    double bound = 0.0;
};

/// Empirical even moments of X = d|<psi|A|psi>| for q = 1..q_max (q_max <= 4).
std::vector<MomentRow> moment_growth_check(const HermitianOperator& a, int q_max, std::size_t samples,
                                           RngStream& rng, std::size_t workers = 1);

}  // namespace povmsparse

#endif  // POVMSPARSE_UNIFORM_HPP
