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

#ifndef POVMSPARSE_SPARSIFY_HPP
#define POVMSPARSE_SPARSIFY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"
#include "povmsparse/rng.hpp"

namespace povmsparse {

// ---------------------------------------------------------------------------
// Random renormalized POVMs

/// A sampled random POVM together with the data it was built from.
struct RandomPovmSample {
    DiscretePOVM povm;
    /// The Haar vectors psi_i; P_i = |psi_i><psi_i|.
    std::vector<PureState> vectors;
    /// S = sum_i P_i
    HermitianOperator frame;
};

/// (S^{-1/2} P_i S^{-1/2})_i for the given vectors. Throws SingularOperator
/// when S is numerically singular.
RandomPovmSample renormalized_povm(std::vector<PureState> vectors);

/// Renormalized POVM from n Haar vectors in C^d (n >= d). A singular frame
/// is resampled on a fresh substream, up to 8 attempts, before SingularGram.
DiscretePOVM random_povm(std::size_t d, std::size_t n, RngStream& rng);
RandomPovmSample random_povm_sample(std::size_t d, std::size_t n, RngStream& rng);

/// T = ((d/n) S)^{-1/2}
HermitianOperator renormalization_map(const RandomPovmSample& sample);

/// (d/n) sum_i |tr(Delta P_i)|, the norm induced by the unrenormalized vectors.
double empirical_uniform_norm(std::span<const PureState> vectors, const HermitianOperator& delta);

// ---------------------------------------------------------------------------
// Norm comparison over sampled directions

struct ReferenceValue {
    double value = 0.0;
    /// Zero for exactly evaluated references.
    double std_error = 0.0;
};

/// A norm on Hermitian operators, evaluated exactly or by Monte Carlo.
struct Reference {
    std::string label;
    std::function<ReferenceValue(const HermitianOperator&, RngStream&)> evaluate;
};

Reference exact_reference(const Measurement& m, std::string label = "dist_norm");
Reference uniform_reference(std::size_t samples);
Reference local_uniform_reference(std::vector<std::size_t> dims, std::size_t samples);
Reference scaled_reference(Reference base, double factor);

enum class DirectionSet {
    /// GUE directions normalized in Hilbert-Schmidt norm.
    haar,
    /// |j><j| - |k><k| for all j < k, then random rank-2 traceless
    /// |a><a| - |b><b| with Haar a, b.
    structured,
    /// Alternates between the two.
    mixed,
};

/// Direction `i` depends only on (base key, i); the structured set
/// enumerates basis differences first.
std::vector<HermitianOperator> sample_directions(std::size_t d, std::size_t count, DirectionSet set,
                                                 const RngStream& base);

/// Ratio band [lower, upper] that ratios are checked against.
struct Band {
    double lower = 1.0;
    double upper = 1.0;
};

enum class Verdict { within, inconclusive, violation };

const char* to_string(Verdict v);

struct DirectionRecord {
    /// Substream index of the batch stream that produced the direction.
    std::uint64_t substream = 0;
    double norm = 0.0;
    double reference = 0.0;
    double reference_std_error = 0.0;
    double ratio = 0.0;
    double ratio_std_error = 0.0;
    Verdict verdict = Verdict::within;
};

/// Empirical comparison ||.||_M / reference over a direction sample.
struct RatioReport {
    std::string reference_label;
    std::size_t directions_tested = 0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    Band band;
    std::size_t violations = 0;
    std::size_t inconclusive = 0;
    /// Key of the batch stream; record i was drawn from its substream i.
    std::uint64_t stream_key = 0;
    std::vector<DirectionRecord> records;

    [[nodiscard]] double band_width() const { return max_ratio - min_ratio; }
    /// Multiplies every ratio by `factor` and re-derives extremes and verdicts.
    void rescale(double factor);
};

struct VerifyOptions {
    std::size_t directions = 100;
    DirectionSet direction_set = DirectionSet::haar;
    Band band;
    std::size_t workers = 1;
};

/// Compares dist_norm(m, .) against `reference` on sampled directions.
///
/// Directions and reference evaluations use per-direction substreams of one
/// batch stream drawn from `rng`, so the report does not depend on the worker
/// count. A direction whose 3-sigma ratio interval straddles a band edge is
/// `inconclusive`; only intervals entirely outside the band are violations.
/// Throws DegenerateReference if the reference vanishes on some direction.
RatioReport verify_equivalence(const Measurement& m, const Reference& reference, const VerifyOptions& options,
                               RngStream& rng);

/// Same comparison on caller-supplied directions and reference values.
RatioReport compare_on_directions(const Measurement& m, std::span<const HermitianOperator> directions,
                                  std::span<const ReferenceValue> reference, std::string reference_label,
                                  Band band);

// ---------------------------------------------------------------------------
// Sub-POVM sparsification

struct SparsifyBudget {
    std::size_t target_outcomes = 1;
    double epsilon = 0.1;
    std::size_t direction_samples = 100;
};

enum class Reweighting {
    /// lambda_i = multiplicity / (draws * tr(M_i)/d), nothing else.
    multiplicity,
    /// After the multiplicity weights, the smallest relative change of the
    /// weights for which the sampled state measure reproduces the second
    /// moment (1/d) sum_i M_i (x) M_i / tr M_i of the full one. Weights that
    /// would turn negative are dropped and the fit repeated.
    second_moment,
};

struct SparsifyOptions {
    DirectionSet directions = DirectionSet::haar;
    Reweighting reweighting = Reweighting::second_moment;
};

struct SparsifyResult {
    SubPOVM sub_povm;
    /// For each output element, the index of the input element it rescales.
    std::vector<std::size_t> source_index;
    /// Output element k equals scale[k] * M[source_index[k]].
    std::vector<double> scale;
    /// Distinct input elements drawn.
    std::size_t distinct = 0;
    /// Relative residual of the second-moment fit (0 when not reweighted).
    double moment_residual = 0.0;
    /// Global factor applied to reach sum <= Id.
    double sub_povm_rescale = 1.0;
    /// Global factor applied to reach max_ratio <= 1.
    double ratio_rescale = 1.0;
    /// Comparison against dist_norm(M, .) after both rescales.
    RatioReport report;
};

/// Importance-sampled sub-POVM with budget.target_outcomes draws.
///
/// Indices are drawn i.i.d. from tr(M_i)/d, repeats merged, and each kept
/// element weighted by multiplicity / (draws * tr(M_i)/d) so that the
/// expected zonotope is K_M; see Reweighting for the optional moment fit.
/// The result is then scaled by min(1, 1/lambda_max(sum)) and, if some
/// tested direction has ratio above one, by 1/max_ratio. Every output element
/// is a positive multiple of an input element. Throws BudgetTooSmall if fewer
/// than d distinct elements were drawn and min_ratio < 0.1.
SparsifyResult sparsify_sub_povm(const DiscretePOVM& m, const SparsifyBudget& budget, RngStream& rng,
                                 const SparsifyOptions& options = {});

/// One (d_i, n_i) pair per tensor factor.
struct FactorSpec {
    std::size_t dim;
    std::size_t outcomes;
};

struct TensorSparsification {
    std::vector<DiscretePOVM> factors;
    DiscretePOVM povm;
};

/// Independent random_povm per factor (substream i for factor i), tensored.
DiscretePOVM tensor_sparsify(std::span<const FactorSpec> factors, RngStream& rng);
TensorSparsification tensor_sparsify_factors(std::span<const FactorSpec> factors, RngStream& rng);

}  // namespace povmsparse

#endif  // POVMSPARSE_SPARSIFY_HPP
