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

#include "povmsparse/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include "monte_carlo.hpp"
#include "povmsparse/errors.hpp"
#include "povmsparse/uniform.hpp"
#include "povmsparse/zonoid.hpp"

namespace povmsparse {

namespace {

constexpr int kRandomPovmAttempts = 8;
constexpr double kBandSlack = 1e-10;

Verdict classify(double ratio, double ratio_std_error, const Band& band) {
    const double lo = ratio - 3.0 * ratio_std_error;
    const double hi = ratio + 3.0 * ratio_std_error;
    const double band_lo = band.lower - kBandSlack;
    const double band_hi = band.upper + kBandSlack;
    if (lo >= band_lo && hi <= band_hi) return Verdict::within;
    if (hi < band_lo || lo > band_hi) return Verdict::violation;
    return Verdict::inconclusive;
}

void summarize(RatioReport& report) {
    report.directions_tested = report.records.size();
    report.min_ratio = std::numeric_limits<double>::infinity();
    report.max_ratio = -std::numeric_limits<double>::infinity();
    report.violations = 0;
    report.inconclusive = 0;
    for (auto& r : report.records) {
        r.verdict = classify(r.ratio, r.ratio_std_error, report.band);
        report.min_ratio = std::min(report.min_ratio, r.ratio);
        report.max_ratio = std::max(report.max_ratio, r.ratio);
        if (r.verdict == Verdict::violation) ++report.violations;
        if (r.verdict == Verdict::inconclusive) ++report.inconclusive;
    }
}

DirectionRecord make_record(std::uint64_t substream, double norm, const ReferenceValue& ref) {
    if (!(std::abs(ref.value) > 0.0)) {
        throw DegenerateReference("reference norm vanishes on direction " + std::to_string(substream));
    }
    const double ratio = norm / ref.value;
    return {substream, norm, ref.value, ref.std_error, ratio, std::abs(ratio) * ref.std_error / ref.value,
            Verdict::within};
}

HermitianOperator structured_direction(std::size_t d, std::size_t i, RngStream& rng) {
    const std::size_t pairs = d * (d - 1) / 2;
    if (i < pairs) {
        // i-th pair (j, k), j < k, in lexicographic order.
        std::size_t j = 0;
        std::size_t remaining = i;
        while (remaining >= d - 1 - j) {
            remaining -= d - 1 - j;
            ++j;
        }
        const std::size_t k = j + 1 + remaining;
        auto delta = PureState::basis(d, j).projector() - PureState::basis(d, k).projector();
        return delta * (1.0 / hs_norm(delta));
    }
    const auto a = haar_unit_vector(d, rng);
    const auto b = haar_unit_vector(d, rng);
    auto delta = a.projector() - b.projector();
    return delta * (1.0 / hs_norm(delta));
}

// Entries x_a x_b (a <= b) of x (x) x: the independent coordinates of
// vectorize(M (x) M) in the product basis, where x = vectorize(M).
RealVector symmetric_square(const RealVector& x) {
    const Eigen::Index n = x.size();
    RealVector out(n * (n + 1) / 2);
    Eigen::Index k = 0;
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b) out(k++) = x(a) * x(b);
    }
    return out;
}

// Fits the weights of the kept elements so that sum_k w_k M_k (x) M_k / tr M_k
// matches the same sum over all elements, changing each weight as little as
// possible relative to its size. Returns the relative residual.
double fit_second_moment(const DiscretePOVM& m, std::vector<std::size_t>& source, std::vector<double>& weight) {
    RealVector target;
    std::vector<RealVector> columns(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double tr = m[i].trace();
        if (!(tr > 0.0)) continue;
        columns[i] = symmetric_square(vectorize(m[i])) / tr;
        if (target.size() == 0) target = RealVector::Zero(columns[i].size());
        target += columns[i];
    }
    constexpr int kPasses = 6;
    for (int pass = 0; pass < kPasses; ++pass) {
        const auto k = static_cast<Eigen::Index>(source.size());
        Eigen::MatrixXd scaled(target.size(), k);
        RealVector current = RealVector::Zero(target.size());
        for (Eigen::Index j = 0; j < k; ++j) {
            const auto& col = columns[source[static_cast<std::size_t>(j)]];
            const double w = weight[static_cast<std::size_t>(j)];
            scaled.col(j) = col * w;
            current += col * w;
        }
        // weight_j <- weight_j (1 + z_j) with the minimum-norm z.
        const RealVector z = scaled.completeOrthogonalDecomposition().solve(target - current);
        bool dropped = false;
        std::vector<std::size_t> next_source;
        std::vector<double> next_weight;
        for (Eigen::Index j = 0; j < k; ++j) {
            const double w = weight[static_cast<std::size_t>(j)] * (1.0 + z(j));
            if (w > 0.0) {
                next_source.push_back(source[static_cast<std::size_t>(j)]);
                next_weight.push_back(w);
            } else {
                dropped = true;
            }
        }
        if (next_source.empty()) break;
        source = std::move(next_source);
        weight = std::move(next_weight);
        if (!dropped) break;
    }
    RealVector fitted = RealVector::Zero(target.size());
    for (std::size_t j = 0; j < source.size(); ++j) fitted += columns[source[j]] * weight[j];
    return (fitted - target).norm() / target.norm();
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::within:
            return "within";
        case Verdict::inconclusive:
            return "inconclusive";
        case Verdict::violation:
            return "violation";
    }
    return "unknown";
}

void RatioReport::rescale(double factor) {
    for (auto& r : records) {
        r.norm *= factor;
        r.ratio *= factor;
        r.ratio_std_error *= std::abs(factor);
    }
    summarize(*this);
}

RandomPovmSample renormalized_povm(std::vector<PureState> vectors) {
    if (vectors.empty()) throw InvalidArgument("renormalized_povm: no vectors");
    const std::size_t d = vectors.front().dim();
    ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const auto& v : vectors) {
        if (v.dim() != d) throw DimensionMismatch("renormalized_povm: vectors of different dimensions");
        s.noalias() += v.amplitudes() * v.amplitudes().adjoint();
    }
    HermitianOperator frame(std::move(s));
    const HermitianOperator root = inv_sqrt_psd(frame);
    std::vector<HermitianOperator> elements;
    elements.reserve(vectors.size());
    for (const auto& v : vectors) {
        const ComplexVector phi = root.matrix() * v.amplitudes();
        elements.emplace_back(phi * phi.adjoint());
    }
    return {DiscretePOVM(std::move(elements)), std::move(vectors), std::move(frame)};
}

RandomPovmSample random_povm_sample(std::size_t d, std::size_t n, RngStream& rng) {
    if (d == 0) throw InvalidArgument("random_povm: dimension must be >= 1");
    if (n < d) {
        throw InvalidArgument("random_povm: need n >= d outcomes, got n = " + std::to_string(n) +
                              ", d = " + std::to_string(d));
    }
    const RngStream base = detail::batch_stream(rng);
    for (int attempt = 0; attempt < kRandomPovmAttempts; ++attempt) {
        RngStream sub = base.split(static_cast<std::uint64_t>(attempt));
        std::vector<PureState> vectors;
        vectors.reserve(n);
        for (std::size_t i = 0; i < n; ++i) vectors.push_back(haar_unit_vector(d, sub));
        try {
            return renormalized_povm(std::move(vectors));
        } catch (const SingularOperator&) {
            // resample on the next substream
        }
    }
    throw SingularGram("random_povm: frame operator singular in " + std::to_string(kRandomPovmAttempts) +
                       " attempts (n = " + std::to_string(n) + " is too close to d = " + std::to_string(d) + ")");
}

DiscretePOVM random_povm(std::size_t d, std::size_t n, RngStream& rng) {
    return random_povm_sample(d, n, rng).povm;
}

HermitianOperator renormalization_map(const RandomPovmSample& sample) {
    const double d = static_cast<double>(sample.frame.dim());
    const double n = static_cast<double>(sample.vectors.size());
    return inv_sqrt_psd(sample.frame * (d / n));
}

double empirical_uniform_norm(std::span<const PureState> vectors, const HermitianOperator& delta) {
    if (vectors.empty()) throw InvalidArgument("empirical_uniform_norm: no vectors");
    double total = 0.0;
    for (const auto& v : vectors) total += std::abs(v.expectation(delta));
    return static_cast<double>(delta.dim()) / static_cast<double>(vectors.size()) * total;
}

Reference exact_reference(const Measurement& m, std::string label) {
    // The reference outlives `m` in some callers, so it owns a copy.
    auto owned = std::make_shared<SubPOVM>(m.elements());
    return {std::move(label), [owned](const HermitianOperator& delta, RngStream&) {
                return ReferenceValue{dist_norm(*owned, delta), 0.0};
            }};
}

Reference uniform_reference(std::size_t samples) {
    return {"uniform", [samples](const HermitianOperator& delta, RngStream& rng) {
                const auto e = estimate_uniform_norm(delta, samples, rng);
                return ReferenceValue{e.value, e.std_error};
            }};
}

Reference local_uniform_reference(std::vector<std::size_t> dims, std::size_t samples) {
    return {"local_uniform", [dims = std::move(dims), samples](const HermitianOperator& delta, RngStream& rng) {
                const auto e = estimate_local_uniform_norm(delta, dims, samples, rng);
                return ReferenceValue{e.value, e.std_error};
            }};
}

Reference scaled_reference(Reference base, double factor) {
    std::string label = std::to_string(factor) + "*" + base.label;
    return {std::move(label), [eval = std::move(base.evaluate), factor](const HermitianOperator& delta,
                                                                       RngStream& rng) {
                const auto r = eval(delta, rng);
                return ReferenceValue{factor * r.value, std::abs(factor) * r.std_error};
            }};
}

std::vector<HermitianOperator> sample_directions(std::size_t d, std::size_t count, DirectionSet set,
                                                 const RngStream& base) {
    std::vector<HermitianOperator> out;
    out.reserve(count);
    std::size_t structured_index = 0;
    for (std::size_t i = 0; i < count; ++i) {
        RngStream sub = base.split(i).split(0);
        const bool structured =
            set == DirectionSet::structured || (set == DirectionSet::mixed && i % 2 == 1);
        if (structured && d >= 2) {
            out.push_back(structured_direction(d, structured_index++, sub));
        } else {
            out.push_back(random_direction(d, sub));
        }
    }
    return out;
}

RatioReport compare_on_directions(const Measurement& m, std::span<const HermitianOperator> directions,
                                  std::span<const ReferenceValue> reference, std::string reference_label,
                                  Band band) {
    if (directions.size() != reference.size()) {
        throw InvalidArgument("compare_on_directions: one reference value per direction required");
    }
    if (directions.empty()) throw InvalidArgument("compare_on_directions: no directions");
    RatioReport report;
    report.reference_label = std::move(reference_label);
    report.band = band;
    report.records.reserve(directions.size());
    for (std::size_t i = 0; i < directions.size(); ++i) {
        report.records.push_back(make_record(i, dist_norm(m, directions[i]), reference[i]));
    }
    summarize(report);
    return report;
}

RatioReport verify_equivalence(const Measurement& m, const Reference& reference, const VerifyOptions& options,
                               RngStream& rng) {
    if (options.directions == 0) throw InvalidArgument("verify_equivalence: need at least one direction");
    const RngStream base = detail::batch_stream(rng);
    const auto directions = sample_directions(m.dim(), options.directions, options.direction_set, base);
    auto parts = detail::run_chunks<std::vector<DirectionRecord>>(
        base, directions.size(), options.workers, [&](RngStream&, std::size_t begin, std::size_t end) {
            std::vector<DirectionRecord> records;
            for (std::size_t i = begin; i < end; ++i) {
                RngStream sub = base.split(i).split(1);
                const auto ref = reference.evaluate(directions[i], sub);
                records.push_back(make_record(i, dist_norm(m, directions[i]), ref));
            }
            return records;
        });
    RatioReport report;
    report.reference_label = reference.label;
    report.band = options.band;
    report.stream_key = base.key();
    for (auto& p : parts) report.records.insert(report.records.end(), p.begin(), p.end());
    summarize(report);
    return report;
}

SparsifyResult sparsify_sub_povm(const DiscretePOVM& m, const SparsifyBudget& budget, RngStream& rng,
                                 const SparsifyOptions& sparsify_options) {
    const std::size_t n = m.size();
    const std::size_t draws = budget.target_outcomes;
    if (draws < 1) throw InvalidArgument("sparsify_sub_povm: target_outcomes must be >= 1");
    if (draws >= n) {
        throw InvalidArgument("sparsify_sub_povm: target_outcomes (" + std::to_string(draws) +
                              ") must be below the number of elements (" + std::to_string(n) + ")");
    }
    if (!(budget.epsilon > 0.0 && budget.epsilon < 1.0)) {
        throw InvalidArgument("sparsify_sub_povm: epsilon must lie in (0, 1)");
    }
    if (budget.direction_samples < 1) throw InvalidArgument("sparsify_sub_povm: need direction samples");

    const double d = static_cast<double>(m.dim());
    const RngStream base = detail::batch_stream(rng);

    // Canonical weights tr(M_i)/d of the associated state measure.
    std::vector<double> weight(n);
    std::vector<double> cumulative(n);
    double running = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        weight[i] = std::max(0.0, m[i].trace()) / d;
        running += weight[i];
        cumulative[i] = running;
    }
    RngStream draw_stream = base.split(0);
    std::map<std::size_t, std::size_t> multiplicity;
    for (std::size_t s = 0; s < draws; ++s) {
        const double u = draw_stream.uniform() * running;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        auto index = static_cast<std::size_t>(std::distance(cumulative.begin(), it));
        index = std::min(index, n - 1);
        while (weight[index] == 0.0 && index > 0) --index;
        ++multiplicity[index];
    }

    std::vector<std::size_t> source;
    std::vector<double> scale;
    for (const auto& [index, count] : multiplicity) {
        source.push_back(index);
        scale.push_back(static_cast<double>(count) / (static_cast<double>(draws) * weight[index] / running));
    }
    double moment_residual = 0.0;
    if (sparsify_options.reweighting == Reweighting::second_moment) {
        moment_residual = fit_second_moment(m, source, scale);
    }

    ComplexMatrix total = ComplexMatrix::Zero(static_cast<Eigen::Index>(m.dim()), static_cast<Eigen::Index>(m.dim()));
    for (std::size_t k = 0; k < source.size(); ++k) total += scale[k] * m[source[k]].matrix();

    const double lambda_max = HermitianOperator(total).eigenvalues().maxCoeff();
    const double sub_scale = lambda_max > 1.0 ? 1.0 / lambda_max : 1.0;
    for (auto& s : scale) s *= sub_scale;

    auto build = [&] {
        std::vector<HermitianOperator> elements;
        elements.reserve(source.size());
        for (std::size_t k = 0; k < source.size(); ++k) elements.push_back(m[source[k]] * scale[k]);
        return elements;
    };

    const SubPOVM candidate(build());

    RngStream verify_stream = base.split(1);
    VerifyOptions options;
    options.directions = budget.direction_samples;
    options.direction_set = sparsify_options.directions;
    options.band = {1.0 - budget.epsilon, 1.0};
    RatioReport report = verify_equivalence(candidate, exact_reference(m), options, verify_stream);

    double ratio_scale = 1.0;
    if (report.max_ratio > 1.0) {
        ratio_scale = 1.0 / report.max_ratio;
        for (auto& s : scale) s *= ratio_scale;
        report.rescale(ratio_scale);
    }

    if (multiplicity.size() < m.dim() && report.min_ratio < 0.1) {
        throw BudgetTooSmall("sparsify_sub_povm: only " + std::to_string(multiplicity.size()) +
                             " distinct elements drawn and min_ratio = " + std::to_string(report.min_ratio));
    }

    return {SubPOVM(build()), std::move(source), std::move(scale), multiplicity.size(), moment_residual, sub_scale,
            ratio_scale, std::move(report)};
}

TensorSparsification tensor_sparsify_factors(std::span<const FactorSpec> factors, RngStream& rng) {
    if (factors.empty()) throw InvalidArgument("tensor_sparsify: no factors");
    const RngStream base = detail::batch_stream(rng);
    std::vector<DiscretePOVM> povms;
    povms.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        RngStream sub = base.split(i);
        povms.push_back(random_povm(factors[i].dim, factors[i].outcomes, sub));
    }
    DiscretePOVM total = povms.front();
    for (std::size_t i = 1; i < povms.size(); ++i) total = tensor_povm(total, povms[i]);
    return {std::move(povms), std::move(total)};
}

DiscretePOVM tensor_sparsify(std::span<const FactorSpec> factors, RngStream& rng) {
    return tensor_sparsify_factors(factors, rng).povm;
}

}  // namespace povmsparse
