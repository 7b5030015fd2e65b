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

#include "povmsparse/uniform.hpp"

#include <array>
#include <cmath>
#include <string>

#include "monte_carlo.hpp"
#include "povmsparse/errors.hpp"

namespace povmsparse {

namespace {

// Fills `v` with a Haar unit vector using the same draw order as
// haar_unit_vector, without allocating.
template <typename Segment>
void fill_haar(Segment&& v, RngStream& rng) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    v /= v.norm();
}

// Draws product vectors and hands d*|<psi|A|psi>| to `sink`.
template <typename Sink>
void sample_local_forms(const HermitianOperator& a, std::span<const std::size_t> dims, std::size_t count,
                        RngStream& rng, Sink&& sink) {
    const auto d = static_cast<Eigen::Index>(a.dim());
    const double scale = static_cast<double>(d);
    ComplexVector psi(d), tmp(d), factor, next;
    for (std::size_t s = 0; s < count; ++s) {
        if (dims.size() == 1) {
            fill_haar(psi, rng);
        } else {
            psi.resize(1);
            psi(0) = 1.0;
            for (std::size_t f = 0; f < dims.size(); ++f) {
                factor.resize(static_cast<Eigen::Index>(dims[f]));
                fill_haar(factor, rng);
                next.resize(psi.size() * factor.size());
                for (Eigen::Index i = 0; i < psi.size(); ++i) {
                    next.segment(i * factor.size(), factor.size()) = psi(i) * factor;
                }
                psi.swap(next);
            }
        }
        tmp.noalias() = a.matrix() * psi;
        sink(scale * std::abs(psi.dot(tmp).real()));
    }
}

NormEstimate estimate(const HermitianOperator& a, std::span<const std::size_t> dims, std::size_t samples,
                      RngStream& rng, std::size_t workers) {
    if (samples < 2) throw InvalidArgument("norm estimate needs at least 2 samples");
    const RngStream base = detail::batch_stream(rng);
    auto parts = detail::run_chunks<detail::Moments>(
        base, samples, workers, [&](RngStream& sub, std::size_t begin, std::size_t end) {
            detail::Moments m;
            sample_local_forms(a, dims, end - begin, sub, [&](double x) { m.add(x); });
            return m;
        });
    const auto total = detail::pairwise_reduce(std::move(parts));
    return {total.mean, total.std_error(), total.count};
}

}  // namespace

double norm_2_1(const HermitianOperator& a) {
    const double tr = a.trace();
    const double hs = hs_norm(a);
    return std::sqrt(hs * hs + tr * tr);
}

double norm_2_k(const HermitianOperator& a, std::span<const std::size_t> dims) {
    if (dims.empty() || dims.size() > 8) {
        throw InvalidArgument("norm_2_k supports 1 to 8 tensor factors, got " + std::to_string(dims.size()));
    }
    if (product(dims) != a.dim()) throw DimensionMismatch("norm_2_k: local dimensions do not match operator");
    const std::size_t k = dims.size();
    double total = 0.0;
    std::vector<std::size_t> traced;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        traced.clear();
        for (std::size_t f = 0; f < k; ++f) {
            if (mask & (std::size_t{1} << f)) traced.push_back(f);
        }
        const double hs = hs_norm(partial_trace(a, dims, traced));
        total += hs * hs;
    }
    return std::sqrt(total);
}

NormEstimate estimate_uniform_norm(const HermitianOperator& a, std::size_t samples, RngStream& rng,
                                   std::size_t workers) {
    const std::size_t dims[] = {a.dim()};
    return estimate(a, dims, samples, rng, workers);
}

NormEstimate estimate_local_uniform_norm(const HermitianOperator& a, std::span<const std::size_t> dims,
                                         std::size_t samples, RngStream& rng, std::size_t workers) {
    if (dims.empty() || product(dims) != a.dim()) {
        throw DimensionMismatch("estimate_local_uniform_norm: local dimensions do not match operator");
    }
    return estimate(a, dims, samples, rng, workers);
}

double exact_second_moment(const HermitianOperator& a) {
    const double d = static_cast<double>(a.dim());
    const double n = norm_2_1(a);
    return d * n * n / (d + 1.0);
}

std::vector<MomentRow> moment_growth_check(const HermitianOperator& a, int q_max, std::size_t samples,
                                           RngStream& rng, std::size_t workers) {
    if (q_max < 1 || q_max > 4) throw InvalidArgument("moment_growth_check supports 1 <= q_max <= 4");
    if (samples < 2) throw InvalidArgument("moment_growth_check needs at least 2 samples");
    struct Partial {
        std::array<detail::Moments, 4> by_q;
        void merge(const Partial& o) {
            for (std::size_t i = 0; i < by_q.size(); ++i) by_q[i].merge(o.by_q[i]);
        }
    };
    const std::size_t dims[] = {a.dim()};
    const RngStream base = detail::batch_stream(rng);
    auto parts = detail::run_chunks<Partial>(base, samples, workers,
                                             [&](RngStream& sub, std::size_t begin, std::size_t end) {
                                                 Partial p;
                                                 sample_local_forms(a, dims, end - begin, sub, [&](double x) {
                                                     const double x2 = x * x;
                                                     double power = x2;
                                                     for (int q = 0; q < q_max; ++q) {
                                                         p.by_q[static_cast<std::size_t>(q)].add(power);
                                                         power *= x2;
                                                     }
                                                 });
                                                 return p;
                                             });
    const auto total = detail::pairwise_reduce(std::move(parts));
    const double n21 = norm_2_1(a);
    std::vector<MomentRow> rows;
    for (int q = 1; q <= q_max; ++q) {
        const auto& m = total.by_q[static_cast<std::size_t>(q - 1)];
        rows.push_back({q, m.mean, m.std_error(), std::pow(m.mean, 1.0 / (2.0 * q)), 2.0 * q * n21});
    }
    return rows;
}

}  // namespace povmsparse
