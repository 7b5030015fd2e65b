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

#ifndef POVMSPARSE_SRC_MONTE_CARLO_HPP
#define POVMSPARSE_SRC_MONTE_CARLO_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

#include "povmsparse/errors.hpp"
#include "povmsparse/rng.hpp"

namespace povmsparse::detail {

/// Streaming mean and variance (Welford), mergeable (Chan et al.).
struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++count;
        const double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.count == 0) return;
        if (count == 0) {
            *this = other;
            return;
        }
        const double n1 = static_cast<double>(count);
        const double n2 = static_cast<double>(other.count);
        const double delta = other.mean - mean;
        const double n = n1 + n2;
        mean += delta * n2 / n;
        m2 += other.m2 + delta * delta * n1 * n2 / n;
        count += other.count;
    }

    [[nodiscard]] double sample_variance() const {
        return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    }
    [[nodiscard]] double std_error() const {
        return count > 0 ? std::sqrt(sample_variance() / static_cast<double>(count)) : 0.0;
    }
};

/// Merges per-worker partials in a fixed pairwise tree order.
template <typename T>
T pairwise_reduce(std::vector<T> parts) {
    while (parts.size() > 1) {
        std::vector<T> next;
        next.reserve((parts.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < parts.size(); i += 2) {
            parts[i].merge(parts[i + 1]);
            next.push_back(std::move(parts[i]));
        }
        if (parts.size() % 2 == 1) next.push_back(std::move(parts.back()));
        parts = std::move(next);
    }
    return std::move(parts.front());
}

/// Splits `total` work items over `workers` substreams of `base` and runs
/// `body(rng, begin, end)` for each, returning the partial results in worker
/// order. Results depend only on (base key, workers).
template <typename T, typename Body>
std::vector<T> run_chunks(const RngStream& base, std::size_t total, std::size_t workers, Body body) {
    if (workers == 0) throw InvalidArgument("worker count must be >= 1");
    workers = std::min(workers, std::max<std::size_t>(total, 1));
    std::vector<T> parts(workers);
    auto run = [&](std::size_t w) {
        RngStream rng = base.split(w);
        const std::size_t begin = total * w / workers;
        const std::size_t end = total * (w + 1) / workers;
        parts[w] = body(rng, begin, end);
    };
    if (workers == 1) {
        run(0);
        return parts;
    }
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
    return parts;
}

/// Consumes one draw from `rng` and returns the base stream for a batch.
inline RngStream batch_stream(RngStream& rng) { return rng.split(rng()); }

}  // namespace povmsparse::detail

#endif  // POVMSPARSE_SRC_MONTE_CARLO_HPP
