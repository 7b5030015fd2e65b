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

#ifndef POVMSPARSE_CLI_EXPERIMENTS_HPP
#define POVMSPARSE_CLI_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "povmsparse/errors.hpp"
#include "povmsparse/io.hpp"
#include "povmsparse_cli/table.hpp"

namespace povmsparse::cli {

/// Inconsistent experiment parameters (unknown name, bad dims or budgets).
class ConfigError : public Error {
   public:
    using Error::Error;
};

/// Every experiment reads only the fields it needs; unset optional lists
/// fall back to per-experiment defaults documented in docs/csv_schema.md.
struct ExperimentConfig {
    std::string name;
    std::uint64_t seed = 0;
    /// Dimensions swept over (prop4-sandwich, thm1-concentration,
    /// moment-identities, thm4-subpovm) or local factor dimensions (thm3-local,
    /// prop4-sandwich with `local` set).
    std::vector<std::size_t> dims;
    /// Outcome counts: the n sweep (thm1-concentration), per-factor counts
    /// (thm3-local) or the source POVM size (thm4-subpovm).
    std::vector<std::size_t> n;
    /// Sub-POVM size for thm4-subpovm; 0 means multiplier * d^2 / epsilon^2
    /// clamped below the source size.
    std::size_t budget = 0;
    double epsilon = 0.25;
    double multiplier = 40.0;
    std::size_t samples = 100000;
    std::size_t directions = 200;
    std::size_t trials = 0;
    int q_max = 4;
    /// thm4-subpovm: "second_moment" (default) or "multiplicity".
    std::string reweighting = "second_moment";
    /// prop4-sandwich: treat `dims` as the factors of one product space.
    bool local = false;
    /// design-check: optional design file to check in addition to built-ins.
    std::string design_path;
    std::size_t workers = 1;
};

struct ExperimentRecord {
    ExperimentConfig config;
    Table table;
    /// Config echo, summary values, version and wall-clock duration.
    io::Json json;
    /// False iff a hard invariant was violated. Inconclusive statistical rows
    /// never clear this flag.
    bool ok = true;
    double seconds = 0.0;
};

const std::vector<std::string>& experiment_names();

/// Runs the named experiment. Throws ConfigError on inconsistent configs.
ExperimentRecord run_experiment(const ExperimentConfig& config);

io::Json config_to_json(const ExperimentConfig& config);

}  // namespace povmsparse::cli

#endif  // POVMSPARSE_CLI_EXPERIMENTS_HPP
