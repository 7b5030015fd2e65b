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

#include "povmsparse_cli/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "povmsparse/designs.hpp"
#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"
#include "povmsparse/rng.hpp"
#include "povmsparse/sparsify.hpp"
#include "povmsparse/uniform.hpp"

namespace povmsparse::cli {

namespace {

using Key = Table::Key;

std::string num(double x) { return format_number(x); }
std::string num(std::size_t x) { return format_number(static_cast<std::uint64_t>(x)); }

std::size_t or_default(std::size_t value, std::size_t fallback) { return value ? value : fallback; }

std::vector<std::size_t> dims_or(const ExperimentConfig& c, std::vector<std::size_t> fallback) {
    const auto& dims = c.dims.empty() ? fallback : c.dims;
    for (std::size_t d : dims) {
        if (d == 0) throw ConfigError("dimensions must be positive");
    }
    return dims;
}

std::string join_dims(const std::vector<std::size_t>& dims) {
    std::string out;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) out += 'x';
        out += num(dims[i]);
    }
    return out;
}

const char* sandwich_verdict(double value, double stderr3, double lower, double upper) {
    if (value + stderr3 < lower || value - stderr3 > upper) return "violation";
    if (value >= lower && value <= upper) return "within";
    return "inconclusive";
}

// prop4-sandwich: Monte Carlo uniform norm against the modified
// Hilbert-Schmidt bounds [norm/sqrt(18)^k, norm].
void run_sandwich(const ExperimentConfig& c, ExperimentRecord& rec) {
    const RngStream root(c.seed);
    const std::size_t trials = or_default(c.trials, 50);
    std::vector<std::vector<std::size_t>> spaces;
    if (c.local) {
        spaces.push_back(dims_or(c, {2, 2}));
        if (spaces[0].size() > 8) throw ConfigError("at most 8 local factors are supported");
    } else {
        for (std::size_t d : dims_or(c, {2, 4, 8, 16})) spaces.push_back({d});
    }
    std::size_t violations = 0, inconclusive = 0;
    double worst_lower_ratio = INFINITY;
    for (std::size_t g = 0; g < spaces.size(); ++g) {
        const auto& dims = spaces[g];
        const std::size_t d = product(dims);
        const double k = static_cast<double>(dims.size());
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t s = g * trials + t;
            const RngStream stream = root.split(s);
            RngStream draw = stream.split(0);
            RngStream est_rng = stream.split(1);
            const auto delta = random_direction(d, draw);
            const double hs = dims.size() == 1 ? norm_2_1(delta) : norm_2_k(delta, dims);
            const auto e = dims.size() == 1 ? estimate_uniform_norm(delta, c.samples, est_rng, c.workers)
                                            : estimate_local_uniform_norm(delta, dims, c.samples, est_rng, c.workers);
            const double lower = hs / std::pow(18.0, k / 2.0);
            const std::string verdict = sandwich_verdict(e.value, 3 * e.std_error, lower, hs);
            violations += verdict == "violation";
            inconclusive += verdict == "inconclusive";
            worst_lower_ratio = std::min(worst_lower_ratio, e.value / hs);
            rec.table.add(Key{g, t, 0}, {num(c.seed), num(s), join_dims(dims), num(t), num(hs), num(e.value),
                                         num(e.std_error), num(lower), num(hs), num(e.value / hs), verdict});
        }
    }
    rec.ok = violations == 0;
    rec.json["summary"] = {{"violations", violations},
                           {"inconclusive", inconclusive},
                           {"min_estimate_over_norm", worst_lower_ratio}};
}

// thm1-concentration: band of ||.||_M / ||.||_U over an n sweep, with the
// directions and the uniform reference values shared across n within a trial.
void run_concentration(const ExperimentConfig& c, ExperimentRecord& rec) {
    const RngStream root(c.seed);
    const std::size_t trials = or_default(c.trials, 5);
    const auto dims = dims_or(c, {2});
    const Band band{1.0 - c.epsilon, 1.0 + c.epsilon};
    io::Json per_dim = io::Json::array();
    bool trend = true, last_within = true;
    for (std::size_t g = 0; g < dims.size(); ++g) {
        const std::size_t d = dims[g];
        const std::vector<std::size_t> ns = c.n.empty() ? std::vector<std::size_t>{4 * d * d, 16 * d * d, 64 * d * d} : c.n;
        for (std::size_t n : ns) {
            if (n < d) throw ConfigError("thm1-concentration needs n >= d for every swept n");
        }
        std::vector<std::vector<RatioReport>> reports(ns.size());
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t s = g * trials + t;
            const RngStream stream = root.split(s);
            const RngStream dir_base = stream.split(0);
            const auto directions = sample_directions(d, c.directions, DirectionSet::haar, dir_base);
            std::vector<ReferenceValue> refs;
            refs.reserve(directions.size());
            for (std::size_t i = 0; i < directions.size(); ++i) {
                RngStream r = dir_base.split(i).split(1);
                const auto e = estimate_uniform_norm(directions[i], c.samples, r, c.workers);
                refs.push_back({e.value, e.std_error});
            }
            for (std::size_t j = 0; j < ns.size(); ++j) {
                RngStream povm_rng = stream.split(1 + j);
                const auto m = random_povm(d, ns[j], povm_rng);
                reports[j].push_back(compare_on_directions(m, directions, refs, "uniform", band));
            }
        }
        io::Json sweep = io::Json::array();
        double previous = INFINITY;
        for (std::size_t j = 0; j < ns.size(); ++j) {
            double mean_width = 0.0, lo = INFINITY, hi = -INFINITY;
            for (const auto& r : reports[j]) {
                mean_width += r.band_width() / static_cast<double>(trials);
                lo = std::min(lo, r.min_ratio);
                hi = std::max(hi, r.max_ratio);
            }
            const bool decreasing = mean_width < previous;
            if (j > 0) trend = trend && decreasing;
            previous = mean_width;
            if (j + 1 == ns.size()) last_within = last_within && lo >= band.lower && hi <= band.upper;
            const std::string trend_cell = j == 0 ? "start" : (decreasing ? "decreasing" : "not_decreasing");
            for (std::size_t t = 0; t < trials; ++t) {
                const auto& r = reports[j][t];
                rec.table.add(Key{g * ns.size() + j, t, 0},
                              {num(c.seed), num(g * trials + t), num(d), num(ns[j]), num(t), num(r.directions_tested),
                               num(r.min_ratio), num(r.max_ratio), num(r.band_width()), num(r.violations),
                               num(r.inconclusive), num(mean_width), trend_cell});
            }
            sweep.push_back({{"n", ns[j]}, {"mean_band_width", mean_width}, {"min_ratio", lo}, {"max_ratio", hi}});
        }
        per_dim.push_back({{"d", d}, {"sweep", std::move(sweep)}});
    }
    rec.json["summary"] = {{"per_dimension", std::move(per_dim)},
                           {"width_strictly_decreasing", trend},
                           {"largest_n_within_band", last_within},
                           {"band", {band.lower, band.upper}}};
}

// thm3-local: per-factor bands against the uniform norm, then the tensor
// band against the local uniform norm.
void run_local(const ExperimentConfig& c, ExperimentRecord& rec) {
    const RngStream root(c.seed);
    const std::size_t trials = or_default(c.trials, 3);
    const auto dims = dims_or(c, {2, 2});
    if (dims.size() > 8) throw ConfigError("at most 8 local factors are supported");
    if (!c.n.empty() && c.n.size() != 1 && c.n.size() != dims.size()) {
        throw ConfigError("thm3-local needs one n per factor (or a single shared n)");
    }
    std::vector<FactorSpec> specs;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const std::size_t n = c.n.empty() ? 16 * dims[i] * dims[i] : (c.n.size() == 1 ? c.n[0] : c.n[i]);
        if (n < dims[i]) throw ConfigError("thm3-local needs n_i >= d_i");
        specs.push_back({dims[i], n});
    }
    const double k = static_cast<double>(dims.size());
    bool factorization_ok = true;
    std::size_t tensor_violations = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const RngStream stream = root.split(t);
        RngStream build_rng = stream.split(0);
        const auto sp = tensor_sparsify_factors(specs, build_rng);
        double eps = 0.0;
        for (std::size_t f = 0; f < specs.size(); ++f) {
            RngStream rr = stream.split(1 + f);
            const Band factor_band{1.0 - c.epsilon, 1.0 + c.epsilon};
            const auto r = verify_equivalence(sp.factors[f], uniform_reference(c.samples),
                                              {.directions = c.directions, .band = factor_band, .workers = c.workers},
                                              rr);
            eps = std::max({eps, 1.0 - r.min_ratio, r.max_ratio - 1.0});
            rec.table.add(Key{0, t, f}, {num(c.seed), num(t), num(t), "factor" + num(f), num(specs[f].dim),
                                         num(specs[f].outcomes), num(r.min_ratio), num(r.max_ratio),
                                         num(factor_band.lower), num(factor_band.upper), num(r.violations),
                                         num(r.inconclusive)});
        }
        const Band band{std::pow(1.0 - eps, k), std::pow(1.0 + eps, k)};
        RngStream tr = stream.split(1 + specs.size());
        const auto r = verify_equivalence(sp.povm, local_uniform_reference(dims, c.samples),
                                          {.directions = c.directions, .band = band, .workers = c.workers}, tr);
        tensor_violations += r.violations;
        rec.table.add(Key{0, t, specs.size()},
                      {num(c.seed), num(t), num(t), "tensor", num(sp.povm.dim()), num(sp.povm.size()),
                       num(r.min_ratio), num(r.max_ratio), num(band.lower), num(band.upper), num(r.violations),
                       num(r.inconclusive)});
        // Exact backbone: on product directions the tensor norm factorizes.
        RngStream pr = stream.split(2 + specs.size());
        for (int i = 0; i < 10; ++i) {
            HermitianOperator delta = HermitianOperator::identity(1);
            double expected = 1.0;
            for (std::size_t f = 0; f < specs.size(); ++f) {
                const auto a = random_direction(specs[f].dim, pr);
                expected *= dist_norm(sp.factors[f], a);
                delta = kron(delta, a);
            }
            factorization_ok = factorization_ok && std::abs(dist_norm(sp.povm, delta) - expected) <= 1e-10 * std::max(1.0, expected);
        }
    }
    rec.ok = factorization_ok;
    rec.json["summary"] = {{"product_factorization_ok", factorization_ok}, {"tensor_band_violations", tensor_violations}};
}

// thm4-subpovm: sub-POVM sparsification of a random POVM.
void run_subpovm(const ExperimentConfig& c, ExperimentRecord& rec) {
    const RngStream root(c.seed);
    const std::size_t trials = or_default(c.trials, 1);
    const auto dims = dims_or(c, {3});
    const std::size_t n = c.n.empty() ? 600 : c.n.at(0);
    if (c.n.size() > 1) throw ConfigError("thm4-subpovm takes a single n");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) throw ConfigError("thm4-subpovm needs epsilon in (0, 1)");
    SparsifyOptions options;
    if (c.reweighting == "multiplicity") {
        options.reweighting = Reweighting::multiplicity;
    } else if (c.reweighting != "second_moment") {
        throw ConfigError("unknown reweighting '" + c.reweighting + "'");
    }
    bool all_ok = true;
    double worst_min = INFINITY;
    for (std::size_t g = 0; g < dims.size(); ++g) {
        const std::size_t d = dims[g];
        if (n < d) throw ConfigError("thm4-subpovm needs n >= d");
        std::size_t budget = c.budget;
        if (budget == 0) {
            const double target = std::ceil(c.multiplier * static_cast<double>(d * d) / (c.epsilon * c.epsilon));
            budget = static_cast<std::size_t>(std::min(target, static_cast<double>(n - 1)));
        }
        if (budget >= n) throw ConfigError("budget must be below n");
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t s = g * trials + t;
            const RngStream stream = root.split(s);
            RngStream povm_rng = stream.split(0);
            RngStream sparse_rng = stream.split(1);
            const auto m = random_povm(d, n, povm_rng);
            const auto result =
                sparsify_sub_povm(m, {.target_outcomes = budget, .epsilon = c.epsilon, .direction_samples = c.directions},
                                  sparse_rng, options);
            const double lambda_max = result.sub_povm.total().eigenvalues().maxCoeff();
            bool support = result.source_index.size() == result.sub_povm.size();
            for (std::size_t i = 0; support && i < result.sub_povm.size(); ++i) {
                support = result.scale[i] > 0.0 &&
                          operator_norm(result.sub_povm[i] - m[result.source_index[i]] * result.scale[i]) <= 1e-12;
            }
            const bool sub_ok = lambda_max <= 1.0 + 1e-10;
            const bool one_sided = result.report.max_ratio <= 1.0 + 1e-10;
            all_ok = all_ok && support && sub_ok && one_sided;
            worst_min = std::min(worst_min, result.report.min_ratio);
            rec.table.add(Key{g, t, 0},
                          {num(c.seed), num(s), num(d), num(n), num(budget), num(t), num(result.distinct),
                           num(result.sub_povm.size()), num(lambda_max), num(result.sub_povm_rescale),
                           num(result.ratio_rescale), num(result.moment_residual), num(result.report.directions_tested),
                           num(result.report.min_ratio), num(result.report.max_ratio), support ? "1" : "0",
                           sub_ok ? "1" : "0", one_sided ? "1" : "0"});
        }
    }
    rec.ok = all_ok;
    rec.json["summary"] = {{"invariants_ok", all_ok}, {"worst_min_ratio", worst_min}};
}

// moment-identities: even moments of d|<psi|A|psi>| against the exact
// second moment and the 2q growth bound.
void run_moments(const ExperimentConfig& c, ExperimentRecord& rec) {
    const RngStream root(c.seed);
    const std::size_t trials = or_default(c.trials, 20);
    const auto dims = dims_or(c, {2, 3, 5});
    if (c.q_max < 1 || c.q_max > 4) throw ConfigError("q_max must lie in 1..4");
    bool bounds_ok = true;
    std::size_t outside = 0;
    for (std::size_t g = 0; g < dims.size(); ++g) {
        const std::size_t d = dims[g];
        for (std::size_t t = 0; t < trials; ++t) {
            const std::uint64_t s = g * trials + t;
            const RngStream stream = root.split(s);
            RngStream draw = stream.split(0);
            RngStream mc = stream.split(1);
            const auto delta = random_direction(d, draw);
            const auto rows = moment_growth_check(delta, c.q_max, c.samples, mc, c.workers);
            for (const auto& r : rows) {
                const bool within_bound = r.root <= r.bound;
                bounds_ok = bounds_ok && within_bound;
                std::string exact, z, verdict;
                if (r.q == 1) {
                    const double e = exact_second_moment(delta);
                    const double score = (r.moment - e) / r.moment_std_error;
                    exact = num(e);
                    z = num(score);
                    verdict = std::abs(score) <= 3.0 ? "within" : "outside";
                    outside += verdict == "outside";
                }
                rec.table.add(Key{g, t, static_cast<std::uint64_t>(r.q)},
                              {num(c.seed), num(s), num(d), num(t), num(static_cast<std::size_t>(r.q)), num(r.moment),
                               num(r.moment_std_error), num(r.root), num(r.bound), within_bound ? "1" : "0", exact, z,
                               verdict});
            }
        }
    }
    rec.ok = bounds_ok;
    rec.json["summary"] = {{"growth_bounds_ok", bounds_ok}, {"second_moment_outside_3_sigma", outside}};
}

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// design-check: built-in designs against their known defects, symmetric
// projector traces, and optionally a user design file.
void run_designs(const ExperimentConfig& c, ExperimentRecord& rec) {
    struct Case {
        std::string name;
        DesignSpec spec;
        // Expected (lower, upper); negative means "not a design at this order".
        double lower, upper;
    };
    const DesignSpec single(2, 2, {{1.0, PureState::basis(2, 0)}});
    std::vector<Case> cases;
    for (int t = 1; t <= 4; ++t) cases.push_back({"pauli_mub", pauli_mub_design(t), t <= 3 ? 0.0 : -1.0, t <= 3 ? 0.0 : -1.0});
    for (int t = 1; t <= 5; ++t) cases.push_back({"icosahedron", icosahedron_design(t), 0.0, 0.0});
    cases.push_back({"basis_d3", basis_design(3, 1), 0.0, 0.0});
    cases.push_back({"basis_d3", basis_design(3, 2), 1.0, 1.0});
    cases.push_back({"single_atom_d2", single, 1.0, 2.0});
    if (!c.design_path.empty()) {
        const auto spec = io::design_from_json(io::read_file(c.design_path));
        for (int t = 1; t <= spec.order(); ++t) cases.push_back({"file", spec.with_order(t), -2.0, -2.0});
    }
    bool all_ok = true;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& k = cases[i];
        const auto defect = design_defect(k.spec);
        std::string pass;
        if (k.lower == -2.0) {
            pass = "-";
        } else if (k.lower < 0.0) {
            pass = std::max(defect.epsilon_lower, defect.epsilon_upper) > 1e-6 ? "1" : "0";
        } else {
            pass = std::abs(defect.epsilon_lower - k.lower) <= 1e-9 && std::abs(defect.epsilon_upper - k.upper) <= 1e-9 ? "1" : "0";
        }
        all_ok = all_ok && pass != "0";
        rec.table.add(Key{0, i, 0}, {num(c.seed), num(i), k.name, num(k.spec.dim()), num(static_cast<std::size_t>(k.spec.order())),
                                     num(defect.epsilon_lower), num(defect.epsilon_upper), num(defect.off_support), "", "",
                                     k.lower == -2.0 ? "" : (k.lower < 0.0 ? "not_a_design" : num(k.lower) + ";" + num(k.upper)),
                                     pass});
    }
    std::size_t row = 0;
    for (std::size_t d = 1; d <= 4; ++d) {
        for (int t = 1; t <= 3; ++t, ++row) {
            const double trace = sym_projector(d, t).trace();
            const auto expected = binomial(d + static_cast<std::size_t>(t) - 1, static_cast<std::size_t>(t));
            const bool pass = std::abs(trace - static_cast<double>(expected)) <= 1e-8;
            all_ok = all_ok && pass;
            rec.table.add(Key{1, row, 0}, {num(c.seed), num(cases.size() + row), "sym_projector", num(d), num(static_cast<std::size_t>(t)),
                                           "", "", "", num(trace), num(expected), "", pass ? "1" : "0"});
        }
    }
    rec.ok = all_ok;
    rec.json["summary"] = {{"all_expectations_met", all_ok}};
}

struct Experiment {
    const char* name;
    std::vector<std::string> columns;
    void (*run)(const ExperimentConfig&, ExperimentRecord&);
};

const std::vector<Experiment>& registry() {
    static const std::vector<Experiment> r{
        {"prop4-sandwich",
         {"seed", "substream", "dims", "trial", "hs_norm", "estimate", "stderr", "lower", "upper", "ratio", "verdict"},
         run_sandwich},
        {"thm1-concentration",
         {"seed", "substream", "d", "n", "trial", "directions", "min_ratio", "max_ratio", "band_width", "violations",
          "inconclusive", "mean_band_width", "trend"},
         run_concentration},
        {"thm3-local",
         {"seed", "substream", "trial", "part", "dim", "outcomes", "min_ratio", "max_ratio", "band_lower", "band_upper",
          "violations", "inconclusive"},
         run_local},
        {"thm4-subpovm",
         {"seed", "substream", "d", "n", "budget", "trial", "distinct", "outcomes", "lambda_max", "sub_povm_rescale",
          "ratio_rescale", "moment_residual", "directions", "min_ratio", "max_ratio", "support_ok", "sub_povm_ok",
          "one_sided_ok"},
         run_subpovm},
        {"moment-identities",
         {"seed", "substream", "d", "trial", "q", "moment", "moment_stderr", "root", "bound", "within_bound",
          "exact_moment", "z_score", "verdict"},
         run_moments},
        {"design-check",
         {"seed", "substream", "case", "d", "t", "epsilon_lower", "epsilon_upper", "off_support", "sym_trace",
          "binomial", "expected", "pass"},
         run_designs},
    };
    return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : registry()) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

io::Json config_to_json(const ExperimentConfig& c) {
    return {{"name", c.name},         {"seed", c.seed},         {"dims", c.dims},
            {"n", c.n},               {"budget", c.budget},     {"epsilon", c.epsilon},
            {"multiplier", c.multiplier}, {"samples", c.samples}, {"directions", c.directions},
            {"trials", c.trials},     {"q_max", c.q_max},       {"local", c.local},
            {"reweighting", c.reweighting}, {"design", c.design_path}, {"workers", c.workers}};
}

ExperimentRecord run_experiment(const ExperimentConfig& config) {
    const auto& reg = registry();
    const auto it = std::find_if(reg.begin(), reg.end(), [&](const Experiment& e) { return config.name == e.name; });
    if (it == reg.end()) throw ConfigError("unknown experiment '" + config.name + "'");
    if (config.samples < 2) throw ConfigError("samples must be at least 2");
    if (config.directions < 1) throw ConfigError("directions must be at least 1");
    if (config.workers < 1) throw ConfigError("workers must be at least 1");

    ExperimentRecord rec{config, Table(it->columns), io::Json::object(), true, 0.0};
    const auto start = std::chrono::steady_clock::now();
    it->run(config, rec);
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    io::Json rows = io::Json::array();
    for (std::size_t k = 0; k < rec.table.size(); ++k) {
        io::Json row = io::Json::object();
        for (const auto& col : rec.table.columns()) row[col] = rec.table.cell(k, col);
        rows.push_back(std::move(row));
    }
    rec.json["experiment"] = config.name;
    rec.json["version"] = POVMSPARSE_VERSION;
    rec.json["config"] = config_to_json(config);
    rec.json["seconds"] = rec.seconds;
    rec.json["ok"] = rec.ok;
    rec.json["rows"] = std::move(rows);
    return rec;
}

}  // namespace povmsparse::cli
