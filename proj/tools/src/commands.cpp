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

#include "povmsparse_cli/commands.hpp"

#include <algorithm>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "povmsparse/designs.hpp"
#include "povmsparse/errors.hpp"
#include "povmsparse/io.hpp"
#include "povmsparse/sparsify.hpp"
#include "povmsparse/uniform.hpp"
#include "povmsparse/zonoid.hpp"
#include "povmsparse_cli/experiments.hpp"
#include "povmsparse_cli/table.hpp"

namespace povmsparse::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(path + ": cannot open for writing");
    f << text;
}

void emit_json(const io::Json& j, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << j.dump(1) << '\n';
    } else {
        io::write_file(out_path, j);
    }
}

void print_check(std::ostream& out, const std::string& name, bool passed, double defect, double tolerance,
                 const std::string& detail = "") {
    out << (passed ? "PASS " : "FAIL ") << name << " defect=" << format_number(defect)
        << " tolerance=" << format_number(tolerance);
    if (!detail.empty()) out << " (" << detail << ")";
    out << '\n';
}

int validate_design(const DesignSpec& spec, std::ostream& out) {
    bool ok = true;
    for (int t = 1; t <= spec.order(); ++t) {
        const auto defect = design_defect(spec.with_order(t));
        const double worst = std::max(defect.epsilon_lower, defect.epsilon_upper);
        const bool passed = worst <= 1e-9;
        ok = ok && passed;
        print_check(out, "design_t" + std::to_string(t), passed, worst, 1e-9,
                    "epsilon_lower=" + format_number(defect.epsilon_lower) +
                        " epsilon_upper=" + format_number(defect.epsilon_upper));
    }
    out << (ok ? "valid" : "invalid") << " design d=" << spec.dim() << " t=" << spec.order() << '\n';
    return ok ? kExitOk : kExitInvariant;
}

int cmd_validate(const std::string& path, std::ostream& out) {
    const auto j = io::read_file(path);
    if (j.is_object() && j.contains("atoms")) return validate_design(io::design_from_json(j), out);
    const auto file = io::measurement_from_json(j);
    const auto report = file.kind == "povm" ? DiscretePOVM::check(file.elements) : SubPOVM::check(file.elements);
    for (const auto& c : report.checks) print_check(out, c.name, c.passed, c.defect, c.tolerance, c.detail);
    if (report.ok()) {
        const SubPOVM m(file.elements);
        for (std::size_t i : negligible_generators(povm_to_zonotope(m))) {
            out << "NOTE element " << i << " has a negligible zonotope generator\n";
        }
    }
    out << (report.ok() ? "valid " : "invalid ") << file.kind << " d=" << file.dim << " n=" << file.elements.size()
        << '\n';
    return report.ok() ? kExitOk : kExitInvariant;
}

SubPOVM any_measurement(const std::string& path) {
    const auto file = io::measurement_from_json(io::read_file(path));
    if (file.kind == "povm") return SubPOVM(DiscretePOVM(file.elements));
    return SubPOVM(file.elements);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"POVM distinguishability norms, zonotopes and sparsification", "povmsparse"};
    app.set_version_flag("--version", std::string(POVMSPARSE_VERSION));
    app.require_subcommand(1);

    // validate
    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a POVM, sub-POVM or design file");
    validate->add_option("path", validate_path, "JSON file")->required();

    // norm
    std::string delta_path, norm_povm_path;
    bool norm_uniform = false;
    std::vector<std::size_t> norm_dims;
    std::size_t norm_samples = 100000, workers = 1;
    std::uint64_t norm_seed = 0;
    auto* norm = app.add_subcommand("norm", "Evaluate norms of a Hermitian operator");
    norm->add_option("--delta", delta_path, "Operator JSON file {\"d\", \"m\"}")->required();
    norm->add_option("--povm", norm_povm_path, "Measurement file for the distinguishability norm");
    norm->add_flag("--uniform", norm_uniform, "Also estimate the (local) uniform norm");
    norm->add_option("--dims", norm_dims, "Local dimensions, comma separated")->delimiter(',');
    norm->add_option("--samples", norm_samples, "Monte Carlo samples");
    norm->add_option("--seed", norm_seed, "Seed for the estimate");
    norm->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);

    // random-povm
    std::size_t rp_d = 0, rp_n = 0;
    std::uint64_t seed = 0;
    std::string out_path;
    auto* rp = app.add_subcommand("random-povm", "Sample a renormalized random POVM");
    rp->add_option("--dims", rp_d, "Dimension d")->required();
    rp->add_option("--n", rp_n, "Number of outcomes")->required();
    rp->add_option("--seed", seed, "Seed")->required();
    rp->add_option("--out", out_path, "Output file (default stdout)");

    // sparsify
    std::string sp_path, report_path, reweighting = "second_moment";
    std::size_t budget = 0, directions = 100;
    double epsilon = 0.25, multiplier = 40.0;
    auto* sp = app.add_subcommand("sparsify", "Sparsify a POVM into a weighted sub-POVM");
    sp->add_option("path", sp_path, "POVM JSON file")->required();
    sp->add_option("--budget", budget, "Number of draws (default multiplier * d^2 / epsilon^2, below n)");
    sp->add_option("--epsilon", epsilon, "Target accuracy in (0, 1)");
    sp->add_option("--multiplier", multiplier, "Constant in the default budget");
    sp->add_option("--directions", directions, "Verification directions");
    sp->add_option("--reweighting", reweighting, "second_moment or multiplicity")
        ->check(CLI::IsMember({"second_moment", "multiplicity"}));
    sp->add_option("--seed", seed, "Seed")->required();
    sp->add_option("--out", out_path, "Sub-POVM output file (default stdout)");
    sp->add_option("--report", report_path, "Ratio report output file");

    // tensor
    std::vector<std::size_t> t_dims, t_n;
    auto* tensor = app.add_subcommand("tensor", "Tensor product of per-factor random POVMs");
    tensor->add_option("--dims", t_dims, "Factor dimensions, comma separated")->required()->delimiter(',');
    tensor->add_option("--n", t_n, "Factor outcome counts, comma separated")->required()->delimiter(',');
    tensor->add_option("--seed", seed, "Seed")->required();
    tensor->add_option("--out", out_path, "Output file (default stdout)");

    // design-check
    std::string design_path;
    int design_order = 0;
    auto* dc = app.add_subcommand("design-check", "Report t-design defects of a design file");
    dc->add_option("path", design_path, "Design JSON file")->required();
    dc->add_option("--order", design_order, "Order to test (default: the file's t)");

    // experiment
    ExperimentConfig config;
    auto* ex = app.add_subcommand("experiment", "Run a named experiment and write CSV + JSON");
    ex->add_option("name", config.name, "Experiment name")->required()->check(CLI::IsMember(experiment_names()));
    ex->add_option("--seed", config.seed, "Seed (determines all randomness)")->required();
    ex->add_option("--out", out_path, "Output prefix; writes PREFIX.csv and PREFIX.json (default: CSV to stdout)");
    ex->add_option("--dims", config.dims, "Dimensions, comma separated")->delimiter(',');
    ex->add_option("--n", config.n, "Outcome counts, comma separated")->delimiter(',');
    ex->add_option("--budget", config.budget, "Sub-POVM draws");
    ex->add_option("--epsilon", config.epsilon, "Accuracy / band half-width");
    ex->add_option("--multiplier", config.multiplier, "Constant in the default budget");
    ex->add_option("--samples", config.samples, "Monte Carlo samples per estimate");
    ex->add_option("--directions", config.directions, "Directions per comparison");
    ex->add_option("--trials", config.trials, "Trials (seeds) per setting");
    ex->add_option("--q-max", config.q_max, "Highest moment order for moment-identities");
    ex->add_flag("--local", config.local, "prop4-sandwich: dims are the local factors");
    ex->add_option("--reweighting", config.reweighting, "thm4-subpovm weighting")
        ->check(CLI::IsMember({"second_moment", "multiplicity"}));
    ex->add_option("--design", config.design_path, "design-check: extra design file");
    ex->add_option("--workers", config.workers, "Worker threads (results depend on this)")->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out << POVMSPARSE_VERSION << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (validate->parsed()) return cmd_validate(validate_path, out);

        if (norm->parsed()) {
            const auto delta = io::operator_from_json(io::read_file(delta_path));
            io::Json j = io::Json::object();
            j["norm_2_1"] = norm_2_1(delta);
            if (!norm_dims.empty()) j["norm_2_k"] = norm_2_k(delta, norm_dims);
            j["trace_norm"] = trace_norm(delta);
            if (!norm_povm_path.empty()) j["dist_norm"] = dist_norm(any_measurement(norm_povm_path), delta);
            if (norm_uniform) {
                RngStream rng(norm_seed);
                j["uniform"] = io::to_json(norm_dims.empty()
                                               ? estimate_uniform_norm(delta, norm_samples, rng, workers)
                                               : estimate_local_uniform_norm(delta, norm_dims, norm_samples, rng, workers));
            }
            out << j.dump(1) << '\n';
            return kExitOk;
        }

        if (rp->parsed()) {
            RngStream rng(seed);
            emit_json(io::to_json(random_povm(rp_d, rp_n, rng)), out_path, out);
            return kExitOk;
        }

        if (sp->parsed()) {
            const auto m = io::povm_from_json(io::read_file(sp_path));
            if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("--epsilon must lie in (0, 1)");
            if (budget == 0) {
                const double d = static_cast<double>(m.dim());
                const double target = std::ceil(multiplier * d * d / (epsilon * epsilon));
                budget = static_cast<std::size_t>(std::min(target, static_cast<double>(m.size() - 1)));
            }
            RngStream rng(seed);
            SparsifyOptions options;
            if (reweighting == "multiplicity") options.reweighting = Reweighting::multiplicity;
            const auto result = sparsify_sub_povm(
                m, {.target_outcomes = budget, .epsilon = epsilon, .direction_samples = directions}, rng, options);
            emit_json(io::to_json(result.sub_povm), out_path, out);
            if (!report_path.empty()) {
                auto j = io::to_json(result.report);
                j["source_index"] = result.source_index;
                j["scale"] = result.scale;
                io::write_file(report_path, j);
            }
            err << "sparsified " << m.size() << " -> " << result.sub_povm.size() << " outcomes, ratios ["
                << format_number(result.report.min_ratio) << ", " << format_number(result.report.max_ratio) << "]\n";
            return kExitOk;
        }

        if (tensor->parsed()) {
            if (t_dims.size() != t_n.size()) throw ConfigError("--dims and --n need the same number of entries");
            std::vector<FactorSpec> factors;
            for (std::size_t i = 0; i < t_dims.size(); ++i) factors.push_back({t_dims[i], t_n[i]});
            RngStream rng(seed);
            emit_json(io::to_json(tensor_sparsify(factors, rng)), out_path, out);
            return kExitOk;
        }

        if (dc->parsed()) {
            auto spec = io::design_from_json(io::read_file(design_path));
            if (design_order > 0) spec = spec.with_order(design_order);
            return validate_design(spec, out);
        }

        if (ex->parsed()) {
            const auto rec = run_experiment(config);
            const std::string csv = rec.table.to_csv();
            if (out_path.empty()) {
                out << csv;
            } else {
                write_text(out_path + ".csv", csv);
                io::write_file(out_path + ".json", rec.json);
            }
            err << config.name << ": " << rec.table.size() << " rows, " << (rec.ok ? "ok" : "INVARIANT VIOLATED")
                << ", " << format_number(rec.seconds) << " s\n";
            return rec.ok ? kExitOk : kExitInvariant;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace povmsparse::cli
