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
#include <sstream>

#include "povmsparse/errors.hpp"

namespace povmsparse {

namespace {

constexpr double kDropTrace = 1e-12;

InvariantCheck check_dimensions(const std::vector<HermitianOperator>& elements) {
    InvariantCheck c{"consistent dimensions", true, 0.0, 0.0, ""};
    if (elements.empty()) {
        c.passed = false;
        c.detail = "no elements";
        return c;
    }
    for (const auto& e : elements) {
        if (e.dim() != elements.front().dim()) {
            c.passed = false;
            c.defect = 1.0;
            c.detail = "element dimensions differ";
        }
    }
    return c;
}

InvariantCheck check_psd(const std::vector<HermitianOperator>& elements) {
    double worst = 0.0;
    std::size_t worst_index = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const double lmin = elements[i].eigenvalues()(0);
        if (-lmin > worst) {
            worst = -lmin;
            worst_index = i;
        }
    }
    InvariantCheck c{"elements positive semidefinite", worst <= kPsdTolerance, worst, kPsdTolerance, ""};
    if (!c.passed) c.detail = "element " + std::to_string(worst_index) + " has negative eigenvalue";
    return c;
}

HermitianOperator sum_of(const std::vector<HermitianOperator>& elements) {
    ComplexMatrix s = ComplexMatrix::Zero(static_cast<Eigen::Index>(elements.front().dim()),
                                          static_cast<Eigen::Index>(elements.front().dim()));
    for (const auto& e : elements) s += e.matrix();
    return HermitianOperator(std::move(s));
}

}  // namespace

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidationReport::summary() const {
    for (const auto& c : checks) {
        if (!c.passed) {
            std::ostringstream os;
            os << c.name << " failed: defect " << c.defect << " > tolerance " << c.tolerance;
            if (!c.detail.empty()) os << " (" << c.detail << ")";
            return os.str();
        }
    }
    return "all checks passed";
}

Measurement::Measurement(std::vector<HermitianOperator> elements) : elements_(std::move(elements)) {
    dim_ = elements_.front().dim();
    const auto entries = static_cast<Eigen::Index>(2 * dim_ * dim_);
    packed_.resize(static_cast<Eigen::Index>(elements_.size()), entries);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        packed_.row(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const RealVector>(reinterpret_cast<const double*>(elements_[i].matrix().data()), entries)
                .transpose();
    }
}

HermitianOperator Measurement::total() const { return sum_of(elements_); }

RealVector Measurement::outcome_weights(const HermitianOperator& delta) const {
    if (delta.dim() != dim_) {
        throw DimensionMismatch("operator dimension " + std::to_string(delta.dim()) +
                                " does not match measurement dimension " + std::to_string(dim_));
    }
    Eigen::Map<const RealVector> x(reinterpret_cast<const double*>(delta.matrix().data()), packed_.cols());
    return packed_ * x;
}

ValidationReport DiscretePOVM::check(const std::vector<HermitianOperator>& elements) {
    ValidationReport report;
    report.checks.push_back(check_dimensions(elements));
    if (!report.ok()) return report;
    report.checks.push_back(check_psd(elements));
    const double defect = operator_norm(sum_of(elements) - HermitianOperator::identity(elements.front().dim()));
    report.checks.push_back({"sum equals identity", defect <= kCompletenessTolerance, defect,
                             kCompletenessTolerance, ""});
    return report;
}

DiscretePOVM::DiscretePOVM(std::vector<HermitianOperator> elements)
    : Measurement([&] {
          const auto report = check(elements);
          if (!report.ok()) throw InvalidPovm("invalid POVM: " + report.summary());
          return std::move(elements);
      }()) {}

DiscretePOVM DiscretePOVM::computational_basis(std::size_t d) {
    std::vector<HermitianOperator> elements;
    for (std::size_t i = 0; i < d; ++i) elements.push_back(PureState::basis(d, i).projector());
    return DiscretePOVM(std::move(elements));
}

DiscretePOVM DiscretePOVM::trivial(std::size_t d) { return DiscretePOVM({HermitianOperator::identity(d)}); }

ValidationReport SubPOVM::check(const std::vector<HermitianOperator>& elements) {
    ValidationReport report;
    report.checks.push_back(check_dimensions(elements));
    if (!report.ok()) return report;
    report.checks.push_back(check_psd(elements));
    const double excess = std::max(0.0, sum_of(elements).eigenvalues().maxCoeff() - 1.0);
    report.checks.push_back({"sum dominated by identity", excess <= kCompletenessTolerance, excess,
                             kCompletenessTolerance, ""});
    return report;
}

SubPOVM::SubPOVM(std::vector<HermitianOperator> elements)
    : Measurement([&] {
          const auto report = check(elements);
          if (!report.ok()) throw InvalidPovm("invalid sub-POVM: " + report.summary());
          return std::move(elements);
      }()) {}

StateMeasure::StateMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw InvalidArgument("state measure needs at least one atom");
    double total = 0.0;
    for (const auto& a : atoms_) {
        if (!(a.weight >= 0.0)) throw InvalidArgument("state measure has a negative weight");
        if (a.state.dim() != dim()) throw DimensionMismatch("state measure atoms of different dimensions");
        total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw InvalidArgument("state measure weights sum to " + std::to_string(total));
    }
    const auto d = dim();
    const double defect =
        operator_norm(barycenter() - HermitianOperator::identity(d) * (1.0 / static_cast<double>(d)));
    if (defect > 1e-9) {
        throw BarycenterViolation("barycenter differs from Id/d by " + std::to_string(defect));
    }
}

HermitianOperator StateMeasure::barycenter() const {
    HermitianOperator b = HermitianOperator::zero(dim());
    for (const auto& a : atoms_) b = b + a.state.op() * a.weight;
    return b;
}

double dist_norm(const Measurement& m, const HermitianOperator& delta) {
    return m.outcome_weights(delta).cwiseAbs().sum();
}

double discrimination_error(const DiscretePOVM& m, const DensityState& rho, const DensityState& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionMismatch("discrimination_error: state dimensions differ");
    const double bias = dist_norm(m, rho.op() - sigma.op());
    return 0.5 * (1.0 - 0.5 * bias);
}

std::size_t span_dimension(const Measurement& m) {
    const auto d = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(m.size()), 2 * d * d);
    for (std::size_t i = 0; i < m.size(); ++i) {
        rows.row(static_cast<Eigen::Index>(i)) =
            Eigen::Map<const RealVector>(reinterpret_cast<const double*>(m[i].matrix().data()), 2 * d * d)
                .transpose();
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(rows);
    const RealVector& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    return static_cast<std::size_t>((s.array() > 1e-9 * s(0)).count());
}

bool is_informationally_complete(const Measurement& m) { return span_dimension(m) == m.dim() * m.dim(); }

StateMeasureConversion to_state_measure(const DiscretePOVM& m) {
    const double d = static_cast<double>(m.dim());
    std::vector<StateMeasure::Atom> atoms;
    std::vector<std::size_t> source;
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double tr = m[i].trace();
        if (tr < kDropTrace) {
            ++dropped;
            continue;
        }
        atoms.push_back({tr / d, DensityState(m[i] * (1.0 / tr))});
        source.push_back(i);
    }
    // Renormalize away the trace of dropped elements (at most n * 1e-12).
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    for (auto& a : atoms) a.weight /= total;
    return {StateMeasure(std::move(atoms)), std::move(source), dropped};
}

DiscretePOVM from_state_measure(const StateMeasure& mu) {
    const double d = static_cast<double>(mu.dim());
    std::vector<HermitianOperator> elements;
    elements.reserve(mu.atoms().size());
    for (const auto& a : mu.atoms()) elements.push_back(a.state.op() * (d * a.weight));
    return DiscretePOVM(std::move(elements));
}

DiscretePOVM tensor_povm(const DiscretePOVM& m, const DiscretePOVM& n) {
    std::vector<HermitianOperator> elements;
    elements.reserve(m.size() * n.size());
    for (const auto& a : m.elements()) {
        for (const auto& b : n.elements()) elements.push_back(kron(a, b));
    }
    return DiscretePOVM(std::move(elements));
}

}  // namespace povmsparse
