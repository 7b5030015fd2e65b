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

#ifndef POVMSPARSE_POVM_HPP
#define POVMSPARSE_POVM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "povmsparse/operator.hpp"

namespace povmsparse {

inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-9;

/// One invariant with its measured defect.
struct InvariantCheck {
    std::string name;
    bool passed = false;
    double defect = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<InvariantCheck> checks;
    [[nodiscard]] bool ok() const;
    /// First failing check, formatted for an error message.
    [[nodiscard]] std::string summary() const;
};

/// Finite list of PSD operators on C^d. Common storage of DiscretePOVM and
/// SubPOVM; the element entries are also kept packed as real rows so that
/// tr(Delta M_i) for all i is a single matrix-vector product.
class Measurement {
   public:
    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return elements_.size(); }
    [[nodiscard]] const std::vector<HermitianOperator>& elements() const { return elements_; }
    [[nodiscard]] const HermitianOperator& operator[](std::size_t i) const { return elements_[i]; }
    /// Sum of all elements.
    [[nodiscard]] HermitianOperator total() const;
    /// (tr(Delta M_i))_i
    [[nodiscard]] RealVector outcome_weights(const HermitianOperator& delta) const;

   protected:
    explicit Measurement(std::vector<HermitianOperator> elements);

   private:
    std::size_t dim_ = 0;
    std::vector<HermitianOperator> elements_;
    Eigen::MatrixXd packed_;
};

/// PSD elements summing to the identity.
class DiscretePOVM : public Measurement {
   public:
    /// Throws InvalidPovm when check() fails.
    explicit DiscretePOVM(std::vector<HermitianOperator> elements);
    static ValidationReport check(const std::vector<HermitianOperator>& elements);

    /// Projective measurement in the computational basis of C^d.
    static DiscretePOVM computational_basis(std::size_t d);
    /// The one-outcome POVM (Id).
    static DiscretePOVM trivial(std::size_t d);
};

/// PSD elements whose sum is dominated by the identity.
class SubPOVM : public Measurement {
   public:
    explicit SubPOVM(std::vector<HermitianOperator> elements);
    explicit SubPOVM(const DiscretePOVM& povm) : SubPOVM(povm.elements()) {}
    static ValidationReport check(const std::vector<HermitianOperator>& elements);
};

/// Probability measure on states with barycenter Id/d.
class StateMeasure {
   public:
    struct Atom {
        double weight;
        DensityState state;
    };

    /// Throws InvalidArgument for negative weights or weights not summing to
    /// one, BarycenterViolation when the barycenter differs from Id/d by more
    /// than 1e-9 in operator norm.
    explicit StateMeasure(std::vector<Atom> atoms);

    [[nodiscard]] std::size_t dim() const { return atoms_.front().state.dim(); }
    [[nodiscard]] const std::vector<Atom>& atoms() const { return atoms_; }
    [[nodiscard]] HermitianOperator barycenter() const;

   private:
    std::vector<Atom> atoms_;
};

/// sum_i |tr(Delta M_i)|
double dist_norm(const Measurement& m, const HermitianOperator& delta);

/// Probability of a wrong guess when rho and sigma are equiprobable and the
/// outcomes of `m` are post-processed optimally.
double discrimination_error(const DiscretePOVM& m, const DensityState& rho, const DensityState& sigma);

/// True iff the elements span the full d^2-dimensional real space of
/// Hermitian operators (singular values above 1e-9 times the largest).
bool is_informationally_complete(const Measurement& m);
/// Dimension of the real span of the elements.
std::size_t span_dimension(const Measurement& m);

struct StateMeasureConversion {
    StateMeasure measure;
    /// Element index of `m` behind each atom.
    std::vector<std::size_t> source_index;
    /// Number of elements dropped for having trace below 1e-12.
    std::size_t dropped = 0;
};

StateMeasureConversion to_state_measure(const DiscretePOVM& m);
DiscretePOVM from_state_measure(const StateMeasure& mu);

/// Elements M_i (x) N_j, ordered with i major.
DiscretePOVM tensor_povm(const DiscretePOVM& m, const DiscretePOVM& n);

}  // namespace povmsparse

#endif  // POVMSPARSE_POVM_HPP
