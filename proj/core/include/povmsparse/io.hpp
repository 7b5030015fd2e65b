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

#ifndef POVMSPARSE_IO_HPP
#define POVMSPARSE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "povmsparse/designs.hpp"
#include "povmsparse/operator.hpp"
#include "povmsparse/povm.hpp"
#include "povmsparse/sparsify.hpp"
#include "povmsparse/uniform.hpp"
#include "povmsparse/zonoid.hpp"

namespace povmsparse::io {

using Json = nlohmann::json;

/// Parses JSON text; syntax errors become ParseError with line and column.
Json parse(std::string_view text, std::string_view source = "<input>");
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& value);

// {"d": int, "m": [[[re, im], ...], ...]}, row-major.
Json to_json(const HermitianOperator& a);
HermitianOperator operator_from_json(const Json& j, const std::string& path = "$");

/// Element list as read from a POVM file, before any invariant is checked.
struct MeasurementFile {
    std::string kind;  // "povm" or "subpovm"
    std::size_t dim = 0;
    std::vector<HermitianOperator> elements;
};

// {"d": int, "elements": [operator, ...], "kind": "povm" | "subpovm"}
Json to_json(const DiscretePOVM& m);
Json to_json(const SubPOVM& m);
MeasurementFile measurement_from_json(const Json& j);
/// Throws InvalidPovm if the file does not describe a valid POVM.
DiscretePOVM povm_from_json(const Json& j);
SubPOVM sub_povm_from_json(const Json& j);

// {"n": ambient_dim, "gens": [[float, ...], ...]}
Json to_json(const SymmetricZonotope& z);
SymmetricZonotope zonotope_from_json(const Json& j);

// {"value": float, "stderr": float, "n": int}
Json to_json(const NormEstimate& e);
NormEstimate estimate_from_json(const Json& j);

// {"d": int, "t": int, "atoms": [{"w": float, "psi": [[re, im], ...]}, ...]}
Json to_json(const DesignSpec& spec);
DesignSpec design_from_json(const Json& j);

Json to_json(const RatioReport& report);

}  // namespace povmsparse::io

#endif  // POVMSPARSE_IO_HPP
