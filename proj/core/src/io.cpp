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

#include "povmsparse/io.hpp"

#include <fstream>
#include <sstream>

#include "povmsparse/errors.hpp"

namespace povmsparse::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ParseError("field '" + path + "': " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

double number(const Json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

std::size_t positive_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 1) fail(path, "expected a positive integer");
    return j.get<std::size_t>();
}

Complex complex_entry(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < std::min(offset, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

Json parse(std::string_view text, std::string_view source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // byte is one past the offending character
        const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        std::ostringstream os;
        os << source << ":" << line << ":" << column << ": invalid JSON";
        throw ParseError(os.str());
    }
}

Json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str(), path.string());
}

void write_file(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path);
    if (!out) throw Error(path.string() + ": cannot open for writing");
    out << value.dump(1) << '\n';
}

Json to_json(const HermitianOperator& a) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < a.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < a.dim(); ++c) row.push_back(complex_to_json(a(r, c)));
        rows.push_back(std::move(row));
    }
    return {{"d", a.dim()}, {"m", std::move(rows)}};
}

HermitianOperator operator_from_json(const Json& j, const std::string& path) {
    const std::size_t d = positive_int(field(j, "d", path), path + ".d");
    const Json& m = field(j, "m", path);
    if (!m.is_array() || m.size() != d) fail(path + ".m", "expected " + std::to_string(d) + " rows");
    const auto n = static_cast<Eigen::Index>(d);
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < d; ++r) {
        const std::string row_path = path + ".m[" + std::to_string(r) + "]";
        if (!m[r].is_array() || m[r].size() != d) fail(row_path, "expected " + std::to_string(d) + " entries");
        for (std::size_t c = 0; c < d; ++c) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_entry(m[r][c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    try {
        return HermitianOperator(std::move(a));
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

namespace {

Json measurement_to_json(const Measurement& m, const char* kind) {
    Json elements = Json::array();
    for (const auto& e : m.elements()) elements.push_back(to_json(e));
    return {{"d", m.dim()}, {"elements", std::move(elements)}, {"kind", kind}};
}

}  // namespace

Json to_json(const DiscretePOVM& m) { return measurement_to_json(m, "povm"); }
Json to_json(const SubPOVM& m) { return measurement_to_json(m, "subpovm"); }

MeasurementFile measurement_from_json(const Json& j) {
    MeasurementFile file;
    file.dim = positive_int(field(j, "d", "$"), "$.d");
    const Json& kind = field(j, "kind", "$");
    if (!kind.is_string() || (kind != "povm" && kind != "subpovm")) fail("$.kind", "expected \"povm\" or \"subpovm\"");
    file.kind = kind.get<std::string>();
    const Json& elements = field(j, "elements", "$");
    if (!elements.is_array() || elements.empty()) fail("$.elements", "expected a non-empty array");
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const std::string path = "$.elements[" + std::to_string(i) + "]";
        auto op = operator_from_json(elements[i], path);
        if (op.dim() != file.dim) fail(path + ".d", "element dimension differs from $.d");
        file.elements.push_back(std::move(op));
    }
    return file;
}

DiscretePOVM povm_from_json(const Json& j) { return DiscretePOVM(measurement_from_json(j).elements); }

SubPOVM sub_povm_from_json(const Json& j) { return SubPOVM(measurement_from_json(j).elements); }

Json to_json(const SymmetricZonotope& z) {
    Json gens = Json::array();
    for (std::size_t i = 0; i < z.size(); ++i) {
        const RealVector g = z.generator(i);
        gens.push_back(std::vector<double>(g.data(), g.data() + g.size()));
    }
    return {{"n", z.ambient_dim()}, {"gens", std::move(gens)}};
}

SymmetricZonotope zonotope_from_json(const Json& j) {
    const std::size_t n = positive_int(field(j, "n", "$"), "$.n");
    const Json& gens = field(j, "gens", "$");
    if (!gens.is_array()) fail("$.gens", "expected an array");
    std::vector<RealVector> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::string path = "$.gens[" + std::to_string(i) + "]";
        if (!gens[i].is_array() || gens[i].size() != n) fail(path, "expected " + std::to_string(n) + " numbers");
        RealVector g(static_cast<Eigen::Index>(n));
        for (std::size_t k = 0; k < n; ++k) g(static_cast<Eigen::Index>(k)) = number(gens[i][k], path);
        out.push_back(std::move(g));
    }
    return SymmetricZonotope(n, std::move(out));
}

Json to_json(const NormEstimate& e) { return {{"value", e.value}, {"stderr", e.std_error}, {"n", e.samples}}; }

NormEstimate estimate_from_json(const Json& j) {
    return {number(field(j, "value", "$"), "$.value"), number(field(j, "stderr", "$"), "$.stderr"),
            positive_int(field(j, "n", "$"), "$.n")};
}

Json to_json(const DesignSpec& spec) {
    Json atoms = Json::array();
    for (const auto& a : spec.atoms()) {
        Json psi = Json::array();
        for (Eigen::Index i = 0; i < a.psi.amplitudes().size(); ++i) psi.push_back(complex_to_json(a.psi.amplitudes()(i)));
        atoms.push_back({{"w", a.weight}, {"psi", std::move(psi)}});
    }
    return {{"d", spec.dim()}, {"t", spec.order()}, {"atoms", std::move(atoms)}};
}

DesignSpec design_from_json(const Json& j) {
    const std::size_t d = positive_int(field(j, "d", "$"), "$.d");
    const auto t = static_cast<int>(positive_int(field(j, "t", "$"), "$.t"));
    const Json& atoms = field(j, "atoms", "$");
    if (!atoms.is_array() || atoms.empty()) fail("$.atoms", "expected a non-empty array");
    std::vector<DesignSpec::Atom> out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::string path = "$.atoms[" + std::to_string(i) + "]";
        const double w = number(field(atoms[i], "w", path), path + ".w");
        const Json& psi = field(atoms[i], "psi", path);
        if (!psi.is_array() || psi.size() != d) fail(path + ".psi", "expected " + std::to_string(d) + " amplitudes");
        ComplexVector v(static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) {
            v(static_cast<Eigen::Index>(k)) = complex_entry(psi[k], path + ".psi[" + std::to_string(k) + "]");
        }
        try {
            out.push_back({w, PureState(std::move(v))});
        } catch (const Error& e) {
            fail(path + ".psi", e.what());
        }
    }
    try {
        return DesignSpec(d, t, std::move(out));
    } catch (const Error& e) {
        fail("$", e.what());
    }
}

Json to_json(const RatioReport& report) {
    Json records = Json::array();
    for (const auto& r : report.records) {
        records.push_back({{"substream", r.substream},
                           {"norm", r.norm},
                           {"reference", r.reference},
                           {"reference_stderr", r.reference_std_error},
                           {"ratio", r.ratio},
                           {"ratio_stderr", r.ratio_std_error},
                           {"verdict", to_string(r.verdict)}});
    }
    return {{"reference", report.reference_label},
            {"directions_tested", report.directions_tested},
            {"min_ratio", report.min_ratio},
            {"max_ratio", report.max_ratio},
            {"band", {report.band.lower, report.band.upper}},
            {"violations", report.violations},
            {"inconclusive", report.inconclusive},
            {"stream_key", report.stream_key},
            {"records", std::move(records)}};
}

}  // namespace povmsparse::io
