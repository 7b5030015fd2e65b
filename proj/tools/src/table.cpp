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

#include "povmsparse_cli/table.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "povmsparse/errors.hpp"

namespace povmsparse::cli {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

std::string format_number(std::uint64_t x) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return {buf.data(), res.ptr};
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(Key key, std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw InvalidArgument("table row has " + std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(columns_.size()));
    }
    rows_.push_back({key, std::move(cells)});
    sorted_ = false;
}

void Table::sort() const {
    if (sorted_) return;
    std::stable_sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.key < b.key; });
    sorted_ = true;
}

const std::string& Table::cell(std::size_t k, const std::string& column) const {
    sort();
    const auto it = std::find(columns_.begin(), columns_.end(), column);
    if (it == columns_.end()) throw InvalidArgument("no column named '" + column + "'");
    return rows_.at(k).cells[static_cast<std::size_t>(it - columns_.begin())];
}

std::string Table::to_csv() const {
    sort();
    std::string out;
    auto write_line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    write_line(columns_);
    for (const auto& r : rows_) write_line(r.cells);
    return out;
}

}  // namespace povmsparse::cli
