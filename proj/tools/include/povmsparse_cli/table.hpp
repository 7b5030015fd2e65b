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

#ifndef POVMSPARSE_CLI_TABLE_HPP
#define POVMSPARSE_CLI_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace povmsparse::cli {

/// Shortest round-trip decimal form of `x` (locale independent).
std::string format_number(double x);
std::string format_number(std::uint64_t x);

/// A CSV table whose rows are written in (group, trial, index) order.
class Table {
   public:
    explicit Table(std::vector<std::string> columns);

    struct Key {
        std::uint64_t group = 0;
        std::uint64_t trial = 0;
        std::uint64_t index = 0;
        auto operator<=>(const Key&) const = default;
    };

    /// Appends a row; the cell count must match the column count.
    void add(Key key, std::vector<std::string> cells);

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] std::size_t size() const { return rows_.size(); }
    /// Cell `column` of the k-th row in sorted order.
    [[nodiscard]] const std::string& cell(std::size_t k, const std::string& column) const;

    /// Sorted rows as CSV text with a header line.
    [[nodiscard]] std::string to_csv() const;

   private:
    struct Row {
        Key key;
        std::vector<std::string> cells;
    };
    void sort() const;

    std::vector<std::string> columns_;
    mutable std::vector<Row> rows_;
    mutable bool sorted_ = true;
};

}  // namespace povmsparse::cli

#endif  // POVMSPARSE_CLI_TABLE_HPP
