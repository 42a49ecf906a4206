#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vartree/cell.hpp"

namespace vartree {

using RowIndex = std::uint32_t;

enum class ColumnKind : std::uint8_t { Categorical, Numeric, Boolean };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Categorical;
    std::vector<Cell> cells;
};

// Immutable after construction; row order is significant and preserved.
struct Dataset {
    std::vector<Column> columns;
    std::size_t n_rows = 0;

    const Column* find_column(std::string_view name) const;
};

inline const std::set<std::string>& default_missing_tokens() {
    static const std::set<std::string> tokens = {"", "NA"};
    return tokens;
}

// RFC-4180-style CSV with a header row. Columns are typed by inference:
// numeric if every non-missing token is a numeric literal; boolean if every
// non-missing token is one of true/false/TRUE/FALSE/0/1 and at least one of
// them is not numeric-looking; categorical otherwise. Tokens found in
// `missing_tokens` become missing cells.
Dataset load_csv(const std::string& path,
                 const std::set<std::string>& missing_tokens = default_missing_tokens());
Dataset load_csv_text(std::string_view text,
                      const std::set<std::string>& missing_tokens = default_missing_tokens());

// Inverse of load_csv for round-trips: missing cells are written as
// `missing_token`, fields are quoted only when they need to be.
std::string write_csv_text(const Dataset& data, const std::string& missing_token = "NA");

struct PatternRow {
    std::vector<Cell> values;
    long long count = 0;  // must be non-negative
};

// Builds a dataset from distinct value patterns with multiplicities: each
// pattern row is replicated `count` times, patterns in given order, each
// pattern's rows contiguous.
Dataset build_from_patterns(const std::vector<std::string>& names,
                            const std::vector<PatternRow>& patterns);

// Per-subset statistics over one column. Numeric statistics cover non-missing
// values only and are absent ("no data") when there are none; the sample SD
// additionally needs at least two values. Quartiles interpolate linearly
// between order statistics.
struct StatBundle {
    std::size_t n = 0;
    std::size_t n_missing = 0;
    std::optional<double> mean;
    std::optional<double> sd;
    std::optional<double> sum;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<double> median;
    std::optional<double> q1;
    std::optional<double> q3;
    // Distinct non-missing values in first-appearance order, with counts.
    std::vector<std::pair<std::string, std::size_t>> freq;
    // Every cell of the subset, in row order (missing included).
    std::vector<Cell> values;
};

StatBundle subset_stats(const Column& column, const std::vector<RowIndex>& rows);

}  // namespace vartree
