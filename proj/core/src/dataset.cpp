#include "vartree/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vartree/errors.hpp"

namespace vartree {

namespace {

// Raw CSV records (unquoted field texts), header included.
std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool record_started = false;
    std::size_t record_no = 1;
    std::size_t char_in_record = 1;

    // Strip a UTF-8 BOM if present.
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
        record_started = false;
        ++record_no;
        char_in_record = 1;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            ++char_in_record;
            continue;
        }
        switch (c) {
            case '"':
                if (field.empty() && !field_was_quoted) {
                    in_quotes = true;
                    field_was_quoted = true;
                    record_started = true;
                } else {
                    throw CsvError(CsvError::Kind::BadQuoting,
                                   "stray quote in record " + std::to_string(record_no) +
                                       " near character " + std::to_string(char_in_record),
                                   record_no, char_in_record);
                }
                break;
            case ',':
                end_field();
                record_started = true;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                end_record();
                break;
            case '\n':
                end_record();
                break;
            default:
                if (field_was_quoted) {
                    throw CsvError(CsvError::Kind::BadQuoting,
                                   "text after closing quote in record " + std::to_string(record_no) +
                                       " near character " + std::to_string(char_in_record),
                                   record_no, char_in_record);
                }
                field.push_back(c);
                record_started = true;
                break;
        }
        ++char_in_record;
    }
    if (in_quotes) {
        throw CsvError(CsvError::Kind::BadQuoting,
                       "unterminated quoted field in record " + std::to_string(record_no),
                       record_no, 0);
    }
    if (record_started || !record.empty()) end_record();
    return records;
}

bool is_boolean_token(const std::string& token) {
    return token == "true" || token == "false" || token == "TRUE" || token == "FALSE" ||
           token == "0" || token == "1";
}

bool boolean_token_value(const std::string& token) {
    return token == "true" || token == "TRUE" || token == "1";
}

bool needs_csv_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_escape(const std::string& field) {
    if (!needs_csv_quoting(field)) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Quantile by linear interpolation between order statistics (type 7).
double quantile_type7(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

const Column* Dataset::find_column(std::string_view name) const {
    for (const auto& column : columns) {
        if (column.name == name) return &column;
    }
    return nullptr;
}

Dataset load_csv(const std::string& path, const std::set<std::string>& missing_tokens) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CsvError(CsvError::Kind::UnreadableFile, "cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw CsvError(CsvError::Kind::UnreadableFile, "cannot read file: " + path);
    }
    return load_csv_text(buffer.str(), missing_tokens);
}

Dataset load_csv_text(std::string_view text, const std::set<std::string>& missing_tokens) {
    const auto records = parse_csv_records(text);
    if (records.empty()) {
        throw CsvError(CsvError::Kind::MissingHeader, "empty input, expected a header row");
    }
    const auto& header = records.front();
    {
        std::unordered_set<std::string> seen;
        for (const auto& name : header) {
            if (!seen.insert(name).second) {
                throw CsvError(CsvError::Kind::DuplicateHeader,
                               "duplicate column name \"" + name + "\" in header");
            }
        }
    }
    const std::size_t n_cols = header.size();
    const std::size_t n_rows = records.size() - 1;
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != n_cols) {
            throw CsvError(CsvError::Kind::RaggedRow,
                           "row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                               " fields, expected " + std::to_string(n_cols),
                           r, 0);
        }
    }

    Dataset data;
    data.n_rows = n_rows;
    data.columns.reserve(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        Column column;
        column.name = header[c];
        column.cells.reserve(n_rows);

        bool all_numeric = true;
        bool all_boolean = true;
        bool any_non_numeric_looking = false;
        for (std::size_t r = 1; r < records.size(); ++r) {
            const std::string& token = records[r][c];
            if (missing_tokens.count(token)) continue;
            const bool numeric_looking = is_numeric_literal(token);
            if (!numeric_looking) any_non_numeric_looking = true;
            all_numeric = all_numeric && numeric_looking;
            all_boolean = all_boolean && is_boolean_token(token);
        }
        if (all_numeric) {
            column.kind = ColumnKind::Numeric;
        } else if (all_boolean && any_non_numeric_looking) {
            column.kind = ColumnKind::Boolean;
        } else {
            column.kind = ColumnKind::Categorical;
        }

        for (std::size_t r = 1; r < records.size(); ++r) {
            const std::string& token = records[r][c];
            if (missing_tokens.count(token)) {
                column.cells.push_back(Cell::missing());
                continue;
            }
            switch (column.kind) {
                case ColumnKind::Numeric: {
                    auto value = parse_number(token);
                    // Overflowing literals are numeric-looking but non-finite.
                    column.cells.push_back(value ? Cell::numeric(*value) : Cell::missing());
                    break;
                }
                case ColumnKind::Boolean:
                    column.cells.push_back(Cell::boolean(boolean_token_value(token)));
                    break;
                case ColumnKind::Categorical:
                    column.cells.push_back(Cell::categorical(token));
                    break;
            }
        }
        data.columns.push_back(std::move(column));
    }
    return data;
}

std::string write_csv_text(const Dataset& data, const std::string& missing_token) {
    std::string out;
    for (std::size_t c = 0; c < data.columns.size(); ++c) {
        if (c > 0) out.push_back(',');
        out += csv_escape(data.columns[c].name);
    }
    out.push_back('\n');
    for (std::size_t r = 0; r < data.n_rows; ++r) {
        for (std::size_t c = 0; c < data.columns.size(); ++c) {
            if (c > 0) out.push_back(',');
            const Cell& cell = data.columns[c].cells[r];
            out += cell.is_missing() ? csv_escape(missing_token) : csv_escape(cell.display());
        }
        out.push_back('\n');
    }
    return out;
}

Dataset build_from_patterns(const std::vector<std::string>& names,
                            const std::vector<PatternRow>& patterns) {
    {
        std::unordered_set<std::string> seen;
        for (const auto& name : names) {
            if (!seen.insert(name).second) {
                throw PatternError("duplicate column name \"" + name + "\"");
            }
        }
    }
    std::size_t total = 0;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        if (patterns[p].values.size() != names.size()) {
            throw PatternError("pattern row " + std::to_string(p + 1) + " has " +
                               std::to_string(patterns[p].values.size()) + " values, expected " +
                               std::to_string(names.size()));
        }
        if (patterns[p].count < 0) {
            throw PatternError("pattern row " + std::to_string(p + 1) + " has a negative count");
        }
        total += static_cast<std::size_t>(patterns[p].count);
    }

    Dataset data;
    data.n_rows = total;
    data.columns.reserve(names.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
        Column column;
        column.name = names[c];
        column.cells.reserve(total);

        std::optional<Cell::Kind> value_kind;
        for (std::size_t p = 0; p < patterns.size(); ++p) {
            const Cell& cell = patterns[p].values[c];
            if (cell.is_missing()) continue;
            if (!value_kind) {
                value_kind = cell.kind();
            } else if (*value_kind != cell.kind()) {
                throw PatternError("column \"" + names[c] + "\" mixes value types across patterns");
            }
        }
        if (value_kind == Cell::Kind::Numeric) column.kind = ColumnKind::Numeric;
        else if (value_kind == Cell::Kind::Boolean) column.kind = ColumnKind::Boolean;
        else column.kind = ColumnKind::Categorical;

        for (const auto& pattern : patterns) {
            for (long long i = 0; i < pattern.count; ++i) column.cells.push_back(pattern.values[c]);
        }
        data.columns.push_back(std::move(column));
    }
    return data;
}

StatBundle subset_stats(const Column& column, const std::vector<RowIndex>& rows) {
    StatBundle stats;
    stats.n = rows.size();
    stats.values.reserve(rows.size());

    std::vector<double> nums;
    std::unordered_map<std::string, std::size_t> freq_slot;
    for (RowIndex r : rows) {
        const Cell& cell = column.cells[r];
        stats.values.push_back(cell);
        if (cell.is_missing()) {
            ++stats.n_missing;
            continue;
        }
        const std::string label = cell.display();
        auto [it, inserted] = freq_slot.emplace(label, stats.freq.size());
        if (inserted) stats.freq.emplace_back(label, 1);
        else ++stats.freq[it->second].second;

        if (cell.kind() == Cell::Kind::Numeric) nums.push_back(cell.number());
        else if (cell.kind() == Cell::Kind::Boolean) nums.push_back(cell.truth() ? 1.0 : 0.0);
    }

    if (column.kind == ColumnKind::Categorical || nums.empty()) return stats;

    double total = 0.0;
    double lo = nums.front();
    double hi = nums.front();
    for (double v : nums) {
        total += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double mean = total / static_cast<double>(nums.size());
    stats.sum = total;
    stats.mean = mean;
    stats.min = lo;
    stats.max = hi;
    if (nums.size() >= 2) {
        double ss = 0.0;
        for (double v : nums) ss += (v - mean) * (v - mean);
        stats.sd = std::sqrt(ss / static_cast<double>(nums.size() - 1));
    }
    std::vector<double> sorted = nums;
    std::sort(sorted.begin(), sorted.end());
    stats.median = quantile_type7(sorted, 0.5);
    stats.q1 = quantile_type7(sorted, 0.25);
    stats.q3 = quantile_type7(sorted, 0.75);
    return stats;
}

}  // namespace vartree
