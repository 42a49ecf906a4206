#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vartree {

// A single typed value in a column. Missing is its own state, never an empty
// string or a sentinel number. Numeric cells are always finite: constructing
// one from a non-finite value yields a missing cell.
class Cell {
public:
    enum class Kind : std::uint8_t { Missing, Categorical, Numeric, Boolean };

    Cell() = default;

    static Cell missing() { return Cell(); }
    static Cell categorical(std::string text);
    static Cell numeric(double value);
    static Cell boolean(bool value);

    Kind kind() const { return kind_; }
    bool is_missing() const { return kind_ == Kind::Missing; }

    const std::string& text() const { return text_; }  // Categorical only
    double number() const { return number_; }          // Numeric only
    bool truth() const { return truth_; }              // Boolean only

    // Display form: Categorical text as-is, numbers without trailing zeros,
    // booleans as "true"/"false", missing as "NA".
    std::string display() const;

    bool operator==(const Cell& other) const;
    bool operator!=(const Cell& other) const { return !(*this == other); }

private:
    Kind kind_ = Kind::Missing;
    bool truth_ = false;
    double number_ = 0.0;
    std::string text_;
};

// Strict numeric literal: optional sign, integer/decimal digits, optional
// exponent. No locale separators, no inf/nan spellings, no surrounding space.
bool is_numeric_literal(std::string_view token);

// Parses a numeric literal; nullopt if the grammar does not match or the
// value is not finite.
std::optional<double> parse_number(std::string_view token);

// Shortest decimal text that round-trips the value ("7.25", "50", "1e+300").
std::string format_number(double value);

// Fixed-point with `digits` decimals, ties rounded away from zero
// ("half-up" for the non-negative values this library prints).
std::string format_fixed(double value, int digits);

}  // namespace vartree
