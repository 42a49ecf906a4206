#include "vartree/cell.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace vartree {

Cell Cell::categorical(std::string text) {
    Cell c;
    c.kind_ = Kind::Categorical;
    c.text_ = std::move(text);
    return c;
}

Cell Cell::numeric(double value) {
    if (!std::isfinite(value)) return missing();
    Cell c;
    c.kind_ = Kind::Numeric;
    c.number_ = value;
    return c;
}

Cell Cell::boolean(bool value) {
    Cell c;
    c.kind_ = Kind::Boolean;
    c.truth_ = value;
    return c;
}

std::string Cell::display() const {
    switch (kind_) {
        case Kind::Missing: return "NA";
        case Kind::Categorical: return text_;
        case Kind::Numeric: return format_number(number_);
        case Kind::Boolean: return truth_ ? "true" : "false";
    }
    return "NA";
}

bool Cell::operator==(const Cell& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
        case Kind::Missing: return true;
        case Kind::Categorical: return text_ == other.text_;
        case Kind::Numeric: return number_ == other.number_;
        case Kind::Boolean: return truth_ == other.truth_;
    }
    return false;
}

bool is_numeric_literal(std::string_view token) {
    std::size_t i = 0;
    const std::size_t n = token.size();
    if (i < n && (token[i] == '+' || token[i] == '-')) ++i;
    std::size_t int_digits = 0;
    while (i < n && token[i] >= '0' && token[i] <= '9') { ++i; ++int_digits; }
    std::size_t frac_digits = 0;
    if (i < n && token[i] == '.') {
        ++i;
        while (i < n && token[i] >= '0' && token[i] <= '9') { ++i; ++frac_digits; }
    }
    if (int_digits + frac_digits == 0) return false;
    if (i < n && (token[i] == 'e' || token[i] == 'E')) {
        ++i;
        if (i < n && (token[i] == '+' || token[i] == '-')) ++i;
        std::size_t exp_digits = 0;
        while (i < n && token[i] >= '0' && token[i] <= '9') { ++i; ++exp_digits; }
        if (exp_digits == 0) return false;
    }
    return i == n;
}

std::optional<double> parse_number(std::string_view token) {
    if (!is_numeric_literal(token)) return std::nullopt;
    std::string_view body = token;
    bool negate = false;
    if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
        negate = body[0] == '-';
        body.remove_prefix(1);
    }
    double value = 0.0;
    auto result = std::from_chars(body.data(), body.data() + body.size(), value);
    if (result.ec != std::errc() || result.ptr != body.data() + body.size()) return std::nullopt;
    if (negate) value = -value;
    if (!std::isfinite(value)) return std::nullopt;
    return value;
}

std::string format_number(double value) {
    char buf[64];
    auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

std::string format_fixed(double value, int digits) {
    if (digits < 0) digits = 0;
    double scale = 1.0;
    for (int i = 0; i < digits; ++i) scale *= 10.0;
    const double scaled = value * scale;
    if (std::fabs(scaled) >= 9.0e15) {  // llround range guard
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
        return buf;
    }
    long long units = std::llround(scaled);
    bool negative = units < 0;
    unsigned long long magnitude =
        negative ? static_cast<unsigned long long>(-(units + 1)) + 1ULL
                 : static_cast<unsigned long long>(units);
    std::string digits_text = std::to_string(magnitude);
    if (static_cast<int>(digits_text.size()) <= digits) {
        digits_text.insert(0, static_cast<std::size_t>(digits) + 1 - digits_text.size(), '0');
    }
    std::string out;
    if (negative) out.push_back('-');
    out.append(digits_text, 0, digits_text.size() - digits);
    if (digits > 0) {
        out.push_back('.');
        out.append(digits_text, digits_text.size() - digits, std::string::npos);
    }
    return out;
}

}  // namespace vartree
