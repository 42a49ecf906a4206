#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vartree {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with input data: unreadable files, malformed CSV, bad pattern rows.
// The CLI maps these to exit code 1.
class DataError : public Error {
public:
    explicit DataError(const std::string& msg) : Error(msg) {}
};

class CsvError : public DataError {
public:
    enum class Kind {
        UnreadableFile,
        MissingHeader,
        DuplicateHeader,
        RaggedRow,
        BadQuoting,
    };

    CsvError(Kind kind, const std::string& msg, std::size_t row = 0, std::size_t column = 0)
        : DataError(msg), kind_(kind), row_(row), column_(column) {}

    Kind kind() const { return kind_; }
    std::size_t row() const { return row_; }       // 1-based, 0 = not applicable
    std::size_t column() const { return column_; } // 1-based, 0 = not applicable

private:
    Kind kind_;
    std::size_t row_;
    std::size_t column_;
};

class PatternError : public DataError {
public:
    explicit PatternError(const std::string& msg) : DataError(msg) {}
};

// Problems with user-written specification strings (variable specs, summary
// templates, prune specs) or their application to a dataset. Exit code 2.
class SpecError : public Error {
public:
    explicit SpecError(const std::string& msg) : Error(msg) {}
};

}  // namespace vartree
