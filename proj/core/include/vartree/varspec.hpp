#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vartree/dataset.hpp"

namespace vartree {

enum class Relation : std::uint8_t { Less, Equal, Greater };

// One parsed layer specification. Grammar, per token:
//   "is.na:" name         -> missing-value indicator
//   name ('<'|'='|'>') op -> dichotomy ('<'/'>' need a numeric operand)
//   name                  -> the variable itself
struct VarTerm {
    enum class Kind : std::uint8_t { Plain, MissingIndicator, Dichotomy };

    Kind kind = Kind::Plain;
    std::string column;
    Relation relation = Relation::Equal;        // Dichotomy only
    std::string operand_text;                   // Dichotomy only, raw spelling
    std::optional<double> operand_number;       // set when operand_text parses

    static VarTerm plain(std::string column);
    static VarTerm missing_indicator(std::string column);
    static VarTerm dichotomy(std::string column, Relation relation, std::string operand_text);

    // The raw spec token this term prints back to ("fare>50", "is.na:fare").
    std::string token() const;

    bool operator==(const VarTerm& other) const;
};

// Splits a spec string on whitespace runs and parses each token, preserving
// order. Throws SpecError for an empty spec, a dangling operator, or a
// relational operand that is not numeric.
std::vector<VarTerm> parse_varspec(std::string_view spec);

// A term applied to a dataset: a derived column of categorical/missing cells.
struct LayerColumn {
    VarTerm source_term;
    std::string display_name;
    std::vector<Cell> cells;  // Categorical or Missing only
};

// Derives the layer column for one term:
//   Plain             -> cells stringified, missing preserved
//   MissingIndicator  -> "missing"/"not missing", never a missing cell
//   Dichotomy > x     -> ">x" / "<=x"   (missing stays missing)
//   Dichotomy < x     -> "<x" / ">=x"
//   Dichotomy = v     -> "v" / "not v"
LayerColumn materialize(const VarTerm& term, const Dataset& data);

}  // namespace vartree
