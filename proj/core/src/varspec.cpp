#include "vartree/varspec.hpp"

#include <cctype>

#include "vartree/errors.hpp"

namespace vartree {

namespace {

constexpr std::string_view kMissingPrefix = "is.na:";

char relation_char(Relation relation) {
    switch (relation) {
        case Relation::Less: return '<';
        case Relation::Equal: return '=';
        case Relation::Greater: return '>';
    }
    return '=';
}

VarTerm parse_term(std::string_view token) {
    if (token.substr(0, kMissingPrefix.size()) == kMissingPrefix) {
        std::string_view name = token.substr(kMissingPrefix.size());
        if (name.empty()) {
            throw SpecError("variable spec token \"" + std::string(token) + "\" names no variable");
        }
        return VarTerm::missing_indicator(std::string(name));
    }
    const std::size_t op_pos = token.find_first_of("<=>");
    if (op_pos == std::string_view::npos) {
        return VarTerm::plain(std::string(token));
    }
    if (op_pos == 0) {
        throw SpecError("variable spec token \"" + std::string(token) + "\" names no variable");
    }
    if (op_pos + 1 == token.size()) {
        throw SpecError("variable spec token \"" + std::string(token) + "\" has no operand");
    }
    const char op = token[op_pos];
    const std::string name(token.substr(0, op_pos));
    const std::string operand(token.substr(op_pos + 1));
    const Relation relation = op == '<'   ? Relation::Less
                              : op == '>' ? Relation::Greater
                                          : Relation::Equal;
    if (relation != Relation::Equal && !parse_number(operand)) {
        throw SpecError("operand \"" + operand + "\" of \"" + std::string(token) +
                        "\" must be numeric");
    }
    return VarTerm::dichotomy(name, relation, operand);
}

}  // namespace

VarTerm VarTerm::plain(std::string column) {
    VarTerm term;
    term.kind = Kind::Plain;
    term.column = std::move(column);
    return term;
}

VarTerm VarTerm::missing_indicator(std::string column) {
    VarTerm term;
    term.kind = Kind::MissingIndicator;
    term.column = std::move(column);
    return term;
}

VarTerm VarTerm::dichotomy(std::string column, Relation relation, std::string operand_text) {
    VarTerm term;
    term.kind = Kind::Dichotomy;
    term.column = std::move(column);
    term.relation = relation;
    term.operand_number = parse_number(operand_text);
    term.operand_text = std::move(operand_text);
    return term;
}

std::string VarTerm::token() const {
    switch (kind) {
        case Kind::Plain: return column;
        case Kind::MissingIndicator: return std::string(kMissingPrefix) + column;
        case Kind::Dichotomy: return column + relation_char(relation) + operand_text;
    }
    return column;
}

bool VarTerm::operator==(const VarTerm& other) const {
    return kind == other.kind && column == other.column &&
           (kind != Kind::Dichotomy ||
            (relation == other.relation && operand_text == other.operand_text));
}

std::vector<VarTerm> parse_varspec(std::string_view spec) {
    std::vector<VarTerm> terms;
    std::size_t i = 0;
    while (i < spec.size()) {
        while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
        if (i >= spec.size()) break;
        std::size_t start = i;
        while (i < spec.size() && !std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
        terms.push_back(parse_term(spec.substr(start, i - start)));
    }
    if (terms.empty()) {
        throw SpecError("variable spec is empty");
    }
    return terms;
}

LayerColumn materialize(const VarTerm& term, const Dataset& data) {
    const Column* column = data.find_column(term.column);
    if (column == nullptr) {
        throw SpecError("unknown variable \"" + term.column + "\"");
    }

    LayerColumn layer;
    layer.source_term = term;
    layer.display_name = term.token();
    layer.cells.reserve(data.n_rows);

    switch (term.kind) {
        case VarTerm::Kind::Plain:
            for (const Cell& cell : column->cells) {
                layer.cells.push_back(cell.is_missing() ? Cell::missing()
                                                        : Cell::categorical(cell.display()));
            }
            break;
        case VarTerm::Kind::MissingIndicator:
            for (const Cell& cell : column->cells) {
                layer.cells.push_back(Cell::categorical(cell.is_missing() ? "missing" : "not missing"));
            }
            break;
        case VarTerm::Kind::Dichotomy: {
            if (term.relation != Relation::Equal && column->kind != ColumnKind::Numeric) {
                throw SpecError("relational dichotomy \"" + term.token() +
                                "\" needs a numeric variable");
            }
            for (const Cell& cell : column->cells) {
                if (cell.is_missing()) {
                    layer.cells.push_back(Cell::missing());
                    continue;
                }
                bool in_set = false;
                switch (term.relation) {
                    case Relation::Less:
                        in_set = cell.number() < *term.operand_number;
                        break;
                    case Relation::Greater:
                        in_set = cell.number() > *term.operand_number;
                        break;
                    case Relation::Equal:
                        // Numeric variables compare numerically (50 matches 50.0),
                        // everything else by display text.
                        if (column->kind == ColumnKind::Numeric) {
                            in_set = term.operand_number && cell.number() == *term.operand_number;
                        } else {
                            in_set = cell.display() == term.operand_text;
                        }
                        break;
                }
                std::string label;
                switch (term.relation) {
                    case Relation::Less:
                        label = in_set ? "<" + term.operand_text : ">=" + term.operand_text;
                        break;
                    case Relation::Greater:
                        label = in_set ? ">" + term.operand_text : "<=" + term.operand_text;
                        break;
                    case Relation::Equal:
                        label = in_set ? term.operand_text : "not " + term.operand_text;
                        break;
                }
                layer.cells.push_back(Cell::categorical(std::move(label)));
            }
            break;
        }
    }
    return layer;
}

}  // namespace vartree
