#include "vartree/summary.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include "vartree/errors.hpp"

namespace vartree {

namespace {

constexpr std::array<std::pair<std::string_view, SummaryCodeRef>, 22> kCodeTable = {{
    {"mean", {SummaryCode::Mean, false, false}},
    {"meanx", {SummaryCode::Mean, true, false}},
    {"SD", {SummaryCode::SD, false, false}},
    {"SDx", {SummaryCode::SD, true, false}},
    {"sum", {SummaryCode::Sum, false, false}},
    {"sumx", {SummaryCode::Sum, true, false}},
    {"min", {SummaryCode::Min, false, false}},
    {"minx", {SummaryCode::Min, true, false}},
    {"max", {SummaryCode::Max, false, false}},
    {"maxx", {SummaryCode::Max, true, false}},
    {"range", {SummaryCode::Range, false, false}},
    {"rangex", {SummaryCode::Range, true, false}},
    {"median", {SummaryCode::Median, false, false}},
    {"medianx", {SummaryCode::Median, true, false}},
    {"IQR", {SummaryCode::IQR, false, false}},
    {"IQRx", {SummaryCode::IQR, true, false}},
    {"freq", {SummaryCode::Freq, false, false}},
    {"freq_", {SummaryCode::Freq, false, true}},
    {"npct", {SummaryCode::Npct, false, false}},
    {"pct", {SummaryCode::Pct, false, false}},
    {"list", {SummaryCode::List, false, false}},
    {"list_", {SummaryCode::List, false, true}},
}};

bool lookup_code(std::string_view token, SummaryCodeRef& out) {
    for (const auto& [name, ref] : kCodeTable) {
        if (token == name) {
            out = ref;
            return true;
        }
    }
    return false;
}

// Replaces the two-character sequence \n with a newline.
std::string unescape_breaks(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == 'n') {
            out.push_back('\n');
            ++i;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

SummarySpec parse_summary_spec(std::string_view spec) {
    std::size_t pos = 0;
    while (pos < spec.size() && is_space(spec[pos])) ++pos;
    std::size_t target_end = pos;
    while (target_end < spec.size() && !is_space(spec[target_end])) ++target_end;
    if (target_end == pos) throw SpecError("summary spec names no target column");

    SummarySpec out;
    std::string_view target = spec.substr(pos, target_end - pos);
    if (auto eq = target.find('='); eq != std::string_view::npos) {
        if (eq == 0) throw SpecError("summary indicator target names no column");
        out.is_indicator = true;
        out.target_column = std::string(target.substr(0, eq));
        out.indicator_text = std::string(target.substr(eq + 1));
        out.indicator_number = parse_number(out.indicator_text);
    } else {
        out.target_column = std::string(target);
    }

    // Spaces and tabs after the target separate it from the template; a
    // newline already belongs to the template.
    pos = target_end;
    while (pos < spec.size() && (spec[pos] == ' ' || spec[pos] == '\t')) ++pos;
    std::string tmpl = unescape_breaks(spec.substr(pos));

    std::string literal;
    auto flush = [&] {
        if (literal.empty()) return;
        TemplatePiece piece;
        piece.literal = std::move(literal);
        literal.clear();
        out.pieces.push_back(std::move(piece));
    };

    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] != '%') {
            literal.push_back(tmpl[i]);
            continue;
        }
        auto close = tmpl.find('%', i + 1);
        if (close == std::string::npos) throw SpecError("unterminated % in summary template");
        std::string token = tmpl.substr(i + 1, close - i - 1);
        i = close;
        if (token.empty()) {
            literal.push_back('%');
        } else if (token == "noroot") {
            out.controls.noroot = true;
        } else if (token == "leafonly") {
            out.controls.leafonly = true;
        } else if (token.rfind("var=", 0) == 0) {
            out.controls.var_filter = token.substr(4);
        } else if (token.rfind("node=", 0) == 0) {
            out.controls.node_filter = token.substr(5);
        } else {
            SummaryCodeRef ref;
            if (!lookup_code(token, ref)) {
                throw SpecError("unknown summary code %" + token + "%");
            }
            flush();
            TemplatePiece piece;
            piece.is_code = true;
            piece.code = ref;
            out.pieces.push_back(piece);
        }
    }
    flush();
    return out;
}

namespace {

bool node_eligible(const VTree& tree, const VNode& node, const SummaryControls& c) {
    const bool is_root = node.layer_index < 0;
    if (c.noroot && is_root) return false;
    if (c.leafonly && !node.children.empty()) return false;
    if (c.var_filter) {
        if (is_root) return false;
        if (tree.layers[static_cast<std::size_t>(node.layer_index)].display_name != *c.var_filter)
            return false;
    }
    if (c.node_filter && node.value_label != *c.node_filter) return false;
    return true;
}

// Column of 1/0 indicator values for the node's rows; a missing source cell
// stays missing. Numeric columns compare numerically so 1.0 matches "1".
Column indicator_column(const Column& source, const std::vector<RowIndex>& rows,
                        const SummarySpec& spec) {
    Column out;
    out.name = spec.target_column;
    out.kind = ColumnKind::Numeric;
    out.cells.reserve(rows.size());
    for (RowIndex row : rows) {
        const Cell& cell = source.cells[row];
        if (cell.kind() == Cell::Kind::Missing) {
            out.cells.push_back(Cell::missing());
            continue;
        }
        bool match = false;
        if (source.kind == ColumnKind::Numeric && spec.indicator_number) {
            match = cell.kind() == Cell::Kind::Numeric && cell.number() == *spec.indicator_number;
        } else {
            match = cell.display() == spec.indicator_text;
        }
        out.cells.push_back(Cell::numeric(match ? 1.0 : 0.0));
    }
    return out;
}

std::string render_pct0(double numerator, double denominator) {
    return format_fixed(100.0 * numerator / denominator, 0);
}

std::string render_code(const SummaryCodeRef& ref, const StatBundle& stats, ColumnKind kind,
                        int cdigits) {
    const char* sep = ref.per_line ? "\n" : ", ";
    const bool blanked = !ref.suppress_missing && stats.n_missing > 0;

    auto continuous = [&](const std::optional<double>& v) -> std::string {
        if (blanked || !v) return "NA";
        return format_fixed(*v, cdigits);
    };
    auto span = [&](const std::optional<double>& lo,
                    const std::optional<double>& hi) -> std::string {
        if (blanked || !lo || !hi) return "NA";
        return format_fixed(*lo, cdigits) + "-" + format_fixed(*hi, cdigits);
    };

    switch (ref.code) {
        case SummaryCode::Mean: return continuous(stats.mean);
        case SummaryCode::SD: return continuous(stats.sd);
        case SummaryCode::Sum: return continuous(stats.sum);
        case SummaryCode::Min: return continuous(stats.min);
        case SummaryCode::Max: return continuous(stats.max);
        case SummaryCode::Range: return span(stats.min, stats.max);
        case SummaryCode::Median: return continuous(stats.median);
        case SummaryCode::IQR: return span(stats.q1, stats.q3);
        case SummaryCode::Freq: {
            std::string out;
            for (const auto& [label, count] : stats.freq) {
                if (!out.empty()) out += sep;
                out += label + " " + std::to_string(count);
            }
            if (stats.n_missing > 0) {
                if (!out.empty()) out += sep;
                out += "NA " + std::to_string(stats.n_missing);
            }
            return out;
        }
        case SummaryCode::List: {
            std::string out;
            bool first = true;
            for (const Cell& cell : stats.values) {
                if (!first) out += sep;
                first = false;
                out += cell.display();
            }
            return out;
        }
        case SummaryCode::Npct:
        case SummaryCode::Pct: {
            const bool with_count = ref.code == SummaryCode::Npct;
            const std::size_t valid = stats.n - stats.n_missing;
            if (kind == ColumnKind::Categorical) {
                std::string out;
                for (const auto& [label, count] : stats.freq) {
                    if (!out.empty()) out += ", ";
                    out += label;
                    if (with_count) out += " " + std::to_string(count);
                    out += with_count ? " (" : " ";
                    out += render_pct0(static_cast<double>(count), static_cast<double>(valid));
                    out += with_count ? "%)" : "%";
                }
                if (with_count && stats.n_missing > 0) {
                    if (!out.empty()) out += ", ";
                    out += "NA " + std::to_string(stats.n_missing);
                }
                return out;
            }
            // Numeric and boolean targets count truthy values.
            if (valid == 0) return "NA";
            std::size_t truthy = 0;
            for (const Cell& cell : stats.values) {
                if (cell.kind() == Cell::Kind::Numeric && cell.number() != 0.0) ++truthy;
                if (cell.kind() == Cell::Kind::Boolean && cell.truth()) ++truthy;
            }
            std::string pct =
                render_pct0(static_cast<double>(truthy), static_cast<double>(valid)) + "%";
            if (!with_count) return pct;
            return std::to_string(truthy) + " (" + pct + ")";
        }
    }
    return "NA";
}

}  // namespace

std::vector<const VNode*> eligible_nodes(const VTree& tree, const SummaryControls& controls) {
    std::vector<const VNode*> out;
    tree.for_each([&](const VNode& node, int) {
        if (node_eligible(tree, node, controls)) out.push_back(&node);
    });
    return out;
}

std::string render_summary(const VNode& node, const SummarySpec& spec, const Dataset& data,
                           int cdigits) {
    const Column* source = data.find_column(spec.target_column);
    if (source == nullptr) {
        throw SpecError("summary target column \"" + spec.target_column + "\" not found");
    }

    StatBundle stats;
    ColumnKind kind = source->kind;
    if (spec.is_indicator) {
        Column derived = indicator_column(*source, node.rows, spec);
        std::vector<RowIndex> all(derived.cells.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<RowIndex>(i);
        stats = subset_stats(derived, all);
        kind = ColumnKind::Numeric;
    } else {
        stats = subset_stats(*source, node.rows);
    }

    std::string out;
    for (const TemplatePiece& piece : spec.pieces) {
        if (piece.is_code) {
            out += render_code(piece.code, stats, kind, cdigits);
        } else {
            out += piece.literal;
        }
    }
    return out;
}

void apply_summaries(VTree& tree, const std::vector<SummarySpec>& specs, const Dataset& data,
                     int cdigits) {
    for (const SummarySpec& spec : specs) {
        tree.for_each([&](VNode& node, int) {
            if (!node_eligible(tree, node, spec.controls)) return;
            node.summaries.push_back(render_summary(node, spec, data, cdigits));
        });
    }
}

}  // namespace vartree
