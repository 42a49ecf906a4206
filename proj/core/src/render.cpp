#include "vartree/render.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "vartree/errors.hpp"

namespace vartree {

namespace {

constexpr std::array<const char*, 5> kLayerPalette = {
    "#DEEBF7", "#C6DBEF", "#9ECAE1", "#6BAED6", "#4292C6",
};
constexpr const char* kRootFill = "#F7FBFF";
constexpr const char* kMissingFill = "white";
constexpr const char* kMissingnessFill = "#969696";

std::string display_var(const RenderOptions& opts, const std::string& name) {
    auto it = opts.labelvar.find(name);
    return it == opts.labelvar.end() ? name : it->second;
}

std::string display_label(const RenderOptions& opts, const std::string& var,
                          const std::string& raw) {
    auto it = opts.labelnode.find(var);
    if (it != opts.labelnode.end()) {
        for (const auto& [replacement, original] : it->second) {
            if (original == raw) return replacement;
        }
    }
    return raw;
}

// Greedy word wrap applied per existing line; a word longer than the width
// stands alone.
std::string wrap_text(const std::string& text, std::size_t width) {
    std::string out;
    std::size_t line_len = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\n') {
            out.push_back('\n');
            line_len = 0;
            ++i;
            continue;
        }
        if (text[i] == ' ') {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && text[end] != ' ' && text[end] != '\n') ++end;
        std::size_t word_len = end - i;
        if (line_len > 0) {
            if (line_len + 1 + word_len > width) {
                out.push_back('\n');
                line_len = 0;
            } else {
                out.push_back(' ');
                ++line_len;
            }
        }
        out.append(text, i, word_len);
        line_len += word_len;
        i = end;
    }
    return out;
}

std::string percent_text(double pct, int digits) {
    return format_fixed(pct, digits) + "%";
}

// Label plus count/percentage line plus raw summaries; summary templates
// carry their own line breaks.
std::string node_text(const VTree& tree, const VNode& node, const RenderOptions& opts) {
    const bool is_root = node.layer_index < 0;
    std::string label;
    if (is_root) {
        if (opts.title) label = *opts.title;
    } else {
        const std::string& var =
            tree.layers[static_cast<std::size_t>(node.layer_index)].display_name;
        label = display_label(opts, var, node.value_label);
    }
    if (opts.splitwidth) label = wrap_text(label, *opts.splitwidth);

    std::string info;
    if (opts.showcount) info = std::to_string(node.count);
    if (!is_root && opts.showpct && node.pct) {
        std::string pct = percent_text(*node.pct, opts.pct_digits);
        info = info.empty() ? pct : info + " (" + pct + ")";
    }

    std::string text = label;
    if (!info.empty()) {
        if (text.empty()) {
            text = info;
        } else {
            text += opts.sameline ? ", " + info : "\n" + info;
        }
    }
    for (const std::string& summary : node.summaries) text += summary;
    return text;
}

std::string node_fill(const VTree& tree, const VNode& node, const RenderOptions& opts) {
    if (node.is_missing_node) return kMissingFill;
    if (tree.is_missingness && node.value_label == "missing") return kMissingnessFill;
    if (node.layer_index < 0) {
        return opts.fillcolor.empty() ? kRootFill : opts.fillcolor;
    }
    const std::string& var = tree.layers[static_cast<std::size_t>(node.layer_index)].display_name;
    if (auto it = opts.fillcolor_by_var.find(var); it != opts.fillcolor_by_var.end()) {
        return it->second;
    }
    if (!opts.fillcolor.empty()) return opts.fillcolor;
    return kLayerPalette[static_cast<std::size_t>(node.layer_index) % kLayerPalette.size()];
}

std::string dot_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// Leading breaks trimmed, inner breaks joined, for single-line contexts.
std::string flatten_summary(const std::string& text) {
    std::size_t start = 0;
    while (start < text.size() && text[start] == '\n') ++start;
    std::string out;
    for (std::size_t i = start; i < text.size(); ++i) {
        if (text[i] == '\n') {
            out += "; ";
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> build_legend(const VTree& tree, const RenderOptions& opts,
                                      const Dataset* data,
                                      const std::vector<SummarySpec>& specs) {
    std::vector<std::string> blocks;
    const std::vector<RowIndex>& rows = tree.root.rows;
    for (std::size_t layer = 0; layer < tree.layers.size(); ++layer) {
        const LayerColumn& column = tree.layers[layer];
        std::vector<std::string> order;
        std::unordered_map<std::string, std::vector<RowIndex>> groups;
        std::vector<RowIndex> missing_rows;
        for (RowIndex row : rows) {
            const Cell& cell = column.cells[row];
            if (cell.kind() == Cell::Kind::Missing) {
                missing_rows.push_back(row);
                continue;
            }
            auto [it, inserted] = groups.try_emplace(cell.text());
            if (inserted) order.push_back(cell.text());
            it->second.push_back(row);
        }

        const std::size_t total = rows.size();
        const std::size_t valid = total - missing_rows.size();
        const bool overall = tree.percent_mode == PercentMode::Overall;
        const std::size_t denom = overall ? total : valid;

        std::string block = display_var(opts, column.display_name);
        auto add_line = [&](const std::string& raw_label, const std::vector<RowIndex>& subset,
                            bool with_pct) {
            block += "\n" + display_label(opts, column.display_name, raw_label) + "  " +
                     std::to_string(subset.size());
            if (with_pct && denom > 0) {
                double pct = 100.0 * static_cast<double>(subset.size()) /
                             static_cast<double>(denom);
                block += " (" + percent_text(pct, opts.pct_digits) + ")";
            }
            if (opts.showlegendsum && data != nullptr) {
                VNode probe;
                probe.layer_index = static_cast<int>(layer);
                probe.value_label = raw_label;
                probe.rows = subset;
                probe.count = subset.size();
                for (const SummarySpec& spec : specs) {
                    std::string text = flatten_summary(render_summary(probe, spec, *data, opts.cdigits));
                    if (!text.empty()) block += "  " + text;
                }
            }
        };
        for (const std::string& label : order) add_line(label, groups[label], true);
        if (!missing_rows.empty()) add_line("NA", missing_rows, overall);
        blocks.push_back(std::move(block));
    }
    return blocks;
}

std::string to_dot(const VTree& tree, const RenderOptions& opts,
                   const std::vector<std::string>& legend) {
    std::string out = "digraph vtree {\n";
    out += opts.horiz ? "rankdir=LR;\n" : "rankdir=TB;\n";
    out += "node [fontname=\"Helvetica\"];\n";

    const std::size_t n_layers = tree.layers.size();
    if (opts.showvarnames) {
        for (std::size_t i = 0; i < n_layers; ++i) {
            std::string name = display_var(opts, tree.layers[i].display_name);
            out += "v" + std::to_string(i + 1) + " [label=\"" + dot_escape(name) +
                   "\", shape=none];\n";
        }
        for (std::size_t i = 0; i + 1 < n_layers; ++i) {
            out += "v" + std::to_string(i + 1) + " -> v" + std::to_string(i + 2) +
                   " [style=invis];\n";
        }
    }
    for (std::size_t i = 0; i < legend.size(); ++i) {
        out += "legend" + std::to_string(i) + " [label=\"" + dot_escape(legend[i]) +
               "\", shape=none];\n";
    }

    out += opts.use_fill ? "node [shape=box, style=\"rounded,filled\"];\n"
                         : "node [shape=box, style=\"rounded\"];\n";

    std::vector<std::vector<std::string>> layer_ids(n_layers);
    std::size_t next_id = 0;
    std::function<void(const VNode&, const std::string&)> emit =
        [&](const VNode& node, const std::string& parent_id) {
            std::string id = "n" + std::to_string(next_id++);
            out += id + " [label=\"" + dot_escape(node_text(tree, node, opts)) + "\"";
            if (opts.use_fill) out += ", fillcolor=\"" + node_fill(tree, node, opts) + "\"";
            out += "];\n";
            if (!parent_id.empty()) out += parent_id + " -> " + id + ";\n";
            if (node.layer_index >= 0) {
                layer_ids[static_cast<std::size_t>(node.layer_index)].push_back(id);
            }
            for (const VNode& child : node.children) emit(child, id);
        };
    emit(tree.root, "");

    if (opts.showvarnames) {
        for (std::size_t i = 0; i < n_layers; ++i) {
            out += "{rank=same; v" + std::to_string(i + 1) + ";";
            for (const std::string& id : layer_ids[i]) out += " " + id + ";";
            out += "}\n";
        }
    }
    out += "}\n";
    return out;
}

std::string to_text(const VTree& tree, const RenderOptions& opts,
                    const std::vector<std::string>& legend) {
    std::string out;
    std::function<void(const VNode&, int)> walk = [&](const VNode& node, int depth) {
        const bool is_root = node.layer_index < 0;
        std::string label;
        if (is_root) {
            if (opts.title) label = *opts.title;
        } else {
            const std::string& var =
                tree.layers[static_cast<std::size_t>(node.layer_index)].display_name;
            label = display_label(opts, var, node.value_label);
        }

        std::string info;
        if (opts.showcount) info = std::to_string(node.count);
        if (!is_root && opts.showpct && node.pct) {
            std::string pct = percent_text(*node.pct, opts.pct_digits);
            info = info.empty() ? pct : info + " (" + pct + ")";
        }

        std::string line = label;
        if (!info.empty()) line += line.empty() ? info : "  " + info;
        for (const std::string& summary : node.summaries) {
            std::string flat = flatten_summary(summary);
            if (!flat.empty()) line += "  " + flat;
        }
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += line + "\n";
        for (const VNode& child : node.children) walk(child, depth + 1);
    };
    walk(tree.root, 0);
    for (const std::string& block : legend) out += "\n" + block + "\n";
    return out;
}

namespace {

nlohmann::ordered_json node_to_json(const VTree& tree, const VNode& node) {
    nlohmann::ordered_json j;
    if (node.layer_index < 0) {
        j["variable"] = nullptr;
        j["value"] = nullptr;
    } else {
        j["variable"] = tree.layers[static_cast<std::size_t>(node.layer_index)].display_name;
        j["value"] = node.value_label;
    }
    j["count"] = node.count;
    if (node.pct) {
        j["pct"] = *node.pct;
    } else {
        j["pct"] = nullptr;
    }
    j["missing"] = node.is_missing_node;
    j["children"] = nlohmann::ordered_json::array();
    for (const VNode& child : node.children) {
        j["children"].push_back(node_to_json(tree, child));
    }
    return j;
}

void node_from_json(const nlohmann::json& j, VNode& node, int depth, VTree& tree) {
    node.layer_index = depth - 1;
    if (depth > 0) {
        if (tree.layers.size() < static_cast<std::size_t>(depth)) {
            LayerColumn layer;
            if (j.contains("variable") && j["variable"].is_string()) {
                layer.display_name = j["variable"].get<std::string>();
            }
            tree.layers.push_back(std::move(layer));
        }
        if (j.contains("value") && j["value"].is_string()) {
            node.value_label = j["value"].get<std::string>();
        }
    }
    node.count = j.at("count").get<std::size_t>();
    if (j.contains("pct") && j["pct"].is_number()) {
        node.pct = j["pct"].get<double>();
    }
    node.is_missing_node = j.value("missing", false);
    if (j.contains("children")) {
        for (const auto& child_json : j.at("children")) {
            VNode& child = node.children.emplace_back();
            node_from_json(child_json, child, depth + 1, tree);
        }
    }
}

}  // namespace

std::string to_json(const VTree& tree) {
    return node_to_json(tree, tree.root).dump(2) + "\n";
}

VTree tree_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid tree JSON: ") + e.what());
    }
    VTree tree;
    try {
        node_from_json(j, tree.root, 0, tree);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("invalid tree JSON: ") + e.what());
    }
    return tree;
}

bool same_shape(const VTree& a, const VTree& b) {
    return to_json(a) == to_json(b);
}

}  // namespace vartree
