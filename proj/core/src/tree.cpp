#include "vartree/tree.hpp"

#include <map>
#include <numeric>
#include <unordered_map>

#include "vartree/errors.hpp"

namespace vartree {

namespace {

constexpr const char* kMissingLabel = "NA";

std::size_t count_nodes(const VNode& node) {
    std::size_t total = 1;
    for (const auto& child : node.children) total += count_nodes(child);
    return total;
}

template <typename Node, typename Fn>
void walk(Node& node, int depth, const Fn& fn) {
    fn(node, depth);
    for (auto& child : node.children) walk(child, depth + 1, fn);
}

std::vector<LayerColumn> materialize_all(const Dataset& data, const std::vector<VarTerm>& terms) {
    std::vector<LayerColumn> layers;
    layers.reserve(terms.size());
    for (const auto& term : terms) layers.push_back(materialize(term, data));
    return layers;
}

// Splits `rows` by the layer's cell values: labeled groups in first-appearance
// order, missing rows split off separately.
struct Partition {
    std::vector<std::pair<std::string, std::vector<RowIndex>>> groups;
    std::vector<RowIndex> missing_rows;
};

Partition partition_rows(const LayerColumn& layer, const std::vector<RowIndex>& rows) {
    Partition part;
    std::unordered_map<std::string, std::size_t> slot;
    for (RowIndex r : rows) {
        const Cell& cell = layer.cells[r];
        if (cell.is_missing()) {
            part.missing_rows.push_back(r);
            continue;
        }
        auto [it, inserted] = slot.emplace(cell.text(), part.groups.size());
        if (inserted) part.groups.push_back({cell.text(), {}});
        part.groups[it->second].second.push_back(r);
    }
    return part;
}

void grow(VNode& parent, const std::vector<LayerColumn>& layers, std::size_t layer_index,
          PercentMode mode) {
    if (layer_index >= layers.size() || parent.rows.empty()) return;
    Partition part = partition_rows(layers[layer_index], parent.rows);

    for (auto& [label, rows] : part.groups) {
        VNode child;
        child.layer_index = static_cast<int>(layer_index);
        child.value_label = label;
        child.count = rows.size();
        child.pct = compute_pct(rows.size(), parent.count, part.missing_rows.size(), false, mode);
        child.rows = std::move(rows);
        parent.children.push_back(std::move(child));
    }
    if (!part.missing_rows.empty()) {
        VNode child;
        child.layer_index = static_cast<int>(layer_index);
        child.value_label = kMissingLabel;
        child.is_missing_node = true;
        child.count = part.missing_rows.size();
        child.pct = compute_pct(part.missing_rows.size(), parent.count, part.missing_rows.size(),
                                true, mode);
        child.rows = std::move(part.missing_rows);
        parent.children.push_back(std::move(child));
    }
    for (auto& child : parent.children) grow(child, layers, layer_index + 1, mode);
}

std::vector<RowIndex> all_rows(const Dataset& data) {
    std::vector<RowIndex> rows(data.n_rows);
    std::iota(rows.begin(), rows.end(), RowIndex{0});
    return rows;
}

VTree pattern_tree_from_layers(const Dataset& data, std::vector<LayerColumn> layers) {
    VTree tree;
    tree.is_pattern = true;
    tree.percent_mode = PercentMode::Overall;
    tree.layers = std::move(layers);
    tree.root.rows = all_rows(data);
    tree.root.count = data.n_rows;

    // Combination key -> branch, in first-appearance order. A missing cell is
    // encoded distinctly from any label.
    std::vector<std::vector<RowIndex>> branch_rows;
    std::map<std::vector<std::string>, std::size_t> slot;
    std::vector<std::size_t> order;
    for (RowIndex r = 0; r < data.n_rows; ++r) {
        std::vector<std::string> key;
        key.reserve(tree.layers.size());
        for (const auto& layer : tree.layers) {
            const Cell& cell = layer.cells[r];
            key.push_back(cell.is_missing() ? std::string("\x01") : "v" + cell.text());
        }
        auto [it, inserted] = slot.emplace(std::move(key), branch_rows.size());
        if (inserted) {
            branch_rows.emplace_back();
            order.push_back(it->second);
        }
        branch_rows[it->second].push_back(r);
    }

    if (tree.layers.empty()) return tree;

    for (std::size_t b : order) {
        const std::vector<RowIndex>& rows = branch_rows[b];
        VNode* attach = &tree.root;
        for (std::size_t layer_index = 0; layer_index < tree.layers.size(); ++layer_index) {
            const Cell& cell = tree.layers[layer_index].cells[rows.front()];
            VNode node;
            node.layer_index = static_cast<int>(layer_index);
            node.is_missing_node = cell.is_missing();
            node.value_label = cell.is_missing() ? kMissingLabel : cell.text();
            node.rows = rows;
            node.count = rows.size();
            if (layer_index == 0) {
                node.pct = compute_pct(rows.size(), tree.root.count, 0, node.is_missing_node,
                                       PercentMode::Overall);
            }
            attach->children.push_back(std::move(node));
            attach = &attach->children.back();
        }
    }
    return tree;
}

}  // namespace

std::size_t VTree::node_count() const { return count_nodes(root); }

void VTree::for_each(const std::function<void(const VNode&, int)>& fn) const {
    walk(root, 0, fn);
}

void VTree::for_each(const std::function<void(VNode&, int)>& fn) { walk(root, 0, fn); }

std::optional<double> compute_pct(std::size_t child_count, std::size_t parent_count,
                                  std::size_t sibling_missing_count, bool is_missing_node,
                                  PercentMode mode) {
    if (mode == PercentMode::Overall) {
        if (parent_count == 0) return std::nullopt;
        return 100.0 * static_cast<double>(child_count) / static_cast<double>(parent_count);
    }
    if (is_missing_node) return std::nullopt;
    const std::size_t denominator = parent_count - sibling_missing_count;
    if (denominator == 0) return std::nullopt;
    return 100.0 * static_cast<double>(child_count) / static_cast<double>(denominator);
}

VTree build_tree(const Dataset& data, const std::vector<VarTerm>& terms, PercentMode mode) {
    VTree tree;
    tree.percent_mode = mode;
    tree.layers = materialize_all(data, terms);
    tree.root.rows = all_rows(data);
    tree.root.count = data.n_rows;
    grow(tree.root, tree.layers, 0, mode);
    return tree;
}

VTree build_pattern_tree(const Dataset& data, const std::vector<VarTerm>& terms) {
    return pattern_tree_from_layers(data, materialize_all(data, terms));
}

VTree build_missingness_tree(const Dataset& data, const std::vector<VarTerm>& terms) {
    std::vector<VarTerm> indicators;
    indicators.reserve(terms.size());
    for (const auto& term : terms) {
        if (term.kind != VarTerm::Kind::Plain) {
            throw SpecError("missingness trees take plain variable names, got \"" + term.token() +
                            "\"");
        }
        indicators.push_back(VarTerm::missing_indicator(term.column));
    }
    VTree tree = pattern_tree_from_layers(data, materialize_all(data, indicators));
    tree.is_missingness = true;
    return tree;
}

}  // namespace vartree
