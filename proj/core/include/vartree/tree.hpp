#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vartree/varspec.hpp"

namespace vartree {

enum class PercentMode : std::uint8_t {
    Valid,    // denominator = non-missing siblings; missing nodes carry no percent
    Overall,  // denominator = parent count; missing nodes carry a percent
};

// One node of a variable tree: a subset of the dataset's rows.
struct VNode {
    int layer_index = -1;  // -1 for the root
    std::string value_label;
    bool is_missing_node = false;
    std::vector<RowIndex> rows;
    std::size_t count = 0;
    std::optional<double> pct;  // full precision; rounding happens at render time
    std::vector<VNode> children;
    std::vector<std::string> summaries;

    bool is_leaf() const { return children.empty(); }
};

struct VTree {
    VNode root;
    std::vector<LayerColumn> layers;
    PercentMode percent_mode = PercentMode::Valid;
    bool is_pattern = false;
    bool is_missingness = false;

    std::size_t node_count() const;
    // Pre-order walk, root first.
    void for_each(const std::function<void(const VNode&, int depth)>& fn) const;
    void for_each(const std::function<void(VNode&, int depth)>& fn);
};

// Percentage of one child within its sibling group, or nullopt when the node
// shows no percentage (missing nodes in Valid mode, zero denominators).
std::optional<double> compute_pct(std::size_t child_count, std::size_t parent_count,
                                  std::size_t sibling_missing_count, bool is_missing_node,
                                  PercentMode mode);

// The counted variable tree. At each layer every parent's rows are partitioned
// by the materialized layer value in first-appearance order (within that
// parent, by dataset row order); rows with a missing value form a trailing
// missing node. Empty subsets produce no node.
VTree build_tree(const Dataset& data, const std::vector<VarTerm>& terms, PercentMode mode);

// One linear branch per observed combination of all layer values (a missing
// value is a distinguishable value). Branch order is first appearance of the
// combination; only the top node of each branch carries a percentage, against
// the total row count.
VTree build_pattern_tree(const Dataset& data, const std::vector<VarTerm>& terms);

// Pattern tree over missing/not-missing indicators of each (plain) term.
// "missing"-valued nodes are flagged for dark rendering.
VTree build_missingness_tree(const Dataset& data, const std::vector<VarTerm>& terms);

}  // namespace vartree
