#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vartree/summary.hpp"
#include "vartree/tree.hpp"

namespace vartree {

// Display settings shared by the DOT and text renderers. Percentages are
// rounded half away from zero at `pct_digits`; summary statistics were
// already formatted at `cdigits` when the summaries were applied, so the
// renderer only reuses it for legend summaries.
struct RenderOptions {
    bool horiz = true;  // root on the left; false stacks layers top to bottom
    std::optional<std::size_t> splitwidth;  // wrap labels and title at this width
    bool sameline = false;                  // counts follow the label on one line
    bool showpct = true;
    bool showcount = true;
    bool showvarnames = true;  // variable-name annotations beside each layer
    std::optional<std::string> title;
    std::string fillcolor;  // single fill for every node; empty keeps the palette
    std::map<std::string, std::string> fillcolor_by_var;
    std::map<std::string, std::string> labelvar;
    // Per variable: (replacement, original) label pairs, first match wins.
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> labelnode;
    int cdigits = 1;
    int pct_digits = 0;
    bool showlegend = false;
    bool showlegendsum = false;
    bool use_fill = true;  // false drops every fillcolor attribute
};

// One multi-line block per variable: a heading plus one line per observed
// value with its marginal count and percentage over the root rows. In valid
// mode the missing line carries no percentage. When `opts.showlegendsum` is
// set and `data` is given, each line gains the rendered summaries of that
// marginal subset.
std::vector<std::string> build_legend(const VTree& tree, const RenderOptions& opts,
                                      const Dataset* data = nullptr,
                                      const std::vector<SummarySpec>& specs = {});

// Graphviz DOT. Tree nodes are n0, n1, ... in pre-order; variable
// annotations v1..vL; legend blocks legend0.. as free-standing text nodes.
std::string to_dot(const VTree& tree, const RenderOptions& opts = {},
                   const std::vector<std::string>& legend = {});

// Indented plain text, two spaces per level, legend blocks appended.
std::string to_text(const VTree& tree, const RenderOptions& opts = {},
                    const std::vector<std::string>& legend = {});

// Nested objects with keys variable, value, count, pct, missing, children.
std::string to_json(const VTree& tree);

// Rebuilds a tree from to_json output. Row sets and layer cells are not part
// of the serialization, so the result carries shape and statistics only.
VTree tree_from_json(std::string_view text);

// True when both trees serialize to the same JSON.
bool same_shape(const VTree& a, const VTree& b);

}  // namespace vartree
