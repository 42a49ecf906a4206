#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vartree/tree.hpp"

namespace vartree {

// Per-node statistic placeholders. The x-suffixed spellings (%meanx% etc.)
// suppress missing values; the base spellings render "NA" whenever the node
// contains a missing target value. %freq_%/%list_% print one value per line.
enum class SummaryCode : std::uint8_t {
    Mean, SD, Sum, Min, Max, Range, Median, IQR, Freq, Npct, Pct, List,
};

struct SummaryCodeRef {
    SummaryCode code = SummaryCode::Mean;
    bool suppress_missing = false;  // x variant
    bool per_line = false;          // _ variant
};

// Codes restricting which nodes display a summary; multiple controls
// intersect.
struct SummaryControls {
    bool noroot = false;
    bool leafonly = false;
    std::optional<std::string> var_filter;   // %var=v%
    std::optional<std::string> node_filter;  // %node=n%
};

struct TemplatePiece {
    bool is_code = false;
    std::string literal;
    SummaryCodeRef code;
};

// A parsed summary specification: "<target> <template>" where target is a
// column name or an indicator expression name=value, and the template mixes
// literal text, \n breaks, and %code% slots.
struct SummarySpec {
    std::string target_column;
    bool is_indicator = false;
    std::string indicator_text;
    std::optional<double> indicator_number;
    std::vector<TemplatePiece> pieces;
    SummaryControls controls;
};

// Splits off the target token, extracts control codes, validates the
// remaining %...% slots. The two-character sequence \n becomes a line break;
// %% renders a literal percent sign.
SummarySpec parse_summary_spec(std::string_view spec);

// Nodes a summary with these controls applies to, in pre-order.
std::vector<const VNode*> eligible_nodes(const VTree& tree, const SummaryControls& controls);

// The template rendered for one node: each %code% slot replaced by the
// statistic of the target over the node's rows, continuous values printed
// with `cdigits` decimals (ties away from zero).
std::string render_summary(const VNode& node, const SummarySpec& spec, const Dataset& data,
                           int cdigits);

// Renders every spec on every eligible node, appending to node summaries in
// spec order.
void apply_summaries(VTree& tree, const std::vector<SummarySpec>& specs, const Dataset& data,
                     int cdigits);

}  // namespace vartree
