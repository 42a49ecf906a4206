#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vartree/tree.hpp"

namespace vartree {

// Per-variable lists of value labels, matched exactly (case-sensitive)
// against raw node labels. Variable keys must name tree layers; unknown value
// labels are inert.
using PruneSpec = std::map<std::string, std::vector<std::string>>;

// Parses the CLI grammar "Region=Europe,Other;Class=Crew" (semicolon-separated
// variables, comma-separated labels).
PruneSpec parse_prune_spec(std::string_view text);

// Removes every listed node along with its descendants.
VTree prune(const VTree& tree, const PruneSpec& spec);

// Keeps only the listed nodes in each named variable's sibling groups. In
// Valid mode missing nodes always survive; in Overall mode they are dropped
// unless listed.
VTree keep(const VTree& tree, const PruneSpec& spec, PercentMode mode);

// Keeps the listed nodes but removes their children.
VTree prunebelow(const VTree& tree, const PruneSpec& spec);

// Complement of prunebelow: removes the children of every node of the named
// variable that is NOT listed.
VTree follow(const VTree& tree, const PruneSpec& spec);

// Removes nodes with count < threshold along with their descendants. Missing
// nodes are exempt in Valid mode, prunable in Overall mode. The root always
// survives.
VTree prune_smaller(const VTree& tree, std::size_t threshold, PercentMode mode);

}  // namespace vartree
