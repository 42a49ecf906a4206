#include "vartree/prune.hpp"

#include <algorithm>

#include "vartree/errors.hpp"

namespace vartree {

namespace {

void validate_variables(const VTree& tree, const PruneSpec& spec) {
    for (const auto& [name, labels] : spec) {
        bool known = false;
        for (const auto& layer : tree.layers) {
            if (layer.display_name == name) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw SpecError("unknown variable \"" + name + "\" in prune spec");
        }
    }
}

const std::vector<std::string>* labels_for(const PruneSpec& spec, const VTree& tree,
                                           const VNode& node) {
    if (node.layer_index < 0) return nullptr;
    const auto& display = tree.layers[static_cast<std::size_t>(node.layer_index)].display_name;
    auto it = spec.find(display);
    return it == spec.end() ? nullptr : &it->second;
}

bool listed(const std::vector<std::string>& labels, const std::string& label) {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

// Rebuilds the child list of every node, dropping children for which
// `drop_child` returns true and clearing children of nodes for which
// `make_leaf` returns true. Surviving nodes keep count and pct untouched.
template <typename DropFn, typename LeafFn>
void transform(VNode& node, const DropFn& drop_child, const LeafFn& make_leaf) {
    if (make_leaf(node)) {
        node.children.clear();
        return;
    }
    std::erase_if(node.children, drop_child);
    for (auto& child : node.children) transform(child, drop_child, make_leaf);
}

}  // namespace

PruneSpec parse_prune_spec(std::string_view text) {
    PruneSpec spec;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(';', pos), text.size());
        std::string_view entry = text.substr(pos, end - pos);
        if (!entry.empty()) {
            const std::size_t eq = entry.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                throw SpecError("prune spec entry \"" + std::string(entry) +
                                "\" must look like Var=label,label");
            }
            std::string name(entry.substr(0, eq));
            std::vector<std::string>& labels = spec[name];
            std::string_view rest = entry.substr(eq + 1);
            std::size_t lpos = 0;
            while (lpos <= rest.size()) {
                const std::size_t lend = std::min(rest.find(',', lpos), rest.size());
                labels.emplace_back(rest.substr(lpos, lend - lpos));
                lpos = lend + 1;
            }
        }
        pos = end + 1;
    }
    return spec;
}

VTree prune(const VTree& tree, const PruneSpec& spec) {
    validate_variables(tree, spec);
    VTree out = tree;
    transform(
        out.root,
        [&](const VNode& child) {
            const auto* labels = labels_for(spec, out, child);
            return labels != nullptr && listed(*labels, child.value_label);
        },
        [](const VNode&) { return false; });
    return out;
}

VTree keep(const VTree& tree, const PruneSpec& spec, PercentMode mode) {
    validate_variables(tree, spec);
    VTree out = tree;
    transform(
        out.root,
        [&](const VNode& child) {
            const auto* labels = labels_for(spec, out, child);
            if (labels == nullptr) return false;  // variable not named: untouched
            if (listed(*labels, child.value_label)) return false;
            if (child.is_missing_node && mode == PercentMode::Valid) return false;
            return true;
        },
        [](const VNode&) { return false; });
    return out;
}

VTree prunebelow(const VTree& tree, const PruneSpec& spec) {
    validate_variables(tree, spec);
    VTree out = tree;
    transform(
        out.root, [](const VNode&) { return false; },
        [&](const VNode& node) {
            const auto* labels = labels_for(spec, out, node);
            return labels != nullptr && listed(*labels, node.value_label);
        });
    return out;
}

VTree follow(const VTree& tree, const PruneSpec& spec) {
    validate_variables(tree, spec);
    VTree out = tree;
    transform(
        out.root, [](const VNode&) { return false; },
        [&](const VNode& node) {
            const auto* labels = labels_for(spec, out, node);
            return labels != nullptr && !listed(*labels, node.value_label);
        });
    return out;
}

VTree prune_smaller(const VTree& tree, std::size_t threshold, PercentMode mode) {
    VTree out = tree;
    transform(
        out.root,
        [&](const VNode& child) {
            if (child.is_missing_node && mode == PercentMode::Valid) return false;
            return child.count < threshold;
        },
        [](const VNode&) { return false; });
    return out;
}

}  // namespace vartree
