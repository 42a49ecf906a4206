#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "vartree/errors.hpp"
#include "vartree/render.hpp"

using namespace vartree;
using testsupport::find_child;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size())) {
        ++count;
    }
    return count;
}

// DOT statements introducing tree nodes look like "nK [label=".
std::size_t dot_node_statements(const std::string& dot) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = dot.find("\nn", pos)) != std::string::npos) {
        std::size_t k = pos + 2;
        while (k < dot.size() && std::isdigit(static_cast<unsigned char>(dot[k]))) ++k;
        if (k > pos + 2 && dot.compare(k, 8, " [label=") == 0) ++count;
        pos = k;
    }
    return count;
}

// Edges between tree nodes are "nA -> nB;".
std::size_t dot_tree_edges(const std::string& dot) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = dot.find(" -> n", pos)) != std::string::npos) {
        std::size_t end = pos + 5;
        while (end < dot.size() && std::isdigit(static_cast<unsigned char>(dot[end]))) ++end;
        if (end < dot.size() && dot[end] == ';') ++count;
        pos = end;
    }
    return count;
}

}  // namespace

TEST_CASE("node text composes label, count, and percentage") {
    Dataset trial = testsupport::trial_flow_fixture();
    VTree root_only = build_tree(trial, {}, PercentMode::Valid);
    RenderOptions opts;
    opts.title = "patients screened";
    std::string dot = to_dot(root_only, opts);
    CHECK(dot.find("n0 [label=\"patients screened\\n612\"") != std::string::npos);

    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region"), PercentMode::Valid);
    dot = to_dot(tree);
    CHECK(dot.find("\"UK and Ireland\\n1356 (64%)\"") != std::string::npos);
    CHECK(dot.find("\"Europe\\n356 (17%)\"") != std::string::npos);
    CHECK(dot.find("\"NA\\n81\"") != std::string::npos);  // no pct on the missing node

    RenderOptions no_pct;
    no_pct.showpct = false;
    CHECK(to_dot(tree, no_pct).find("\"UK and Ireland\\n1356\"") != std::string::npos);

    RenderOptions no_count;
    no_count.showcount = false;
    CHECK(to_dot(tree, no_count).find("\"UK and Ireland\\n64%\"") != std::string::npos);

    RenderOptions inline_info;
    inline_info.sameline = true;
    CHECK(to_dot(tree, inline_info).find("\"UK and Ireland, 1356 (64%)\"") != std::string::npos);

    RenderOptions digits;
    digits.pct_digits = 1;
    CHECK(to_dot(tree, digits).find("\"UK and Ireland\\n1356 (63.8%)\"") != std::string::npos);
}

TEST_CASE("splitwidth wraps labels and the title but not counts") {
    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region"), PercentMode::Valid);
    RenderOptions opts;
    opts.splitwidth = 5;
    opts.title = "all of the patients";
    std::string dot = to_dot(tree, opts);
    CHECK(dot.find("\"North\\nAmerica\\n300 (14%)\"") != std::string::npos);
    CHECK(dot.find("\"all\\nof\\nthe\\npatients\\n2207\"") != std::string::npos);
    // A word longer than the width stands on its own line.
    CHECK(dot.find("\"Europe\\n356 (17%)\"") != std::string::npos);
}

TEST_CASE("labelnode renames values and labelvar renames headings") {
    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);
    RenderOptions opts;
    opts.labelnode["Region"] = {{"U.K. and Ireland", "UK and Ireland"}};
    opts.labelvar["Region"] = "Geographic region";
    opts.showlegend = true;
    std::vector<std::string> legend = build_legend(tree, opts);
    std::string dot = to_dot(tree, opts, legend);
    CHECK(dot.find("\"U.K. and Ireland\\n1356 (64%)\"") != std::string::npos);
    CHECK(dot.find("\"UK and Ireland\\n") == std::string::npos);
    CHECK(dot.find("v1 [label=\"Geographic region\", shape=none];") != std::string::npos);
    // The legend uses the renamed heading and value too.
    REQUIRE(legend.size() == 2);
    CHECK(legend[0].rfind("Geographic region\nU.K. and Ireland  1356 (64%)\n", 0) == 0);
}

TEST_CASE("labelnode renaming is reversible") {
    auto one_value = [](const std::string& value) {
        Dataset data;
        data.n_rows = 1;
        Column col;
        col.name = "g";
        col.kind = ColumnKind::Categorical;
        col.cells = {Cell::categorical(value)};
        data.columns.push_back(std::move(col));
        return build_tree(data, parse_varspec("g"), PercentMode::Valid);
    };
    VTree with_a = one_value("A");
    VTree with_b = one_value("B");

    RenderOptions a_to_b;
    a_to_b.labelnode["g"] = {{"B", "A"}};
    RenderOptions b_to_a;
    b_to_a.labelnode["g"] = {{"A", "B"}};

    // Renaming A to B makes the tree render like one that held B all along,
    // and the reverse map restores the original bytes.
    CHECK(to_text(with_a, a_to_b) == to_text(with_b));
    CHECK(to_dot(with_a, a_to_b) == to_dot(with_b));
    CHECK(to_text(with_b, b_to_a) == to_text(with_a));
}

TEST_CASE("fill colors follow the precedence chain") {
    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);

    std::string dot = to_dot(tree);
    CHECK(dot.find("n0 [label=\"2207\", fillcolor=\"#F7FBFF\"];") != std::string::npos);
    CHECK(dot.find("fillcolor=\"#DEEBF7\"") != std::string::npos);  // layer 1 palette
    CHECK(dot.find("fillcolor=\"#C6DBEF\"") != std::string::npos);  // layer 2 palette
    CHECK(dot.find("\"NA\\n81\", fillcolor=\"white\"") != std::string::npos);

    RenderOptions single;
    single.fillcolor = "#ABCDEF";
    dot = to_dot(tree, single);
    CHECK(dot.find("n0 [label=\"2207\", fillcolor=\"#ABCDEF\"];") != std::string::npos);
    CHECK(dot.find("fillcolor=\"#DEEBF7\"") == std::string::npos);
    CHECK(dot.find("\"NA\\n81\", fillcolor=\"white\"") != std::string::npos);  // still white

    RenderOptions by_var;
    by_var.fillcolor_by_var["Age"] = "#112233";
    dot = to_dot(tree, by_var);
    CHECK(dot.find("\"Adult\\n1356 (100%)\", fillcolor=\"#112233\"") != std::string::npos);
    CHECK(dot.find("fillcolor=\"#DEEBF7\"") != std::string::npos);  // Region keeps palette

    RenderOptions plain;
    plain.use_fill = false;
    dot = to_dot(tree, plain);
    CHECK(dot.find("fillcolor") == std::string::npos);
    CHECK(dot.find("node [shape=box, style=\"rounded\"];") != std::string::npos);

    VTree miss = build_missingness_tree(region, parse_varspec("Region Age"));
    dot = to_dot(miss);
    CHECK(dot.find("fillcolor=\"#969696\"") != std::string::npos);
    std::size_t missing_nodes = 0;
    miss.for_each([&](const VNode& node, int) {
        if (node.value_label == "missing") ++missing_nodes;
    });
    CHECK(count_occurrences(dot, "fillcolor=\"#969696\"") == missing_nodes);
}

TEST_CASE("DOT output is structurally sound") {
    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);
    RenderOptions opts;
    opts.showlegend = true;
    std::vector<std::string> legend = build_legend(tree, opts);
    std::string dot = to_dot(tree, opts, legend);

    CHECK(dot.rfind("digraph vtree {\n", 0) == 0);
    CHECK(dot.substr(dot.size() - 2) == "}\n");
    CHECK(count_occurrences(dot, "{") == count_occurrences(dot, "}"));
    CHECK(dot.find("rankdir=LR;") != std::string::npos);
    CHECK(dot.find("node [fontname=\"Helvetica\"];") != std::string::npos);
    CHECK(dot_node_statements(dot) == tree.node_count());
    CHECK(dot_tree_edges(dot) == tree.node_count() - 1);
    CHECK(dot.find("v1 -> v2 [style=invis];") != std::string::npos);
    CHECK(dot.find("legend0 [label=\"") != std::string::npos);
    CHECK(dot.find("legend1 [label=\"") != std::string::npos);
    // Legend nodes hang free: no edges touch them.
    CHECK(dot.find("legend0 ->") == std::string::npos);
    CHECK(dot.find("-> legend") == std::string::npos);

    RenderOptions vertical;
    vertical.horiz = false;
    CHECK(to_dot(tree, vertical).find("rankdir=TB;") != std::string::npos);

    VTree region_only = build_tree(region, parse_varspec("Region"), PercentMode::Valid);
    std::string single = to_dot(region_only);
    CHECK(single.find("{rank=same; v1; n1; n2; n3; n4; n5;}") != std::string::npos);

    RenderOptions unannotated;
    unannotated.showvarnames = false;
    std::string bare = to_dot(region_only, unannotated);
    CHECK(bare.find("v1") == std::string::npos);
    CHECK(bare.find("rank=same") == std::string::npos);
}

TEST_CASE("DOT escapes quotes, backslashes, and newlines in labels") {
    Dataset data;
    data.n_rows = 1;
    Column col;
    col.name = "g";
    col.kind = ColumnKind::Categorical;
    col.cells = {Cell::categorical("say \"hi\" \\ bye")};
    data.columns.push_back(std::move(col));
    VTree tree = build_tree(data, parse_varspec("g"), PercentMode::Valid);
    std::string dot = to_dot(tree);
    CHECK(dot.find("say \\\"hi\\\" \\\\ bye\\n1 (100%)") != std::string::npos);
}

TEST_CASE("DOT edge and statement invariants hold on random trees") {
    std::mt19937 rng(5150);
    for (int iter = 0; iter < 30; ++iter) {
        Dataset data = testsupport::random_categorical_dataset(rng, 200, 3);
        VTree tree = build_tree(data, testsupport::plain_terms(data), PercentMode::Valid);
        RenderOptions opts;
        std::string dot = to_dot(tree, opts, build_legend(tree, opts));
        CHECK(dot_node_statements(dot) == tree.node_count());
        CHECK(dot_tree_edges(dot) == tree.node_count() - 1);
        CHECK(count_occurrences(dot, "{") == count_occurrences(dot, "}"));
        CHECK(to_dot(tree, opts, build_legend(tree, opts)) == dot);  // byte-determinism
    }
}

TEST_CASE("build_legend lists marginal counts with mode-aware percentages") {
    Dataset data;
    data.n_rows = 4;
    Column col;
    col.name = "g";
    col.kind = ColumnKind::Categorical;
    col.cells = {Cell::categorical("A"), Cell::categorical("A"), Cell::categorical("A"),
                 Cell::categorical("B")};
    data.columns.push_back(std::move(col));
    VTree tree = build_tree(data, parse_varspec("g"), PercentMode::Valid);
    std::vector<std::string> legend = build_legend(tree, RenderOptions{});
    REQUIRE(legend.size() == 1);
    CHECK(legend[0] == "g\nA  3 (75%)\nB  1 (25%)");

    Dataset region = testsupport::region_age_fixture();
    VTree valid = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);
    legend = build_legend(valid, RenderOptions{});
    REQUIRE(legend.size() == 2);
    CHECK(legend[0] ==
          "Region\nUK and Ireland  1356 (64%)\nEurope  356 (17%)\nNorth America  300 (14%)\n"
          "Other  114 (5%)\nNA  81");
    CHECK(legend[1] == "Age\nAdult  2174 (99%)\nChild  31 (1%)\nNA  2");

    VTree overall = build_tree(region, parse_varspec("Region"), PercentMode::Overall);
    legend = build_legend(overall, RenderOptions{});
    // Overall mode gives the missing line a percentage over all rows.
    CHECK(legend[0].find("\nNA  81 (4%)") != std::string::npos);
}

TEST_CASE("build_legend can append summaries per marginal value") {
    Dataset data;
    data.n_rows = 4;
    Column group;
    group.name = "g";
    group.kind = ColumnKind::Categorical;
    group.cells = {Cell::categorical("A"), Cell::categorical("A"), Cell::categorical("B"),
                   Cell::categorical("B")};
    Column score;
    score.name = "v";
    score.kind = ColumnKind::Numeric;
    score.cells = {Cell::numeric(1), Cell::numeric(3), Cell::numeric(10), Cell::numeric(20)};
    data.columns.push_back(std::move(group));
    data.columns.push_back(std::move(score));

    VTree tree = build_tree(data, parse_varspec("g"), PercentMode::Valid);
    RenderOptions opts;
    opts.showlegendsum = true;
    std::vector<SummarySpec> specs = {parse_summary_spec("v \nmean %mean%")};
    std::vector<std::string> legend = build_legend(tree, opts, &data, specs);
    REQUIRE(legend.size() == 1);
    CHECK(legend[0] == "g\nA  2 (50%)  mean 2.0\nB  2 (50%)  mean 15.0");
}

TEST_CASE("to_text indents two spaces per level and flattens summaries") {
    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region"), PercentMode::Valid);
    std::string text = to_text(tree);
    CHECK(text ==
          "2207\n"
          "  UK and Ireland  1356 (64%)\n"
          "  Europe  356 (17%)\n"
          "  North America  300 (14%)\n"
          "  Other  114 (5%)\n"
          "  NA  81\n");

    VTree deep = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);
    std::string nested = to_text(deep);
    CHECK(nested.find("  Europe  356 (17%)\n    Child  31 (9%)\n") != std::string::npos);
    std::size_t lines = count_occurrences(nested, "\n");
    CHECK(lines == deep.node_count());

    RenderOptions opts;
    opts.title = "all patients";
    VTree titled = build_tree(region, parse_varspec("Region"), PercentMode::Valid);
    apply_summaries(titled, {parse_summary_spec("Age \nAges: %freq%%noroot%")}, region, 1);
    std::string summarized = to_text(titled, opts);
    CHECK(summarized.rfind("all patients  2207\n", 0) == 0);
    CHECK(summarized.find("  Other  114 (5%)  Ages: Adult 114\n") != std::string::npos);

    std::vector<std::string> legend = build_legend(titled, opts);
    std::string with_legend = to_text(titled, opts, legend);
    CHECK(with_legend.find("\nRegion\nUK and Ireland  1356 (64%)\n") != std::string::npos);
}

TEST_CASE("to_json emits the documented shape") {
    Dataset empty;
    empty.n_rows = 0;
    VTree tree = build_tree(empty, {}, PercentMode::Valid);
    CHECK(to_json(tree) ==
          "{\n"
          "  \"variable\": null,\n"
          "  \"value\": null,\n"
          "  \"count\": 0,\n"
          "  \"pct\": null,\n"
          "  \"missing\": false,\n"
          "  \"children\": []\n"
          "}\n");

    Dataset region = testsupport::region_age_fixture();
    VTree deep = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);
    std::string json = to_json(deep);
    CHECK(json.find("\"variable\": \"Region\"") != std::string::npos);
    CHECK(json.find("\"value\": \"UK and Ireland\"") != std::string::npos);
    CHECK(json.find("\"missing\": true") != std::string::npos);
}

TEST_CASE("tree_from_json inverts to_json") {
    Dataset region = testsupport::region_age_fixture();
    VTree tree = build_tree(region, parse_varspec("Region Age"), PercentMode::Valid);
    VTree copy = tree_from_json(to_json(tree));
    CHECK(same_shape(tree, copy));
    CHECK(copy.node_count() == tree.node_count());
    CHECK(copy.root.count == 2207);
    const VNode* europe = find_child(copy.root, "Europe");
    REQUIRE(europe != nullptr);
    CHECK(europe->count == 356);
    REQUIRE(europe->pct.has_value());

    VTree pruned = tree_from_json(to_json(tree));
    pruned.root.children.pop_back();
    CHECK(!same_shape(tree, pruned));

    CHECK_THROWS_AS(tree_from_json("not json"), DataError);
    CHECK_THROWS_AS(tree_from_json("[1, 2]"), DataError);
}

TEST_CASE("JSON round-trip preserves shape on random trees") {
    std::mt19937 rng(424242);
    for (int iter = 0; iter < 30; ++iter) {
        Dataset data = testsupport::random_categorical_dataset(rng, 150, 3);
        VTree tree = build_tree(data, testsupport::plain_terms(data),
                                iter % 2 == 0 ? PercentMode::Valid : PercentMode::Overall);
        std::string json = to_json(tree);
        VTree copy = tree_from_json(json);
        CHECK(same_shape(tree, copy));
        CHECK(to_json(copy) == json);
    }
}
