// Command-line front end: reads a CSV file or a patterns file, builds a
// variable tree, applies pruning and summaries, and writes DOT, text, or
// JSON. Exit codes: 0 success, 1 data or I/O problem, 2 bad specification.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vartree/dataset.hpp"
#include "vartree/errors.hpp"
#include "vartree/prune.hpp"
#include "vartree/render.hpp"
#include "vartree/summary.hpp"
#include "vartree/tree.hpp"
#include "vartree/varspec.hpp"

namespace {

using vartree::Cell;
using vartree::DataError;
using vartree::Dataset;
using vartree::PatternRow;
using vartree::SpecError;

Dataset load_patterns_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read patterns file \"" + path + "\"");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("patterns file \"" + path + "\": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("names") || !doc.contains("patterns")) {
        throw DataError("patterns file \"" + path +
                        "\" needs top-level \"names\" and \"patterns\"");
    }

    std::vector<std::string> names;
    for (const auto& name : doc["names"]) {
        if (!name.is_string()) throw DataError("pattern column names must be strings");
        names.push_back(name.get<std::string>());
    }

    std::vector<PatternRow> patterns;
    for (const auto& entry : doc["patterns"]) {
        if (!entry.is_object() || !entry.contains("values") || !entry.contains("count")) {
            throw DataError("each pattern needs \"values\" and \"count\"");
        }
        PatternRow row;
        if (!entry["count"].is_number_integer()) {
            throw DataError("pattern count must be an integer");
        }
        row.count = entry["count"].get<long long>();
        for (const auto& value : entry["values"]) {
            if (value.is_null()) {
                row.values.push_back(Cell::missing());
            } else if (value.is_string()) {
                row.values.push_back(Cell::categorical(value.get<std::string>()));
            } else if (value.is_boolean()) {
                row.values.push_back(Cell::boolean(value.get<bool>()));
            } else if (value.is_number()) {
                row.values.push_back(Cell::numeric(value.get<double>()));
            } else {
                throw DataError("pattern values must be string, number, boolean, or null");
            }
        }
        patterns.push_back(std::move(row));
    }
    return vartree::build_from_patterns(names, patterns);
}

// "color" for every node, or "Var=color;Var2=color" per variable.
void parse_fillcolor(const std::string& text, vartree::RenderOptions& opts) {
    if (text.find('=') == std::string::npos) {
        opts.fillcolor = text;
        return;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(';', pos), text.size());
        const std::string entry = text.substr(pos, end - pos);
        if (!entry.empty()) {
            const std::size_t eq = entry.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw SpecError("fillcolor entry \"" + entry + "\" is not Var=color");
            }
            opts.fillcolor_by_var[entry.substr(0, eq)] = entry.substr(eq + 1);
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
}

struct Options {
    std::string input;
    std::string patterns_file;
    std::string vars;
    bool overall_pct = false;
    bool pattern = false;
    bool check_is_na = false;
    std::string prune_spec;
    std::string keep_spec;
    std::string prunebelow_spec;
    std::string follow_spec;
    std::optional<std::size_t> prune_smaller;
    std::vector<std::string> summaries;
    std::vector<std::string> labelvars;
    std::vector<std::string> labelnodes;
    std::string fillcolor;
    std::vector<std::string> missing_tokens;
    std::string format = "dot";
    std::string output;
    vartree::RenderOptions render;
};

int run(const Options& opt) {
    Dataset data;
    if (!opt.patterns_file.empty()) {
        data = load_patterns_file(opt.patterns_file);
    } else {
        std::set<std::string> tokens = vartree::default_missing_tokens();
        if (!opt.missing_tokens.empty()) {
            tokens = std::set<std::string>(opt.missing_tokens.begin(), opt.missing_tokens.end());
        }
        data = vartree::load_csv(opt.input, tokens);
    }

    std::vector<vartree::VarTerm> terms;
    if (!opt.vars.empty()) terms = vartree::parse_varspec(opt.vars);

    const vartree::PercentMode mode =
        opt.overall_pct ? vartree::PercentMode::Overall : vartree::PercentMode::Valid;
    vartree::VTree tree;
    if (opt.check_is_na) {
        tree = vartree::build_missingness_tree(data, terms);
    } else if (opt.pattern) {
        tree = vartree::build_pattern_tree(data, terms);
    } else {
        tree = vartree::build_tree(data, terms, mode);
    }

    if (!opt.prune_spec.empty()) {
        tree = vartree::prune(tree, vartree::parse_prune_spec(opt.prune_spec));
    }
    if (!opt.keep_spec.empty()) {
        tree = vartree::keep(tree, vartree::parse_prune_spec(opt.keep_spec), tree.percent_mode);
    }
    if (!opt.prunebelow_spec.empty()) {
        tree = vartree::prunebelow(tree, vartree::parse_prune_spec(opt.prunebelow_spec));
    }
    if (!opt.follow_spec.empty()) {
        tree = vartree::follow(tree, vartree::parse_prune_spec(opt.follow_spec));
    }
    if (opt.prune_smaller) {
        tree = vartree::prune_smaller(tree, *opt.prune_smaller, tree.percent_mode);
    }

    std::vector<vartree::SummarySpec> specs;
    for (const std::string& text : opt.summaries) {
        specs.push_back(vartree::parse_summary_spec(text));
    }
    vartree::RenderOptions render = opt.render;
    vartree::apply_summaries(tree, specs, data, render.cdigits);

    if (!opt.fillcolor.empty()) parse_fillcolor(opt.fillcolor, render);
    for (const std::string& entry : opt.labelvars) {
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw SpecError("labelvar \"" + entry + "\" is not Var=Text");
        }
        render.labelvar[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
    for (const std::string& entry : opt.labelnodes) {
        const std::size_t colon = entry.find(':');
        const std::size_t eq = entry.find('=', colon == std::string::npos ? 0 : colon + 1);
        if (colon == std::string::npos || colon == 0 || eq == std::string::npos) {
            throw SpecError("labelnode \"" + entry + "\" is not Var:NEW=OLD");
        }
        render.labelnode[entry.substr(0, colon)].emplace_back(
            entry.substr(colon + 1, eq - colon - 1), entry.substr(eq + 1));
    }
    if (std::getenv("VARTREE_NO_COLOR") != nullptr) render.use_fill = false;
    if (render.showlegendsum) render.showlegend = true;

    std::vector<std::string> legend;
    if (render.showlegend) {
        legend = vartree::build_legend(tree, render, &data, specs);
    }

    std::string out_text;
    if (opt.format == "dot") {
        out_text = vartree::to_dot(tree, render, legend);
    } else if (opt.format == "text") {
        out_text = vartree::to_text(tree, render, legend);
    } else {
        out_text = vartree::to_json(tree);
    }

    if (opt.output.empty()) {
        std::cout << out_text;
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) throw DataError("cannot write output file \"" + opt.output + "\"");
        out << out_text;
        if (!out.good()) throw DataError("failed writing output file \"" + opt.output + "\"");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vartree: nested subset trees for tabular data"};
    Options opt;

    app.add_option("input", opt.input, "CSV file with a header row");
    auto* patterns_opt = app.add_option("--patterns-file", opt.patterns_file,
                                        "JSON file of value patterns with counts");
    app.add_option("--vars", opt.vars,
                   "whitespace-separated variable spec, e.g. \"Region is.na:Age fare>50\"");
    app.add_flag("--overall-pct", opt.overall_pct,
                 "percentages against the parent count, missing rows included");
    auto* pattern_flag =
        app.add_flag("--pattern", opt.pattern, "one branch per observed value combination");
    app.add_flag("--check-is-na", opt.check_is_na,
                 "pattern tree over missing/not-missing indicators")
        ->excludes(pattern_flag);
    app.add_option("--prune", opt.prune_spec,
                   "drop listed nodes and their descendants, \"Var=a,b;Var2=c\"");
    app.add_option("--keep", opt.keep_spec, "drop unlisted siblings in the named variables");
    app.add_option("--prunebelow", opt.prunebelow_spec, "make listed nodes leaves");
    app.add_option("--follow", opt.follow_spec, "make unlisted nodes of named variables leaves");
    app.add_option("--prunesmaller,--prune-smaller", opt.prune_smaller,
                   "drop nodes with count below this value");
    app.add_option("--summary", opt.summaries,
                   "per-node summary \"target template with %mean% codes\", repeatable");

    app.add_flag("--horiz,!--no-horiz", opt.render.horiz, "root on the left (default)");
    app.add_option("--splitwidth", opt.render.splitwidth, "wrap labels at this width")
        ->check(CLI::PositiveNumber);
    app.add_flag("--sameline", opt.render.sameline, "counts on the label line");
    app.add_flag("--showpct,!--no-showpct", opt.render.showpct, "show percentages (default)");
    app.add_flag("--showcount,!--no-showcount", opt.render.showcount, "show counts (default)");
    app.add_flag("--showvarnames,!--no-showvarnames", opt.render.showvarnames,
                 "annotate layers with variable names (default)");
    app.add_option("--title", opt.render.title, "root node title");
    app.add_option("--fillcolor", opt.fillcolor,
                   "node fill: one color, or \"Var=color;Var2=color\"");
    app.add_option("--labelvar", opt.labelvars, "display text for a variable, \"Var=Text\"");
    app.add_option("--labelnode", opt.labelnodes,
                   "display text for a value, \"Var:NEW=OLD\", repeatable");
    app.add_option("--cdigits", opt.render.cdigits, "decimals for summary statistics")
        ->check(CLI::NonNegativeNumber)
        ->default_val(1);
    app.add_option("--pct-digits", opt.render.pct_digits, "decimals for percentages")
        ->check(CLI::NonNegativeNumber)
        ->default_val(0);
    app.add_flag("--showlegend", opt.render.showlegend, "marginal counts per variable");
    app.add_flag("--showlegendsum", opt.render.showlegendsum,
                 "legend lines include summaries (implies --showlegend)");
    app.add_option("--missing-token", opt.missing_tokens,
                   "CSV tokens read as missing, repeatable (default: empty string and NA)");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"dot", "text", "json"}))
        ->default_val("dot");
    app.add_option("--output", opt.output, "output file (default: stdout)");
    app.set_version_flag("--version", "vartree 0.1.0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if ((opt.input.empty() && patterns_opt->count() == 0) ||
        (!opt.input.empty() && patterns_opt->count() > 0)) {
        std::cerr << "error: give exactly one of an input CSV or --patterns-file" << std::endl;
        return 2;
    }

    try {
        return run(opt);
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 2;
    } catch (const vartree::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
