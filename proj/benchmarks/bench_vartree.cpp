#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "vartree/dataset.hpp"
#include "vartree/render.hpp"
#include "vartree/summary.hpp"
#include "vartree/tree.hpp"
#include "vartree/varspec.hpp"

namespace {

// Deterministic synthetic data: a few categorical columns plus one numeric
// column, with some missing cells sprinkled in.
vartree::Dataset make_dataset(std::size_t rows, std::size_t cat_cols) {
    static const char* kPool[] = {"alpha", "beta", "gamma", "delta", "epsilon"};
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_real_distribution<double> value(0.0, 100.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    vartree::Dataset data;
    data.n_rows = rows;
    for (std::size_t c = 0; c < cat_cols; ++c) {
        vartree::Column col;
        col.name = "c" + std::to_string(c);
        col.kind = vartree::ColumnKind::Categorical;
        col.cells.reserve(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            if (unit(rng) < 0.05) {
                col.cells.push_back(vartree::Cell::missing());
            } else {
                col.cells.push_back(vartree::Cell::categorical(kPool[pick(rng)]));
            }
        }
        data.columns.push_back(std::move(col));
    }
    vartree::Column score;
    score.name = "score";
    score.kind = vartree::ColumnKind::Numeric;
    score.cells.reserve(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        score.cells.push_back(vartree::Cell::numeric(value(rng)));
    }
    data.columns.push_back(std::move(score));
    return data;
}

std::vector<vartree::VarTerm> cat_terms(const vartree::Dataset& data) {
    std::vector<vartree::VarTerm> terms;
    for (const auto& col : data.columns) {
        if (col.kind == vartree::ColumnKind::Categorical) {
            terms.push_back(vartree::VarTerm::plain(col.name));
        }
    }
    return terms;
}

void BM_load_csv(benchmark::State& state) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const std::string csv = vartree::write_csv_text(make_dataset(rows, 3));
    for (auto _ : state) {
        vartree::Dataset data = vartree::load_csv_text(csv);
        benchmark::DoNotOptimize(data.n_rows);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(csv.size()));
}
BENCHMARK(BM_load_csv)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_build_tree(benchmark::State& state) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const vartree::Dataset data = make_dataset(rows, 3);
    const auto terms = cat_terms(data);
    for (auto _ : state) {
        vartree::VTree tree = vartree::build_tree(data, terms, vartree::PercentMode::Valid);
        benchmark::DoNotOptimize(tree.node_count());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(rows));
}
BENCHMARK(BM_build_tree)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_build_pattern_tree(benchmark::State& state) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const vartree::Dataset data = make_dataset(rows, 3);
    const auto terms = cat_terms(data);
    for (auto _ : state) {
        vartree::VTree tree = vartree::build_pattern_tree(data, terms);
        benchmark::DoNotOptimize(tree.node_count());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(rows));
}
BENCHMARK(BM_build_pattern_tree)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_apply_summaries(benchmark::State& state) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const vartree::Dataset data = make_dataset(rows, 3);
    const vartree::VTree tree =
        vartree::build_tree(data, cat_terms(data), vartree::PercentMode::Valid);
    const std::vector<vartree::SummarySpec> specs = {
        vartree::parse_summary_spec("score \nmean %meanx%, median %medianx%"),
    };
    for (auto _ : state) {
        vartree::VTree copy = tree;
        vartree::apply_summaries(copy, specs, data, 1);
        benchmark::DoNotOptimize(copy.root.summaries.size());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(rows));
}
BENCHMARK(BM_apply_summaries)->Arg(1000)->Arg(10000);

void BM_to_dot(benchmark::State& state) {
    const std::size_t rows = static_cast<std::size_t>(state.range(0));
    const vartree::Dataset data = make_dataset(rows, 3);
    const vartree::VTree tree =
        vartree::build_tree(data, cat_terms(data), vartree::PercentMode::Valid);
    for (auto _ : state) {
        std::string dot = vartree::to_dot(tree);
        benchmark::DoNotOptimize(dot.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(tree.node_count()));
}
BENCHMARK(BM_to_dot)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
