#pragma once

// Shared test fixtures built from published marginal counts.

#include <string>
#include <vector>

#include "vartree/dataset.hpp"

namespace testsupport {

// Two-variable passenger fixture: region marginals 1356/356/300/114 with 81
// missing (valid denominator 2126), and an age split of 31 children, 323
// adults, 2 missing inside Europe (valid denominator 354).
inline vartree::Dataset region_age_fixture() {
    using vartree::Cell;
    auto cat = [](const char* t) { return Cell::categorical(t); };
    std::vector<vartree::PatternRow> patterns = {
        {{cat("UK and Ireland"), cat("Adult")}, 1356},
        {{cat("Europe"), cat("Child")}, 31},
        {{cat("Europe"), cat("Adult")}, 323},
        {{cat("Europe"), Cell::missing()}, 2},
        {{cat("North America"), cat("Adult")}, 300},
        {{cat("Other"), cat("Adult")}, 114},
        {{Cell::missing(), cat("Adult")}, 81},
    };
    return vartree::build_from_patterns({"Region", "Age"}, patterns);
}

// Trial-flow fixture: 612 screened, 16 excluded (13 ineligible, 3 without
// consent), 596 randomized into arms of 197/199/200, with 193/4 and 191/8
// starting treatment in the first two arms.
inline vartree::Dataset trial_flow_fixture() {
    using vartree::Cell;
    std::vector<std::vector<double>> rows = {
        {0, 0, 1, 0, 0}, {0, 1, 0, 0, 0}, {1, 1, 1, 1, 1}, {1, 1, 1, 1, 0},
        {1, 1, 1, 2, 1}, {1, 1, 1, 2, 0}, {1, 1, 1, 3, 1},
    };
    std::vector<long long> counts = {13, 3, 193, 4, 191, 8, 200};
    std::vector<vartree::PatternRow> patterns;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        vartree::PatternRow p;
        for (double v : rows[i]) p.values.push_back(Cell::numeric(v));
        p.count = counts[i];
        patterns.push_back(std::move(p));
    }
    return vartree::build_from_patterns({"included", "elig", "consent", "randgrp", "started"},
                                        patterns);
}

}  // namespace testsupport
