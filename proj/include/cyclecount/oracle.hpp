#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclecount/base_matrix.hpp"
#include "cyclecount/counting.hpp"

// Ground-truth validation on the lifted graph itself: exhaustive simple-cycle
// counting and BFS girth. Deliberately simple and only meant for inputs small
// enough to search; a node-expansion budget guards against runaway inputs.

namespace cyclecount {

struct TannerGraph {
    int checks = 0;
    int vars = 0;
    std::vector<std::vector<int>> check_adj;  // check -> variable indices
    std::vector<std::vector<int>> var_adj;    // variable -> check indices

    static TannerGraph from_lifted(const LiftedMatrix& h, long long m_rows, long long m_cols);
    long long edge_count() const;
};

struct OracleBudgetExceeded : std::runtime_error {
    unsigned long long budget;
    explicit OracleBudgetExceeded(unsigned long long b)
        : std::runtime_error("oracle expansion budget of " + std::to_string(b) + " nodes exceeded"),
          budget(b) {}
};

struct OracleOptions {
    int max_half_length = 2;                      // counts cycles up to 2x this
    unsigned long long expansion_budget = 200'000'000;
    int workers = 1;
};

// Exact number of simple cycles of each even length up to the bound. Each
// cycle is counted once: rooted at its smallest vertex, orientation fixed by
// comparing the root's two cycle neighbours. Throws OracleBudgetExceeded
// when the search would expand more nodes than allowed.
CycleSpectrum brute_count_cycles(const TannerGraph& g, const OracleOptions& opt);

// Length of a shortest cycle via per-vertex BFS; nullopt for forests.
std::optional<int> bfs_girth(const TannerGraph& g);

}  // namespace cyclecount
