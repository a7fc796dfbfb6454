#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "cyclecount/chains.hpp"

// Exact cycle counting from the base matrix alone. Allowable chains are
// enumerated once per isomorphism class by an incremental column-by-column
// search, and each class is expanded to its exact lifted-cycle multiplicity:
// m / n(L) for circulant lifts, a per-start-row census for affine lifts.
// Cost depends on the base matrix and the length bound, not on m.

namespace cyclecount {

// Smallest T > 0 with A + T = A in Z_m; always divides m.
long long period(const std::set<long long>& a_set, long long m);

// Self-repetition of the pair sequence: n = l / e for the smallest proper
// cyclic period e (n = 1 when none), and the pairs of one period, covering
// both the (i_t, j_t) entries and the (i_{t+1}, j_t) exits.
struct Repetition {
    std::set<std::pair<int, int>> invariant_pairs;  // empty when n == 1
    int n = 1;
};

Repetition repetition(const CycleChain& c);

// Exact number of lifted cycles an allowable chain represents under a
// circulant lift: m / n(L). Rejects chains that are not allowable.
long long cycles_per_chain(const CycleChain& c, const SlopeAssignment& s);

// Per-block row-index sets A(i, j) built from the running slope-difference
// sums of one traversal: the entry pair of step t collects the sum through
// step t, the exit pair the sum through step t-1.
std::map<std::pair<int, int>, std::set<long long>> block_row_sets(const CycleChain& c,
                                                                  const SlopeAssignment& s);

// Everything the counting theory attaches to one chain.
struct ChainAnalysis {
    CycleChain chain;
    long long residue = 0;
    bool allowable = false;
    std::set<std::pair<int, int>> invariant_pairs;
    int n = 1;
    long long cycles = 0;
    std::map<std::pair<int, int>, std::set<long long>> row_sets;
};

ChainAnalysis analyze_chain(const CycleChain& c, const SlopeAssignment& s);

struct CycleSpectrum {
    int bound = 0;                         // largest cycle length examined
    std::map<int, unsigned long long> counts;  // nonzero multiplicities, keyed by even length

    std::optional<int> girth() const {
        for (const auto& [len, n] : counts)
            if (n > 0) return len;
        return std::nullopt;
    }
    unsigned long long at(int len) const {
        auto it = counts.find(len);
        return it == counts.end() ? 0 : it->second;
    }
};

struct EnumerateOptions {
    int max_half_length = 2;
    int workers = 1;
};

// One canonical chain per isomorphism class together with its exact lifted
// cycle count (m/n for circulant lifts; the per-start-row census when
// `shifts` is present and not all ones). Classes whose count is zero are
// dropped. Keys are half-lengths; chains are sorted.
using ChainCensus = std::map<int, std::vector<std::pair<CycleChain, unsigned long long>>>;

ChainCensus enumerate_chains(const BlockDesign& design, const SlopeAssignment& slopes,
                             const EnumerateOptions& opt);
ChainCensus enumerate_chains_apm(const BlockDesign& design, const SlopeAssignment& slopes,
                                 const ShiftAssignment& shifts, const EnumerateOptions& opt);

CycleSpectrum cycle_spectrum(const BaseMatrix& b, const SlopeAssignment& s,
                             const EnumerateOptions& opt);
CycleSpectrum apm_cycle_spectrum(const BaseMatrix& b, const SlopeAssignment& s,
                                 const ShiftAssignment& a, const EnumerateOptions& opt);

// Smallest cycle length with nonzero multiplicity, searching half-lengths
// 2..l_hint; nullopt when the bound is exhausted.
std::optional<int> girth(const BaseMatrix& b, const SlopeAssignment& s, const ShiftAssignment& a,
                         int l_hint, int workers = 1);

}  // namespace cyclecount
