#pragma once

#include <cstdint>
#include <vector>

#include "cyclecount/base_matrix.hpp"

// Cycle chains: tailless backtrackless closed walks in the base graph,
// written as the alternating index sequence (i0, j0, i1, j1, ..., i{l-1}, j{l-1})
// with the wrap i_l = i0. A chain of half-length l describes candidate
// 2l-cycles of the lifted Tanner graph.

namespace cyclecount {

struct CycleChain {
    // seq[2t] = i_t (base row), seq[2t+1] = j_t (base column)
    std::vector<int16_t> seq;

    CycleChain() = default;
    explicit CycleChain(std::vector<int16_t> s) : seq(std::move(s)) {}
    CycleChain(std::initializer_list<int> xs) {
        seq.reserve(xs.size());
        for (int x : xs) seq.push_back(int16_t(x));
    }

    int half_length() const { return int(seq.size() / 2); }
    int row(int t) const { return seq[2 * size_t(t % half_length())]; }
    int col(int t) const { return seq[2 * size_t(t % half_length()) + 1]; }

    auto operator<=>(const CycleChain&) const = default;
};

// Structural validity against a block design: {i_t, i_{t+1}} within block
// j_t, adjacent rows distinct, adjacent columns distinct (cyclically).
bool chain_valid(const CycleChain& c, const BlockDesign& d);

// Alternating slope sum of the closure condition for circulant lifts:
// sum over t of (s(i_t, j_t) - s(i_{t+1}, j_t)) mod m. The chain closes in
// the lifted graph from every start row exactly when this is 0.
long long closure_residue_qc(const CycleChain& c, const SlopeAssignment& s);

// Closure state for affine lifts. p_products[h] is the shift-quotient
// product over steps h..l-1; residue is the affine offset accumulated by one
// full traversal. A start row r closes iff (p_products[0] - 1) * r == residue
// (mod m); `satisfied` reports whether any such r exists.
struct ApmClosure {
    std::vector<long long> p_products;
    long long residue = 0;
    bool satisfied = false;
};

ApmClosure closure_apm(const CycleChain& c, const SlopeAssignment& s, const ShiftAssignment& a);

// All start rows r whose traversal returns to r (empty when not satisfied).
std::vector<long long> closing_rows(const CycleChain& c, const SlopeAssignment& s,
                                    const ShiftAssignment& a);

// Row/column indices of the lifted walk's vertices when the chain is traced
// from row r of block (i0, j0). row_indices[t] is the row of the check node
// the walk occupies while inside block row i_t; col_indices[t] the column of
// the variable node inside block column j_t; return_row is the row reached
// after the full traversal (equals r exactly when the walk closes).
struct WalkTrace {
    long long start_row = 0;
    std::vector<long long> row_indices;
    std::vector<long long> col_indices;
    long long return_row = 0;

    bool closes() const { return return_row == start_row; }
};

WalkTrace walk_trace(const CycleChain& c, const SlopeAssignment& s, const ShiftAssignment& a,
                     long long r);

// True when the traced walk is a simple cycle: no repeated check node and no
// repeated variable node among its 2l vertices.
bool trace_is_simple(const CycleChain& c, const WalkTrace& w);

// A chain is allowable when its lifted closed walk is a simple cycle. For
// circulant lifts the trace translates uniformly with r, so the r = 0 trace
// decides. For affine lifts every closing start row must produce a simple
// cycle (and at least one closing row must exist).
bool is_allowable(const CycleChain& c, const SlopeAssignment& s, const ShiftAssignment& a);

// Independent form of the allowability test for circulant lifts, written as
// partial slope sums instead of trace comparisons: for every p < q the row
// sum over steps p..q-1 is nonzero when i_p = i_q, and likewise the column
// sums when j_p = j_q.
bool is_allowable_qc_delta(const CycleChain& c, const SlopeAssignment& s);

// The chain read against the traversal direction, anchored at i0:
// (i0, j{l-1}, i{l-1}, j{l-2}, ..., i1, j0).
CycleChain reverse_chain(const CycleChain& c);

// Canonical representative of a chain's isomorphism class: two chains are
// isomorphic when one is an even rotation of the other read forward or
// reversed. The key is the lexicographically minimal sequence over all 2l
// candidate readings; it is idempotent and deterministic.
struct CanonicalKey {
    std::vector<int16_t> key;
    auto operator<=>(const CanonicalKey&) const = default;
};

CanonicalKey canonical_key(const CycleChain& c);

bool is_isomorphic(const CycleChain& a, const CycleChain& b);

}  // namespace cyclecount
