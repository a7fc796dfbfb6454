#include "cyclecount/chains.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cyclecount {

namespace {

long long floor_mod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

void require_shape(const CycleChain& c) {
    if (c.seq.size() < 4 || c.seq.size() % 2 != 0)
        throw std::invalid_argument("cycle chain needs at least two (row, column) pairs");
}

}  // namespace

bool chain_valid(const CycleChain& c, const BlockDesign& d) {
    if (c.seq.size() < 4 || c.seq.size() % 2 != 0) return false;
    int l = c.half_length();
    for (int t = 0; t < l; ++t) {
        int i0 = c.row(t), i1 = c.row(t + 1), j = c.col(t);
        if (i0 == i1) return false;
        if (j == c.col(t + 1)) return false;
        if (j < 0 || j >= d.column_count()) return false;
        const auto& blk = d.blocks[j];
        if (!std::binary_search(blk.begin(), blk.end(), i0)) return false;
        if (!std::binary_search(blk.begin(), blk.end(), i1)) return false;
    }
    return true;
}

long long closure_residue_qc(const CycleChain& c, const SlopeAssignment& s) {
    require_shape(c);
    int l = c.half_length();
    long long acc = 0;
    for (int t = 0; t < l; ++t)
        acc += s.at(c.row(t), c.col(t)) - s.at(c.row(t + 1), c.col(t));
    return floor_mod(acc, s.m);
}

ApmClosure closure_apm(const CycleChain& c, const SlopeAssignment& s, const ShiftAssignment& a) {
    require_shape(c);
    if (s.m != a.m) throw std::invalid_argument("slope/shift lift sizes differ");
    long long m = s.m;
    int l = c.half_length();
    // q_t = a(i_{t+1}, j_t) * a(i_t, j_t)^-1; p_h = product of q_t for t >= h.
    std::vector<long long> q(l);
    for (int t = 0; t < l; ++t)
        q[t] = floor_mod(a.at(c.row(t + 1), c.col(t)) * mod_inverse(a.at(c.row(t), c.col(t)), m), m);
    ApmClosure out;
    out.p_products.assign(l, 1 % m);
    long long p_next = 1 % m;  // p_l, the empty product
    for (int h = l - 1; h >= 0; --h) {
        out.p_products[h] = floor_mod(q[h] * p_next, m);
        p_next = out.p_products[h];
    }
    long long res = 0;
    for (int t = 0; t < l; ++t) {
        long long p_t = out.p_products[t];
        long long p_t1 = (t + 1 < l) ? out.p_products[t + 1] : (1 % m);
        res += p_t * s.at(c.row(t), c.col(t)) - p_t1 * s.at(c.row(t + 1), c.col(t));
    }
    out.residue = floor_mod(res, m);
    long long g = std::gcd(floor_mod(out.p_products[0] - 1, m), m);
    if (g == 0) g = m;  // p0 == 1: solvable iff residue == 0 (mod m)
    out.satisfied = (out.residue % g) == 0;
    return out;
}

std::vector<long long> closing_rows(const CycleChain& c, const SlopeAssignment& s,
                                    const ShiftAssignment& a) {
    ApmClosure cl = closure_apm(c, s, a);
    std::vector<long long> rows;
    if (!cl.satisfied) return rows;
    long long m = s.m;
    // Solve (p0 - 1) r == residue (mod m).
    long long coef = floor_mod(cl.p_products[0] - 1, m);
    long long g = std::gcd(coef, m);
    if (g == 0) g = m;
    long long m2 = m / g;
    long long r0 = (coef == 0) ? 0 : floor_mod((cl.residue / g) * mod_inverse(coef / g, m2), m2);
    rows.reserve(g);
    for (long long t = 0; t < g; ++t) rows.push_back(r0 + t * m2);
    std::sort(rows.begin(), rows.end());
    return rows;
}

WalkTrace walk_trace(const CycleChain& c, const SlopeAssignment& s, const ShiftAssignment& a,
                     long long r) {
    require_shape(c);
    long long m = s.m;
    if (r < 0 || r >= m) throw std::invalid_argument("start row out of range");
    int l = c.half_length();
    WalkTrace w;
    w.start_row = r;
    w.row_indices.resize(l);
    w.col_indices.resize(l);
    long long row = r;
    for (int t = 0; t < l; ++t) {
        w.row_indices[t] = row;
        long long a_cur = a.at(c.row(t), c.col(t));
        long long a_next = a.at(c.row(t + 1), c.col(t));
        long long col = floor_mod(mod_inverse(a_cur, m) * (row - s.at(c.row(t), c.col(t))), m);
        w.col_indices[t] = col;
        row = floor_mod(a_next * col + s.at(c.row(t + 1), c.col(t)), m);
    }
    w.return_row = row;
    return w;
}

bool trace_is_simple(const CycleChain& c, const WalkTrace& w) {
    int l = c.half_length();
    for (int p = 0; p < l; ++p)
        for (int q = p + 1; q < l; ++q) {
            if (c.row(p) == c.row(q) && w.row_indices[p] == w.row_indices[q]) return false;
            if (c.col(p) == c.col(q) && w.col_indices[p] == w.col_indices[q]) return false;
        }
    return true;
}

bool is_allowable(const CycleChain& c, const SlopeAssignment& s, const ShiftAssignment& a) {
    if (a.all_ones()) {
        if (closure_residue_qc(c, s) != 0) return false;
        WalkTrace w = walk_trace(c, s, a, 0);
        return trace_is_simple(c, w);
    }
    auto rows = closing_rows(c, s, a);
    if (rows.empty()) return false;
    for (long long r : rows) {
        WalkTrace w = walk_trace(c, s, a, r);
        if (!trace_is_simple(c, w)) return false;
    }
    return true;
}

bool is_allowable_qc_delta(const CycleChain& c, const SlopeAssignment& s) {
    require_shape(c);
    int l = c.half_length();
    long long m = s.m;
    // Prefix sums so that row_sum(p, q) = sum over steps p..q-1 of
    // (s(i_{t+1}, j_t) - s(i_t, j_t)), and the column analogue.
    std::vector<long long> rowpre(l + 1, 0), colpre(l + 1, 0);
    for (int t = 0; t < l; ++t) {
        rowpre[t + 1] = rowpre[t] + s.at(c.row(t + 1), c.col(t)) - s.at(c.row(t), c.col(t));
        colpre[t + 1] = colpre[t] + s.at(c.row(t + 1), c.col(t + 1)) - s.at(c.row(t + 1), c.col(t));
    }
    for (int p = 0; p < l; ++p)
        for (int q = p + 1; q < l; ++q) {
            if (c.row(p) == c.row(q) && floor_mod(rowpre[q] - rowpre[p], m) == 0) return false;
            if (c.col(p) == c.col(q) && floor_mod(colpre[q] - colpre[p], m) == 0) return false;
        }
    return true;
}

CycleChain reverse_chain(const CycleChain& c) {
    int l = c.half_length();
    CycleChain out;
    out.seq.resize(c.seq.size());
    for (int t = 0; t < l; ++t) {
        out.seq[2 * size_t(t)] = int16_t(c.row(-t + l));
        out.seq[2 * size_t(t) + 1] = int16_t(c.col(-t - 1 + 2 * l));
    }
    return out;
}

CanonicalKey canonical_key(const CycleChain& c) {
    require_shape(c);
    int l = c.half_length();
    size_t n = c.seq.size();
    CycleChain rev = reverse_chain(c);
    std::vector<int16_t> best;
    std::vector<int16_t> cand(n);
    for (const auto* base : {&c.seq, &rev.seq}) {
        for (int t = 0; t < l; ++t) {
            for (size_t idx = 0; idx < n; ++idx) cand[idx] = (*base)[(2 * size_t(t) + idx) % n];
            if (best.empty() || cand < best) best = cand;
        }
    }
    return CanonicalKey{std::move(best)};
}

bool is_isomorphic(const CycleChain& a, const CycleChain& b) {
    if (a.seq.size() != b.seq.size()) return false;
    return canonical_key(a) == canonical_key(b);
}

}  // namespace cyclecount
