#include "cyclecount/counting.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace cyclecount {

namespace {

long long floor_mod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

struct KeyHash {
    size_t operator()(const std::vector<int16_t>& v) const {
        // FNV-1a over the raw entries
        size_t h = 14695981039346656037ull;
        for (int16_t x : v) {
            h ^= size_t(uint16_t(x));
            h *= 1099511628211ull;
        }
        return h;
    }
};

using LocalCensus = std::map<int, std::unordered_map<std::vector<int16_t>, unsigned long long, KeyHash>>;

// One enumeration step: the design prefix that ends with the u-th element of
// column p (u >= 1), whose chains must traverse the newly added entry.
struct Step {
    int col = 0;
    int new_index = 0;  // index u of the new row within the column block
};

struct Succ {
    int16_t col;
    int16_t row;
    int32_t delta;  // s(cur, col) - s(row, col)  mod m
};

// Flattened adjacency of one design prefix: per base row, the vertical moves
// available to it.
struct PrefixAdj {
    std::vector<std::vector<Succ>> succ;
    int start_row = 0;  // newly added element b_u
    int start_col = 0;  // column p
    std::vector<int> partners;  // earlier elements of column p
};

PrefixAdj build_prefix(const BlockDesign& d, const SlopeAssignment& s, const Step& st) {
    PrefixAdj adj;
    int v = 0;
    for (const auto& blk : d.blocks)
        for (int i : blk) v = std::max(v, i + 1);
    adj.succ.resize(v);
    long long m = s.m;
    auto add_col = [&](int c, int limit) {
        const auto& blk = d.blocks[c];
        int n = limit < 0 ? int(blk.size()) : limit;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                int i = blk[x], i2 = blk[y];
                long long delta = floor_mod(s.at(i, c) - s.at(i2, c), m);
                adj.succ[i].push_back(Succ{int16_t(c), int16_t(i2), int32_t(delta)});
            }
    };
    for (int c = 0; c < st.col; ++c) add_col(c, -1);
    add_col(st.col, st.new_index + 1);
    adj.start_row = d.blocks[st.col][st.new_index];
    adj.start_col = st.col;
    adj.partners.assign(d.blocks[st.col].begin(), d.blocks[st.col].begin() + st.new_index);
    return adj;
}

// Depth-first extension of partial chains. Chains are grown one vertical
// move at a time; every structural closure back to the start row is handed
// to the evaluator, and growth continues through it so one traversal serves
// all lengths up to the bound.
template <typename Evaluator>
class ChainSearch {
public:
    ChainSearch(const PrefixAdj& adj, int max_half_length, Evaluator& eval)
        : adj_(adj), lmax_(max_half_length), eval_(eval) {
        seq_.resize(2 * size_t(lmax_));
    }

    void run(int first_partner) {
        if (lmax_ < 2) return;
        int i0 = adj_.start_row, j0 = adj_.start_col, i1 = first_partner;
        seq_[0] = int16_t(i0);
        seq_[1] = int16_t(j0);
        seq_[2] = int16_t(i1);
        long long m_delta = 0;
        for (const Succ& e : adj_.succ[i0])
            if (e.col == j0 && e.row == i1) m_delta = e.delta;
        extend(i1, j0, 1, m_delta);
    }

private:
    void extend(int cur, int last_col, int depth, long long residue) {
        const int i0 = adj_.start_row, j0 = adj_.start_col;
        const bool more = depth + 1 < lmax_;
        for (const Succ& e : adj_.succ[cur]) {
            if (e.col == last_col) continue;
            long long r2 = residue + e.delta;
            if (e.row == i0 && e.col != j0) {
                seq_[2 * size_t(depth) + 1] = e.col;
                eval_.closed(seq_.data(), depth + 1, r2);
            }
            if (more) {
                seq_[2 * size_t(depth) + 1] = e.col;
                seq_[2 * size_t(depth) + 2] = e.row;
                extend(e.row, e.col, depth + 1, r2);
            }
        }
    }

    const PrefixAdj& adj_;
    int lmax_;
    Evaluator& eval_;
    std::vector<int16_t> seq_;
};

// Circulant evaluator: zero residue, then allowability of the r = 0 trace,
// then canonical novelty; count = m / n.
struct QcEvaluator {
    const SlopeAssignment* s;
    const ShiftAssignment* ones;
    long long m;
    LocalCensus census;

    void closed(const int16_t* seq, int l, long long residue) {
        if (residue % m != 0) return;
        CycleChain c(std::vector<int16_t>(seq, seq + 2 * size_t(l)));
        if (!trace_is_simple(c, walk_trace(c, *s, *ones, 0))) return;
        CanonicalKey key = canonical_key(c);
        auto& slot = census[l];
        if (slot.find(key.key) != slot.end()) return;
        Repetition rep = repetition(c);
        if (m % rep.n != 0)
            throw std::logic_error("repetition count does not divide the lift size");
        slot.emplace(std::move(key.key), (unsigned long long)(m / rep.n));
    }
};

// Affine evaluator: closure per the affine condition, canonical novelty,
// then a census over closing start rows with cycles identified by edge set.
struct ApmEvaluator {
    const SlopeAssignment* s;
    const ShiftAssignment* a;
    long long m;
    LocalCensus census;

    void closed(const int16_t* seq, int l, long long /*qc_residue*/) {
        CycleChain c(std::vector<int16_t>(seq, seq + 2 * size_t(l)));
        ApmClosure cl = closure_apm(c, *s, *a);
        if (!cl.satisfied) return;
        CanonicalKey key = canonical_key(c);
        auto& slot = census[l];
        if (slot.find(key.key) != slot.end()) return;
        slot.emplace(std::move(key.key), count_cycles(c));
    }

    unsigned long long count_cycles(const CycleChain& c) const {
        int l = c.half_length();
        std::set<std::vector<long long>> seen;
        for (long long r : closing_rows(c, *s, *a)) {
            WalkTrace w = walk_trace(c, *s, *a, r);
            if (!trace_is_simple(c, w)) continue;
            // Edge set of the lifted cycle; a simple cycle is its edge set.
            std::vector<long long> edges;
            edges.reserve(2 * size_t(l));
            for (int t = 0; t < l; ++t) {
                long long var = (long long)c.col(t) * m + w.col_indices[t];
                long long chk0 = (long long)c.row(t) * m + w.row_indices[t];
                long long next_row = (t + 1 < l) ? w.row_indices[t + 1] : w.return_row;
                long long chk1 = (long long)c.row(t + 1) * m + next_row;
                edges.push_back(chk0 * (long long)(s->k) * m + var);
                edges.push_back(chk1 * (long long)(s->k) * m + var);
            }
            std::sort(edges.begin(), edges.end());
            seen.insert(std::move(edges));
        }
        return seen.size();
    }
};

template <typename Evaluator>
ChainCensus run_enumeration(const BlockDesign& design, const SlopeAssignment& slopes,
                            const EnumerateOptions& opt, Evaluator prototype) {
    if (opt.max_half_length < 2) throw std::invalid_argument("half-length bound must be at least 2");
    if (opt.workers < 1) throw std::invalid_argument("worker count must be positive");

    std::vector<Step> steps;
    for (int c = 0; c < design.column_count(); ++c)
        for (int u = 1; u < int(design.blocks[c].size()); ++u) steps.push_back(Step{c, u});

    struct Task {
        int step;
        int partner;
    };
    std::vector<Task> tasks;
    for (int si = 0; si < int(steps.size()); ++si)
        for (int x = 0; x < steps[si].new_index; ++x) tasks.push_back(Task{si, x});

    std::vector<PrefixAdj> prefixes;
    prefixes.reserve(steps.size());
    for (const Step& st : steps) prefixes.push_back(build_prefix(design, slopes, st));

    int workers = std::max(1, std::min<int>(opt.workers, int(tasks.size())));
    std::vector<LocalCensus> partials(size_t(workers));
    std::atomic<size_t> next{0};
    auto work = [&](int w) {
        Evaluator eval = prototype;
        for (;;) {
            size_t t = next.fetch_add(1);
            if (t >= tasks.size()) break;
            const Task& task = tasks[t];
            const PrefixAdj& adj = prefixes[size_t(task.step)];
            ChainSearch<Evaluator> search(adj, opt.max_half_length, eval);
            search.run(adj.partners[size_t(task.partner)]);
        }
        partials[size_t(w)] = std::move(eval.census);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(size_t(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    // Merge: counts are pure functions of the chain, so collisions agree.
    LocalCensus merged;
    for (auto& part : partials)
        for (auto& [l, slot] : part) {
            auto& dst = merged[l];
            for (auto& [key, count] : slot) dst.emplace(key, count);
        }

    ChainCensus out;
    for (auto& [l, slot] : merged) {
        auto& dst = out[l];
        dst.reserve(slot.size());
        for (auto& [key, count] : slot)
            if (count > 0) dst.emplace_back(CycleChain(key), count);
        std::sort(dst.begin(), dst.end());
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
    return out;
}

CycleSpectrum census_to_spectrum(const ChainCensus& census, int max_half_length) {
    CycleSpectrum spec;
    spec.bound = 2 * max_half_length;
    for (const auto& [l, chains] : census) {
        unsigned long long total = 0;
        for (const auto& [chain, count] : chains) total += count;
        if (total > 0) spec.counts[2 * l] = total;
    }
    return spec;
}

ShiftAssignment all_ones_shifts(const SlopeAssignment& s) {
    ShiftAssignment ones;
    ones.m = s.m;
    ones.v = s.v;
    ones.k = s.k;
    ones.shifts.assign(s.slopes.size(), -1);
    for (size_t idx = 0; idx < s.slopes.size(); ++idx)
        if (s.slopes[idx] >= 0) ones.shifts[idx] = 1 % s.m;
    return ones;
}

}  // namespace

long long period(const std::set<long long>& a_set, long long m) {
    if (a_set.empty()) throw std::invalid_argument("period of an empty set is undefined");
    for (long long t = 1; t <= m; ++t) {
        if (m % t != 0) continue;
        bool ok = true;
        for (long long x : a_set)
            if (!a_set.count((x + t) % m)) {
                ok = false;
                break;
            }
        if (ok) return t;
    }
    throw std::logic_error("no period found");  // unreachable: T = m always works
}

Repetition repetition(const CycleChain& c) {
    int l = c.half_length();
    for (int e = 1; e < l; ++e) {
        bool match = true;
        for (int t = 0; t < l && match; ++t)
            match = c.row(t + e) == c.row(t) && c.col(t + e) == c.col(t);
        if (!match) continue;
        Repetition rep;
        rep.n = l / e;
        for (int t = 0; t < e; ++t) {
            rep.invariant_pairs.emplace(c.row(t), c.col(t));
            rep.invariant_pairs.emplace(c.row(t + 1), c.col(t));
        }
        return rep;
    }
    return Repetition{};
}

long long cycles_per_chain(const CycleChain& c, const SlopeAssignment& s) {
    ShiftAssignment ones = all_ones_shifts(s);
    if (!is_allowable(c, s, ones))
        throw std::invalid_argument("cycle count is defined for allowable chains only");
    Repetition rep = repetition(c);
    if (s.m % rep.n != 0) throw std::logic_error("repetition count does not divide the lift size");
    return s.m / rep.n;
}

std::map<std::pair<int, int>, std::set<long long>> block_row_sets(const CycleChain& c,
                                                                  const SlopeAssignment& s) {
    int l = c.half_length();
    long long m = s.m;
    std::map<std::pair<int, int>, std::set<long long>> out;
    long long sum = 0, prev = 0;
    for (int t = 0; t < l; ++t) {
        prev = sum;
        sum = floor_mod(sum + s.at(c.row(t), c.col(t)) - s.at(c.row(t + 1), c.col(t)), m);
        out[{c.row(t), c.col(t)}].insert(sum);
        out[{c.row(t + 1), c.col(t)}].insert(prev);
    }
    return out;
}

ChainAnalysis analyze_chain(const CycleChain& c, const SlopeAssignment& s) {
    ChainAnalysis out;
    out.chain = c;
    out.residue = closure_residue_qc(c, s);
    ShiftAssignment ones = all_ones_shifts(s);
    out.allowable = out.residue == 0 && is_allowable(c, s, ones);
    Repetition rep = repetition(c);
    out.invariant_pairs = std::move(rep.invariant_pairs);
    out.n = rep.n;
    out.cycles = out.allowable ? s.m / rep.n : 0;
    out.row_sets = block_row_sets(c, s);
    return out;
}

ChainCensus enumerate_chains(const BlockDesign& design, const SlopeAssignment& slopes,
                             const EnumerateOptions& opt) {
    ShiftAssignment ones = all_ones_shifts(slopes);
    QcEvaluator eval{&slopes, &ones, slopes.m, {}};
    return run_enumeration(design, slopes, opt, eval);
}

ChainCensus enumerate_chains_apm(const BlockDesign& design, const SlopeAssignment& slopes,
                                 const ShiftAssignment& shifts, const EnumerateOptions& opt) {
    if (shifts.all_ones()) return enumerate_chains(design, slopes, opt);
    ApmEvaluator eval{&slopes, &shifts, slopes.m, {}};
    return run_enumeration(design, slopes, opt, eval);
}

CycleSpectrum cycle_spectrum(const BaseMatrix& b, const SlopeAssignment& s,
                             const EnumerateOptions& opt) {
    s.validate(b);
    return census_to_spectrum(enumerate_chains(blocks_from_matrix(b), s, opt), opt.max_half_length);
}

CycleSpectrum apm_cycle_spectrum(const BaseMatrix& b, const SlopeAssignment& s,
                                 const ShiftAssignment& a, const EnumerateOptions& opt) {
    s.validate(b);
    a.validate(b);
    return census_to_spectrum(enumerate_chains_apm(blocks_from_matrix(b), s, a, opt),
                              opt.max_half_length);
}

std::optional<int> girth(const BaseMatrix& b, const SlopeAssignment& s, const ShiftAssignment& a,
                         int l_hint, int workers) {
    if (l_hint < 2) throw std::invalid_argument("girth bound must be at least 2");
    for (int l = 2; l <= l_hint; ++l) {
        CycleSpectrum spec = apm_cycle_spectrum(b, s, a, EnumerateOptions{l, workers});
        if (auto g = spec.girth()) return g;
    }
    return std::nullopt;
}

}  // namespace cyclecount
