#include "cyclecount/base_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace cyclecount {

namespace {

long long floor_mod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

}  // namespace

int BaseMatrix::nonzero_count() const {
    int n = 0;
    for (uint8_t e : entries) n += (e != 0);
    return n;
}

void BaseMatrix::validate() const {
    if (v < 1 || k < 1) throw std::invalid_argument("base matrix must have positive dimensions");
    if (entries.size() != size_t(v) * k) throw std::invalid_argument("base matrix entry count mismatch");
    for (int j = 0; j < k; ++j) {
        bool any = false;
        for (int i = 0; i < v; ++i) any = any || at(i, j);
        if (!any) throw std::invalid_argument("base matrix column " + std::to_string(j) + " is empty");
    }
}

BlockDesign blocks_from_matrix(const BaseMatrix& b) {
    b.validate();
    BlockDesign d;
    d.blocks.resize(b.k);
    for (int j = 0; j < b.k; ++j)
        for (int i = 0; i < b.v; ++i)
            if (b.at(i, j)) d.blocks[j].push_back(i);
    return d;
}

BaseMatrix BlockDesign::to_matrix(int v) const {
    BaseMatrix b(v, column_count());
    for (int j = 0; j < column_count(); ++j)
        for (int i : blocks[j]) b.at(i, j) = 1;
    return b;
}

SlopeAssignment::SlopeAssignment(const BaseMatrix& b, long long lift_size)
    : m(lift_size), v(b.v), k(b.k), slopes(size_t(b.v) * b.k, -1) {
    if (m < 1) throw std::invalid_argument("lift size must be positive");
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < k; ++j)
            if (b.at(i, j)) slopes[size_t(i) * k + j] = 0;
}

long long SlopeAssignment::at(int i, int j) const {
    long long s = slopes[size_t(i) * k + j];
    if (s < 0)
        throw std::invalid_argument("slope lookup outside domain: (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    return s;
}

void SlopeAssignment::set(int i, int j, long long s) {
    if (s < 0 || s >= m) throw std::invalid_argument("slope out of range");
    slopes[size_t(i) * k + j] = s;
}

void SlopeAssignment::validate(const BaseMatrix& b) const {
    if (v != b.v || k != b.k) throw std::invalid_argument("slope assignment shape mismatch");
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < k; ++j) {
            bool nz = b.at(i, j) != 0;
            if (nz != has(i, j))
                throw std::invalid_argument("slope domain mismatch at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            if (nz && (at(i, j) < 0 || at(i, j) >= m))
                throw std::invalid_argument("slope out of range at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
        }
}

ShiftAssignment::ShiftAssignment(const BaseMatrix& b, long long lift_size)
    : m(lift_size), v(b.v), k(b.k), shifts(size_t(b.v) * b.k, -1) {
    if (m < 1) throw std::invalid_argument("lift size must be positive");
    long long one = 1 % m;
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < k; ++j)
            if (b.at(i, j)) shifts[size_t(i) * k + j] = one;
}

long long ShiftAssignment::at(int i, int j) const {
    long long a = shifts[size_t(i) * k + j];
    if (a < 0)
        throw std::invalid_argument("shift lookup outside domain: (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
    return a;
}

void ShiftAssignment::set(int i, int j, long long a) {
    if (a < 0 || a >= m || std::gcd(a, m) != 1)
        throw std::invalid_argument("shift must satisfy gcd(a, m) = 1 and 0 <= a < m");
    shifts[size_t(i) * k + j] = a;
}

bool ShiftAssignment::all_ones() const {
    long long one = 1 % m;
    for (long long a : shifts)
        if (a >= 0 && a != one) return false;
    return true;
}

void ShiftAssignment::validate(const BaseMatrix& b) const {
    if (v != b.v || k != b.k) throw std::invalid_argument("shift assignment shape mismatch");
    for (int i = 0; i < v; ++i)
        for (int j = 0; j < k; ++j) {
            bool nz = b.at(i, j) != 0;
            if (nz != has(i, j))
                throw std::invalid_argument("shift domain mismatch at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
            if (nz && std::gcd(at(i, j), m) != 1)
                throw std::invalid_argument("shift not invertible at (" + std::to_string(i) + "," +
                                            std::to_string(j) + ")");
        }
}

bool LiftedMatrix::contains(long long r, long long c) const {
    return std::binary_search(ones.begin(), ones.end(), std::make_pair(r, c));
}

std::vector<long long> apm_permutation(long long m, long long s, long long a) {
    if (m < 1) throw std::invalid_argument("permutation size must be positive");
    if (s < 0 || s >= m) throw std::invalid_argument("slope out of range");
    if (std::gcd(floor_mod(a, m), m) != 1)
        throw std::invalid_argument("shift " + std::to_string(a) + " not coprime to " + std::to_string(m));
    std::vector<long long> col_to_row(m);
    for (long long c = 0; c < m; ++c) col_to_row[c] = floor_mod(a * c + s, m);
    return col_to_row;
}

LiftedMatrix lift(const BaseMatrix& b, const SlopeAssignment& s, const ShiftAssignment& a) {
    b.validate();
    s.validate(b);
    a.validate(b);
    if (s.m != a.m) throw std::invalid_argument("slope/shift lift sizes differ");
    long long m = s.m;
    LiftedMatrix h;
    h.rows = (long long)b.v * m;
    h.cols = (long long)b.k * m;
    h.ones.reserve(size_t(b.nonzero_count()) * m);
    for (int i = 0; i < b.v; ++i)
        for (int j = 0; j < b.k; ++j) {
            if (!b.at(i, j)) continue;
            auto perm = apm_permutation(m, s.at(i, j), a.at(i, j));
            for (long long c = 0; c < m; ++c)
                h.ones.emplace_back(i * m + perm[c], j * m + c);
        }
    std::sort(h.ones.begin(), h.ones.end());
    return h;
}

long long mod_inverse(long long a, long long m) {
    long long t = 0, new_t = 1;
    long long r = m, new_r = floor_mod(a, m);
    while (new_r != 0) {
        long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r > 1) throw std::invalid_argument("value " + std::to_string(a) + " has no inverse mod " + std::to_string(m));
    return floor_mod(t, m);
}

}  // namespace cyclecount
