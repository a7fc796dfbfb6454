#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Base (projected) parity-check matrices, their column block designs, and
// the circulant/affine permutation lifts that expand them to full codes.
//
// Conventions used throughout the library:
//  - all row/column indices are 0-based, in code and in file formats;
//  - a lift of size m replaces each nonzero base entry (i,j) by the m x m
//    affine permutation with slope s(i,j) and shift a(i,j), mapping column
//    c to row a*c + s (mod m), and each zero entry by the m x m zero block;
//  - shift a == 1 everywhere is the circulant (quasi-cyclic) case;
//  - m == 1 is allowed and makes the lift equal to the base matrix.

namespace cyclecount {

struct BaseMatrix {
    int v = 0;  // rows
    int k = 0;  // columns
    std::vector<uint8_t> entries;  // v*k, row major, 0/1

    BaseMatrix() = default;
    BaseMatrix(int rows, int cols) : v(rows), k(cols), entries(size_t(rows) * cols, 0) {}

    uint8_t& at(int i, int j) { return entries[size_t(i) * k + j]; }
    uint8_t at(int i, int j) const { return entries[size_t(i) * k + j]; }

    int nonzero_count() const;
    // Throws std::invalid_argument on empty columns or bad dimensions.
    void validate() const;
};

// Ordered list of column blocks; blocks[j] holds the sorted row indices of
// the nonzero entries of column j. List semantics: order and repetition of
// blocks follow the matrix columns.
struct BlockDesign {
    std::vector<std::vector<int>> blocks;

    int column_count() const { return int(blocks.size()); }
    BaseMatrix to_matrix(int v) const;
};

BlockDesign blocks_from_matrix(const BaseMatrix& b);

// Slopes s(i,j) in Z_m, defined exactly on the nonzero base entries.
// Stored densely with -1 marking absent entries.
struct SlopeAssignment {
    long long m = 1;
    int v = 0, k = 0;
    std::vector<long long> slopes;  // v*k, -1 = no entry

    SlopeAssignment() = default;
    SlopeAssignment(const BaseMatrix& b, long long lift_size);

    bool has(int i, int j) const { return slopes[size_t(i) * k + j] >= 0; }
    long long at(int i, int j) const;  // throws if absent
    void set(int i, int j, long long s);
    void validate(const BaseMatrix& b) const;
};

// Shifts a(i,j) in Z_m*, same domain as the slopes. All-ones designates the
// quasi-cyclic case. For m == 1 the only residue is 0 and gcd(0,1)=1.
struct ShiftAssignment {
    long long m = 1;
    int v = 0, k = 0;
    std::vector<long long> shifts;  // v*k, -1 = no entry

    ShiftAssignment() = default;
    // All-ones over the nonzero entries of b.
    ShiftAssignment(const BaseMatrix& b, long long lift_size);

    bool has(int i, int j) const { return shifts[size_t(i) * k + j] >= 0; }
    long long at(int i, int j) const;
    void set(int i, int j, long long a);  // requires gcd(a, m) == 1
    bool all_ones() const;
    void validate(const BaseMatrix& b) const;
};

// Sparse lifted parity-check matrix: the set of 1-positions.
struct LiftedMatrix {
    long long rows = 0;
    long long cols = 0;
    std::vector<std::pair<long long, long long>> ones;  // sorted

    bool contains(long long r, long long c) const;
};

// The affine permutation of size m as a column -> row map.
// Requires 0 <= s < m, gcd(a, m) == 1.
std::vector<long long> apm_permutation(long long m, long long s, long long a);

LiftedMatrix lift(const BaseMatrix& b, const SlopeAssignment& s, const ShiftAssignment& a);

long long mod_inverse(long long a, long long m);  // throws if gcd(a,m) != 1

}  // namespace cyclecount
