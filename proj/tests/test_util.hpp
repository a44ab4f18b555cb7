#pragma once

#include "tate/matrix.hpp"

#include <random>

namespace tate::testutil {

// Deterministic RNG for property-style suites.
inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng());
}

inline IntMat random_int_matrix(int rows, int cols, int lo, int hi) {
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rand_int(lo, hi);
    return m;
}

// Random unimodular matrix: a product of shears and swaps.
inline IntMat random_unimodular(int n, int ops = 12) {
    IntMat m = IntMat::identity(n);
    for (int t = 0; t < ops && n > 1; ++t) {
        int i = rand_int(0, n - 1), j = rand_int(0, n - 1);
        if (i == j) continue;
        Int c = rand_int(-2, 2);
        for (int k = 0; k < n; ++k) m(i, k) += c * m(j, k);
    }
    return m;
}

}  // namespace tate::testutil
