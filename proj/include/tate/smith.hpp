#pragma once

#include "tate/matrix.hpp"

namespace tate {

// U * A * V = S with U, V unimodular and S diagonal, factors in a divisibility
// chain d1 | d2 | ... | dr (all positive), zeros after.
struct SmithDecomposition {
    IntMat U, S, V;
    IntMat Uinv, Vinv;
    std::vector<Int> invariant_factors;  // the nonzero diagonal of S

    int rank() const { return int(invariant_factors.size()); }
};

SmithDecomposition smith_normal_form(const IntMat& a);

// Basis of the kernel lattice {x : a*x = 0} as columns (saturated).
IntMat int_kernel(const IntMat& a);

// Integral solve a*x = b for all columns of b; nullopt if no integral solution.
std::optional<IntMat> int_solve(const IntMat& a, const IntMat& b);

// Lattice basis of the column space im(a), as columns (d_i * Uinv e_i).
IntMat int_image(const IntMat& a);

// Is the subgroup generated by columns of `a` equal to the one generated by
// columns of `b` (inside Z^n)?  Mutual integral containment.
bool same_lattice(const IntMat& a, const IntMat& b);

}  // namespace tate
