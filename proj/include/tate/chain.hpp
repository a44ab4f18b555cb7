#pragma once

#include "tate/fg_group.hpp"
#include "tate/smith.hpp"

#include <optional>
#include <stdexcept>

namespace tate {

struct TateError : std::runtime_error {
    std::string code;
    TateError(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// H = ker(d_out) / im(d_in) over Z, with cycle representatives for each
// normal-form summand and exact coordinates for arbitrary cycles.
// Summand order: torsion ascending by divisibility, then free.
class HomologyZ {
  public:
    FgAbGroup group;
    IntMat reps;               // ambient x summands
    std::vector<Int> orders;   // per summand: d>1 for Z/d, 0 for Z

    // Coordinates of a cycle's class; torsion entries reduced to [0, d).
    std::vector<Int> coords(const std::vector<Int>& cycle) const;
    bool class_is_zero(const std::vector<Int>& cycle) const;
    bool is_cycle(const std::vector<Int>& chain) const;

    int ambient_dim() const { return kernel_basis_.rows(); }

    // internal data, exposed for the window machinery
    IntMat kernel_basis_;  // ambient x k
    IntMat ux_;            // k x k
    std::vector<Int> all_orders_;  // length k (1-entries included)
    std::vector<int> live_;        // indices of non-trivial summands
};

// Same over Q; group data is just the dimension.
class HomologyQ {
  public:
    long dim = 0;
    RatMat reps;  // ambient x dim

    std::vector<Rat> coords(const std::vector<Rat>& cycle) const;
    bool class_is_zero(const std::vector<Rat>& cycle) const;
    bool is_cycle(const std::vector<Rat>& chain) const;

    int ambient_dim() const { return kernel_basis_.rows(); }

    RatMat kernel_basis_;  // ambient x k
    RatMat winv_;          // k x k; class coords are the trailing rows of winv_*y
    int img_rank_ = 0;
};

// d_in: C_{d+1} -> C_d, d_out: C_d -> C_{d-1}; requires d_out*d_in = 0.
HomologyZ homology_of_pair_z(const IntMat& d_in, const IntMat& d_out);
HomologyQ homology_of_pair_q(const RatMat& d_in, const RatMat& d_out);

// Map between f.g. abelian groups presented in invariant-factor coordinates:
// entries of `matrix` act on summand coordinates, target-torsion reduced.
struct AbGroupMap {
    FgAbGroup source, target;
    std::vector<Int> source_orders, target_orders;
    IntMat matrix;  // target summands x source summands

    bool injective() const;
    bool surjective() const;
    bool is_zero() const;
    std::vector<Int> apply(const std::vector<Int>& x) const;
};

struct VectorSpaceMap {
    long source_dim = 0, target_dim = 0;
    RatMat matrix;

    bool injective() const { return rank(matrix) == source_dim; }
    bool surjective() const { return rank(matrix) == target_dim; }
    bool is_zero() const { return matrix.is_zero(); }
};

// Induced map on homology of a chain map f (degree-d block): source and target
// homology presentations must come from matching pairs. Throws NotChainMap if
// the commutation f_{d-1} dIn_src = dIn_tgt ... is violated by the caller's data
// (checked where the caller provides the adjacent blocks).
AbGroupMap induced_map_z(const HomologyZ& src, const HomologyZ& tgt, const IntMat& f);
VectorSpaceMap induced_map_q(const HomologyQ& src, const HomologyQ& tgt, const RatMat& f);

// f_low * d_src = d_tgt * f_high (the chain-map condition in one degree).
bool commutes_z(const IntMat& f_low, const IntMat& d_src, const IntMat& d_tgt, const IntMat& f_high);

}  // namespace tate
