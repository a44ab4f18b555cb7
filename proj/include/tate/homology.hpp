#pragma once

#include "tate/window.hpp"

namespace tate {

// Per-degree homology of a window (interior degrees only).
struct GradedHomologyZ {
    std::map<int, HomologyZ> at;
    int d_low = 0, d_high = 0;

    const HomologyZ& operator[](int d) const { return at.at(d); }
    FgAbGroup group(int d) const {
        auto it = at.find(d);
        return it == at.end() ? FgAbGroup::zero() : it->second.group;
    }
    bool all_zero() const {
        for (auto& [d, h] : at)
            if (!h.group.is_zero()) return false;
        return true;
    }
};

struct GradedHomologyQ {
    std::map<int, HomologyQ> at;
    int d_low = 0, d_high = 0;

    const HomologyQ& operator[](int d) const { return at.at(d); }
    long dim(int d) const {
        auto it = at.find(d);
        return it == at.end() ? 0 : it->second.dim;
    }
};

GradedHomologyZ homology_z(const WindowComplex& w);
GradedHomologyQ homology_q(const WindowComplex& w);

GradedHomologyZ homology_z(const ChainComplexZ& c);   // interior degrees of c
GradedHomologyQ homology_q(const ChainComplexQ& c);

// Induced map on homology of a degreewise chain map between windows; flags are
// recomputed per degree from the matrices.
struct HomologyMapZ {
    std::map<int, AbGroupMap> at;
    bool injective(int d) const { return at.count(d) ? at.at(d).injective() : true; }
    bool surjective(int d) const { return at.count(d) ? at.at(d).surjective() : true; }
};

struct HomologyMapQ {
    std::map<int, VectorSpaceMap> at;
    bool injective(int d) const { return at.count(d) ? at.at(d).injective() : true; }
    bool surjective(int d) const { return at.count(d) ? at.at(d).surjective() : true; }
};

HomologyMapZ induced_on_homology_z(const std::map<int, IntMat>& f, const GradedHomologyZ& src,
                                   const GradedHomologyZ& tgt);
HomologyMapQ induced_on_homology_q(const std::map<int, IntMat>& f, const GradedHomologyQ& src,
                                   const GradedHomologyQ& tgt);

// b1 <= b2 inclusion (same a-cut), a1 <= a2 projection (same b-cut).
HomologyMapZ induced_inclusion_z(const WindowComplex& w1, const WindowComplex& w2,
                                 const GradedHomologyZ& h1, const GradedHomologyZ& h2);
HomologyMapZ induced_projection_z(const WindowComplex& w1, const WindowComplex& w2,
                                  const GradedHomologyZ& h1, const GradedHomologyZ& h2);

// --- Long exact sequence of a degreewise split short exact triple (fields) ---

struct LesNode {
    int degree;
    std::string at;  // "A", "B" or "C"
    long dim_ker, dim_im;
    bool exact;
};

struct LesReport {
    bool chain_level_exact = true;
    bool all_exact = true;
    std::vector<LesNode> nodes;
    // connecting map ranks per degree: H_d(C) -> H_{d-1}(A)
    std::map<int, long> connecting_rank;
};

// i: A -> B, p: B -> C degreewise; requires split-exactness at chain level.
LesReport les_check(const WindowComplex& a, const WindowComplex& b, const WindowComplex& c,
                    const std::map<int, IntMat>& i, const std::map<int, IntMat>& p);

}  // namespace tate
