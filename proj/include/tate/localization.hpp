#pragma once

#include "tate/matrix.hpp"
#include "tate/chain.hpp"

#include <map>
#include <optional>

namespace tate {

// Finite-dimensional vector space with an endomorphism T and optionally a
// boundary operator commuting with T (a Tate triple), possibly graded.
struct LinearEndoSpace {
    int dim = 0;
    RatMat T;
    std::optional<RatMat> boundary;
    std::optional<std::vector<int>> degrees;  // grading of the basis

    bool is_tate_triple() const {
        if (!boundary) return false;
        return (*boundary * *boundary).is_zero() && (T * *boundary == *boundary * T);
    }
    void require_tate_triple() const {
        if (!is_tate_triple()) throw TateError("NotTateTriple", "need d*d = 0 and T*d = d*T");
    }
};

// V_T = eventual image of T, with the induced bijective endomorphism.
struct EventualImage {
    RatMat basis;       // columns span V_T inside V
    int stabilized_at;  // smallest j with im T^j = im T^{j+1}
    RatMat induced_t;   // in basis coordinates; bijective
    long dim() const { return basis.cols(); }
};

EventualImage eventual_image(const RatMat& t, int probe_depth = -1);

// V^T in its finite-dimensional normal form: V^T ~ V_T via the evaluation
// v -> v_1, which is injective here; T-bar acts as the inverse of T|V_T.
struct LocalizationResult {
    EventualImage vt;
    RatMat p;  // the evaluation map V^T -> V in these coordinates (inclusion)
    bool p_injective = false;
    bool p_iso = false;

    RatMat tbar() const { return vt.induced_t; }
    // Q_k : V^T_k -> V, image V_T for every k, injective, T Q_k = Q_k T_k.
    RatMat q_map(int k) const;
};

LocalizationResult localize(const LinearEndoSpace& v);

// Both sides of the localization comparison for a Tate triple:
//   left  = lim_k H(V_k^T, d_k)   (== H(V_T, d|V_T), the tower maps being isos)
//   right = H(V, d)^{HT}          (eventual image of the induced HT)
struct TateTripleComparison {
    long left_dim = 0;
    long right_dim = 0;
    bool t_surjective = false;
    bool tower_maps_iso = false;
    bool equal = false;
};

TateTripleComparison tate_triple_compare(const LinearEndoSpace& v, int kmax = 6);

// Degree of a nonzero homogeneous element of V^T for a graded triple where T
// has degree d: deg(v) = deg(v_i) + i*d, independent of i.
int graded_degree(const LinearEndoSpace& v, const LocalizationResult& loc,
                  const std::vector<Rat>& v1, int t_degree, int chain_length = 6);

// --- The locally finite counterexample ---------------------------------------

// Truncation at N of the space with basis e_{i,j}, f_{i,j} (i <= j), with
// T e_{i,j} = e_{i-1,j}, d f_{i,j} = e_{i,j} + e_{i,j+1}; f_{i,N} is excluded
// so every retained boundary rule stays inside the truncation.
struct CounterexampleModel {
    int n = 0;
    LinearEndoSpace space;
    std::map<std::pair<int, int>, int> e_index, f_index;

    int e(int i, int j) const { return e_index.at({i, j}); }
    int f(int i, int j) const { return f_index.at({i, j}); }
};

CounterexampleModel counterexample_model(int n);

struct CounterexampleReport {
    bool d_squared_zero = false;
    bool commutes = false;
    bool power_images_match = false;   // im(T^k|E) = span{e_{i,j} : j >= i+k}
    bool vt_zero = false;              // left side collapses
    bool epsilon_classes_ok = false;   // [e_{i,i}] spans H_{2i}, boundary identifications hold
    bool ht_shift_ok = false;          // HT acts as the shift on the classes
    long left_dim = -1;
    std::vector<long> right_graded_dims;  // dim H_{2i} for i = 1..n
    bool right_rank_one_pattern = false;  // dim 1 per even degree, shift isos
};

CounterexampleReport counterexample_probe(int n);

}  // namespace tate
