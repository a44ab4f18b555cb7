#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/localization.hpp"
#include "test_util.hpp"

using namespace tate;
using namespace tate::testutil;

namespace {

RatMat random_rat_matrix(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Rat(rand_int(-3, 3));
    return m;
}

}  // namespace

TEST_CASE("eventual image basics") {
    // isomorphism: the whole space
    RatMat iso(2, 2, {Rat(1), Rat(1), Rat(0), Rat(1)});
    EventualImage e1 = eventual_image(iso);
    CHECK(e1.dim() == 2);

    // nilpotent: zero
    RatMat nil(3, 3);
    nil(0, 1) = 1;
    nil(1, 2) = 1;
    EventualImage e2 = eventual_image(nil);
    CHECK(e2.dim() == 0);

    // shift on a 5-dimensional truncation: zero
    RatMat shift(5, 5);
    for (int i = 0; i + 1 < 5; ++i) shift(i, i + 1) = 1;
    CHECK(eventual_image(shift).dim() == 0);

    // rank-1 idempotent: one-dimensional
    RatMat idem(3, 3);
    idem(0, 0) = 1;
    CHECK(eventual_image(idem).dim() == 1);
}

TEST_CASE("localization data and the evaluation map") {
    // iso: P is an isomorphism
    LinearEndoSpace v;
    v.dim = 3;
    v.T = RatMat::identity(3) * Rat(2);
    LocalizationResult r = localize(v);
    CHECK(r.p_injective);
    CHECK(r.p_iso);

    // T = 0: everything collapses
    LinearEndoSpace z;
    z.dim = 2;
    z.T = RatMat(2, 2);
    LocalizationResult rz = localize(z);
    CHECK(rz.vt.dim() == 0);

    // rank-1 idempotent on dimension 3: V^T is one-dimensional
    LinearEndoSpace p;
    p.dim = 3;
    p.T = RatMat(3, 3);
    p.T(0, 0) = 1;
    LocalizationResult rp = localize(p);
    CHECK(rp.vt.dim() == 1);
    CHECK(rp.p_injective);
    CHECK_FALSE(rp.p_iso);

    // Q_k identities: T Q_k = Q_k Tbar, image independent of k, injective
    for (int t = 0; t < 50; ++t) {
        LinearEndoSpace w;
        w.dim = rand_int(1, 6);
        w.T = random_rat_matrix(w.dim);
        LocalizationResult lw = localize(w);
        for (int k = 1; k <= 6; ++k) {
            RatMat qk = lw.q_map(k);
            CHECK(w.T * qk == qk * lw.tbar());
            CHECK(rank(qk) == qk.cols());  // injective
            CHECK(same_column_space(qk, lw.vt.basis));
        }
        // V^T_T = V^T: localizing the eventual image changes nothing
        if (lw.vt.dim() > 0) {
            LinearEndoSpace inner;
            inner.dim = int(lw.vt.dim());
            inner.T = lw.vt.induced_t;
            LocalizationResult li = localize(inner);
            CHECK(li.vt.dim() == lw.vt.dim());
            CHECK(li.p_iso);
        }
    }
}

TEST_CASE("tate triple comparison agrees for surjective T") {
    for (int t = 0; t < 60; ++t) {
        // random surjective T on dim 4 plus a commuting boundary. Use
        // block form: T invertible guarantees surjectivity; boundary built
        // from a T-commuting polynomial p(T) compressed to square zero.
        int n = 4;
        RatMat tmat = random_rat_matrix(n);
        if (rank(tmat) != n) continue;
        // d := c (T - lambda) projected: simplest commuting d with d^2 = 0:
        // nilpotent part of a polynomial in T. Try d = (T - I) * (T + I) ... not
        // guaranteed square-zero; instead conjugate a fixed d0 and T0 pair.
        RatMat d0(n, n);
        d0(0, 1) = 1;
        d0(2, 3) = 1;  // d0^2 = 0
        RatMat t0(n, n);
        // T0 commuting with d0: block scalars on the two 2x2 blocks
        Rat alpha = Rat(rand_int(1, 4)), beta = Rat(rand_int(1, 4));
        t0(0, 0) = alpha;
        t0(1, 1) = alpha;
        t0(2, 2) = beta;
        t0(3, 3) = beta;
        RatMat g = random_rat_matrix(n);
        auto gi = inverse(g);
        if (!gi) continue;
        LinearEndoSpace v;
        v.dim = n;
        v.T = g * t0 * *gi;
        v.boundary = g * d0 * *gi;
        REQUIRE(v.is_tate_triple());
        TateTripleComparison cmp = tate_triple_compare(v);
        CHECK(cmp.t_surjective);
        CHECK(cmp.equal);
        CHECK(cmp.tower_maps_iso);
    }

    // d = 0, T iso: both sides are the full space
    LinearEndoSpace v;
    v.dim = 3;
    v.T = RatMat::identity(3) * Rat(5);
    v.boundary = RatMat(3, 3);
    TateTripleComparison cmp = tate_triple_compare(v);
    CHECK(cmp.left_dim == 3);
    CHECK(cmp.right_dim == 3);
    CHECK(cmp.equal);
}

TEST_CASE("graded degree of localized elements") {
    // T of degree -2 acting as the shift on a graded chain of length 3; the
    // element with v_1 = e_0 has one consistent degree across all slots.
    LinearEndoSpace v;
    v.dim = 3;
    v.T = RatMat(3, 3);
    v.T(0, 1) = 1;  // deg 2 -> deg 0
    v.T(1, 2) = 1;  // deg 4 -> deg 2
    v.T(2, 0) = 1;  // wrap to keep T invertible (V_T = V, graded mod 6)
    v.degrees = std::vector<int>{0, 2, 4};
    LocalizationResult loc = localize(v);
    REQUIRE(loc.p_iso);
    // chain: v_1 = e0, v_2 = Tbar^{-1} v_1 = e1, v_3 = e2, all consistent
    // within a window of length 3 before the wrap re-enters
    CHECK(graded_degree(v, loc, {Rat(1), Rat(0), Rat(0)}, -2, 3) == -2);

    // single basis vector under the identity, degree just shifts by i*d = 0
    LinearEndoSpace w;
    w.dim = 1;
    w.T = RatMat::identity(1);
    w.degrees = std::vector<int>{4};
    LocalizationResult lw = localize(w);
    CHECK(graded_degree(w, lw, {Rat(1)}, 0) == 4);

    CHECK_THROWS_AS(graded_degree(w, lw, {Rat(0)}, 0), TateError);
}

TEST_CASE("locally finite counterexample at N = 8") {
    CounterexampleReport r = counterexample_probe(8);
    CHECK(r.d_squared_zero);
    CHECK(r.commutes);
    CHECK(r.power_images_match);
    CHECK(r.vt_zero);
    CHECK(r.left_dim == 0);
    CHECK(r.epsilon_classes_ok);
    CHECK(r.ht_shift_ok);
    REQUIRE(r.right_graded_dims.size() == 8);
    for (long d : r.right_graded_dims) CHECK(d == 1);
    CHECK(r.right_rank_one_pattern);

    // the n = 3, k = 2 power-image check from the same model
    CounterexampleReport r3 = counterexample_probe(3);
    CHECK(r3.power_images_match);
    CHECK(r3.d_squared_zero);
}

TEST_CASE("the truncated counterexample violates the comparison") {
    CounterexampleModel m = counterexample_model(8);
    REQUIRE(m.space.is_tate_triple());
    TateTripleComparison cmp = tate_triple_compare(m.space);
    CHECK_FALSE(cmp.t_surjective);
    CHECK(cmp.left_dim == 0);
    CHECK(cmp.right_dim == 0);  // the eventual image collapses on a truncation;
                                // the graded shift pattern carries the real content
}
