#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/bundles.hpp"
#include "tate/homology.hpp"

using namespace tate;

TEST_CASE("every bundle builds a valid complex") {
    CHECK(validate(*rabinowitz_c(false).build(4)).ok());
    CHECK(validate(*rabinowitz_c(true).build(4)).ok());
    CHECK(validate(*cn_complex(1).build(5)).ok());
    CHECK(validate(*cn_complex(2).build(5)).ok());
    CHECK(validate(*cn_complex(3).build(4)).ok());
    CHECK(validate(*t_star_s2().build(5)).ok());
    CHECK(validate(*local_orbit(1, true, 0).build(1)).ok());
    CHECK(validate(*local_orbit(4, false, 2).build(1)).ok());
    CHECK(validate(*torus(2, 2).build(1)).ok());
}

TEST_CASE("weight sequences follow the multiplicity rule") {
    ExampleBundle b1 = cn_complex(1);
    CHECK(b1.weight_rule->first(5) == std::vector<Int>{1, 2, 3, 4, 5});
    ExampleBundle b2 = cn_complex(2);
    CHECK(b2.weight_rule->first(6) == std::vector<Int>{1, 1, 2, 2, 3, 3});
    ExampleBundle b3 = cn_complex(3);
    CHECK(b3.weight_rule->first(7) == std::vector<Int>{1, 1, 1, 2, 2, 2, 3});
}

TEST_CASE("circle complex: windowed groups") {
    for (int m = -3; m <= 3; ++m)
        for (int n = m; n <= 3; ++n) {
            auto g = circle_filtered_groups(false, CircleFiltration::Window, m, n, 2 * m - 2,
                                            2 * n + 3);
            for (auto& [d, grp] : g) {
                if (d == 2 * m || d == 2 * n + 1) CHECK(grp == FgAbGroup::free(1));
                else CHECK(grp.is_zero());
            }
        }
}

TEST_CASE("circle complex: limits of the filtration") {
    // lower cut to -infinity at fixed n: one class at degree 2n+1 survives
    auto lower = circle_filtered_groups(false, CircleFiltration::LimitLower, std::nullopt, 1, -3, 4);
    for (auto& [d, grp] : lower) {
        if (d == 3) CHECK(grp == FgAbGroup::free(1));
        else CHECK(grp.is_zero());
    }
    // upper cutrising at fixed m: one class at degree 2m survives
    auto upper = circle_filtered_groups(false, CircleFiltration::LimitUpper, -1, std::nullopt, -3, 4);
    for (auto& [d, grp] : upper) {
        if (d == -2) CHECK(grp == FgAbGroup::free(1));
        else CHECK(grp.is_zero());
    }
}

TEST_CASE("equivariant circle complex: polynomial-type windows and limits") {
    // window 0..n: Z in even degrees 0..2n
    auto win = circle_filtered_groups(true, CircleFiltration::Window, 0, 2, -2, 7);
    for (auto& [d, grp] : win) {
        if (d >= 0 && d <= 4 && d % 2 == 0) CHECK(grp == FgAbGroup::free(1));
        else CHECK(grp.is_zero());
    }
    // upper limit at fixed m: Z in all even degrees >= 2m
    auto up = circle_filtered_groups(true, CircleFiltration::LimitUpper, -1, std::nullopt, -3, 4);
    for (auto& [d, grp] : up) {
        if (d >= -2 && d % 2 == 0) CHECK(grp == FgAbGroup::free(1));
        else CHECK(grp.is_zero());
    }
    // lower limit at fixed n: Z in all even degrees <= 2n
    auto low = circle_filtered_groups(true, CircleFiltration::LimitLower, std::nullopt, 1, -4, 4);
    for (auto& [d, grp] : low) {
        if (d <= 2 && d % 2 == 0) CHECK(grp == FgAbGroup::free(1));
        else CHECK(grp.is_zero());
    }
}

TEST_CASE("sphere cotangent bundle: loop space homology at level zero") {
    auto cx = t_star_s2().build(6);
    TruncationSpec s;
    s.a_mu_level = 0;
    s.b_mu_level = 0;
    s.d_low = 0;
    s.d_high = 11;
    GradedHomologyZ h = homology_z(instantiate_window(cx, s));
    for (int d = 0; d <= 11; ++d) {
        if (d == 0) CHECK(h.group(d) == FgAbGroup::free(1));
        else if (d % 2 == 1) CHECK(h.group(d) == FgAbGroup::free(1));
        else CHECK(h.group(d) == FgAbGroup(1, {Int(2)}));
    }
}

TEST_CASE("odd weights would break the level homology") {
    // with c_k odd the three-generator subcomplex computes Z instead of
    // Z + Z/2, which is why odd weights are rejected
    IntMat d_in(2, 1, {2, 3});  // boundary (2 r+ + 3 d+) of the middle step
    HomologyZ h = homology_of_pair_z(d_in, IntMat(0, 2));
    CHECK(h.group == FgAbGroup::free(1));
    IntMat d_even(2, 1, {2, 2});
    HomologyZ h2 = homology_of_pair_z(d_even, IntMat(0, 2));
    CHECK(h2.group == FgAbGroup(1, {Int(2)}));
}

TEST_CASE("local orbit homologies match the closed forms") {
    for (int n : {1, 2, 3, 4, 5}) {
        for (int shift : {0, 3}) {
            auto good = local_orbit(n, true, shift).build(1);
            TruncationSpec s;
            s.d_low = -4;
            s.d_high = 6;
            GradedHomologyZ h = homology_z(instantiate_window(good, s));
            for (int d = -4; d <= 6; ++d) {
                if (n == 1) CHECK(h.group(d).is_zero());
                else if ((d - shift - 1) % 2 == 0) CHECK(h.group(d) == FgAbGroup::cyclic(n));
                else CHECK(h.group(d).is_zero());
            }
            if (n % 2 == 0) {
                auto bad = local_orbit(n, false, shift).build(1);
                GradedHomologyZ hb = homology_z(instantiate_window(bad, s));
                for (int d = -4; d <= 6; ++d) {
                    if ((d - shift) % 2 == 0) CHECK(hb.group(d) == FgAbGroup::cyclic(2));
                    else CHECK(hb.group(d).is_zero());
                }
            }
        }
    }
    CHECK_THROWS_AS(local_orbit(3, false, 0), TateError);  // bad needs even covering
}

TEST_CASE("torus bundles and their gcd orbits") {
    // class (2,4) contributes a double cover: 2-torsion, rationally invisible
    auto t = torus(2, 4);
    auto cx = t.build(1);
    CHECK_FALSE(t.int_scope);
    // a double-cover orbit alone
    auto orbit = local_orbit(2, true, 0).build(1);
    TruncationSpec s;
    s.d_low = -2;
    s.d_high = 4;
    GradedHomologyZ h = homology_z(instantiate_window(orbit, s));
    bool has_torsion = false;
    for (int d = -2; d <= 4; ++d)
        if (h.group(d) == FgAbGroup::cyclic(2)) has_torsion = true;
    CHECK(has_torsion);
    GradedHomologyQ hq = homology_q(instantiate_window(orbit, s));
    for (int d = -2; d <= 4; ++d) CHECK(hq.dim(d) == 0);
}

TEST_CASE("rank report frozen rows") {
    XnReport r4 = xn_rank_report(4);
    CHECK(r4.d_n == 22);
    CHECK(r4.two_n == 16);
    CHECK_FALSE(r4.kappa_injective_possible);
    XnReport r5 = xn_rank_report(5);
    CHECK(r5.d_n == 32);
    CHECK(r5.verdict == "no verdict from ranks");
    XnReport r6 = xn_rank_report(6);
    CHECK(r6.d_n == 44);
    CHECK_FALSE(r6.kappa_surjective_possible);
}
