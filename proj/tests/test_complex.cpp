#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/bundles.hpp"
#include "tate/homology.hpp"
#include "test_util.hpp"

using namespace tate;
using namespace tate::testutil;

namespace {

TruncationSpec spec(std::optional<int> a, std::optional<int> b_mu, int dlo, int dhi) {
    TruncationSpec s;
    s.a_mu_level = a;
    s.b_mu_level = b_mu;
    s.d_low = dlo;
    s.d_high = dhi;
    return s;
}

}  // namespace

TEST_CASE("validation of the circle complex and constructed violations") {
    auto bundle = rabinowitz_c();
    auto c = bundle.build(8);
    CHECK(validate(*c).ok());

    // degree-violating term
    EquivariantComplex bad = *c;
    bad.boundary["w-"] = {{Int(1), 0, "w+"}};
    ValidationReport r = validate(bad);
    CHECK_FALSE(r.ok());
    bool found = false;
    for (auto& v : r.violations)
        if (v.kind == "degree") found = true;
    CHECK(found);

    // broken d^2 on a hand-built three-generator complex
    EquivariantComplex sq;
    sq.generators.push_back({"a", 2, 0, Rat(2), ""});
    sq.generators.push_back({"b", 1, 0, Rat(1), ""});
    sq.generators.push_back({"c", 0, 0, Rat(0), ""});
    sq.boundary["a"] = {{Int(1), 0, "b"}};
    sq.boundary["b"] = {{Int(1), 0, "c"}};
    ValidationReport r2 = validate(sq);
    CHECK_FALSE(r2.ok());
    bool dsq = false;
    for (auto& v : r2.violations)
        if (v.kind == "d-squared" && v.detail.find("a") != std::string::npos) dsq = true;
    CHECK(dsq);

    // positive shift in a single-level complex
    EquivariantComplex up;
    up.generators.push_back({"x", 0, 0, Rat(0), ""});
    up.generators.push_back({"y", 3, 0, Rat(1), ""});
    up.boundary["y"] = {{Int(1), 1, "x"}};
    ValidationReport r3 = validate(up);
    bool shift = false;
    for (auto& v : r3.violations)
        if (v.kind == "single-level-shift") shift = true;
    CHECK(shift);
}

TEST_CASE("circle complex windows reproduce the filtered groups") {
    auto c = rabinowitz_c().build(8);
    // window m <= level <= n: Z at degree 2m and at degree 2n+1, else 0
    for (int m = -3; m <= 3; ++m)
        for (int n = m; n <= 3; ++n) {
            WindowComplex w = instantiate_window(c, spec(m, n, 2 * m - 2, 2 * n + 3));
            GradedHomologyZ h = homology_z(w);
            for (int d = 2 * m - 2; d <= 2 * n + 3; ++d) {
                if (d == 2 * m || d == 2 * n + 1) CHECK(h.group(d) == FgAbGroup::free(1));
                else if (h.at.count(d)) CHECK(h.group(d).is_zero());
            }
        }
}

TEST_CASE("empty window gives the zero complex") {
    auto c = rabinowitz_c().build(4);
    WindowComplex w = instantiate_window(c, spec(0, 0, 40, 44));
    for (int d = 40; d <= 44; ++d) CHECK(w.dim(d) == 0);
}

TEST_CASE("staircase window matrices at a deep cut") {
    auto c = cn_complex(1).build(4);  // weights 1,2,3,4
    // all four steps visible in degree 0/1 with the cut four levels down
    WindowComplex w = instantiate_window(c, spec(-4, std::nullopt, 0, 1));
    CHECK(w.dim(0) == 5);  // u^{-k} w_k^+ for k = 0..4
    CHECK(w.dim(1) == 4);  // u^{-k} w_{k+1}^- for k = 0..3
    const IntMat& d1 = w.diff.at(1);
    // each column has the step unit and the weighted diagonal a_{k+1}
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 5; ++i) {
            Int expect = 0;
            if (i == j) expect = 1;
            if (i == j + 1) expect = j + 1;
            CHECK(d1(i, j) == expect);
        }
    }
    CHECK(w.d_squared_is_zero());
}

TEST_CASE("u-shift is an exact isomorphism of windows") {
    auto c = cn_complex(1).build(4);
    WindowComplex w = instantiate_window(c, spec(-3, std::nullopt, 0, 5));
    WindowComplex s = u_shift(w);
    CHECK(s.spec.d_low == 2);
    // shifting twice equals shifting the spec twice
    WindowComplex s2 = u_shift(s);
    CHECK(s2.spec.d_low == 4);
    // the circle complex satisfies u w@(n) = w@(n+1) on labels
    auto rc = rabinowitz_c().build(4);
    WindowComplex rw = instantiate_window(rc, spec(-2, 2, -4, 5));
    WindowComplex rs = u_shift(rw);
    CHECK(rw.label(0, 0) == "w-@0");
    CHECK(rs.label(2, 0) == "w-@1");
}

TEST_CASE("window homology is invariant under u-shift") {
    auto c = t_star_s2().build(4);
    WindowComplex w = instantiate_window(c, spec(-3, std::nullopt, 0, 4));
    WindowComplex s = u_shift(w);
    GradedHomologyZ hw = homology_z(w), hs = homology_z(s);
    for (int d = 0; d <= 4; ++d) CHECK(hw.group(d) == hs.group(d + 2));
}

TEST_CASE("nested windows give commuting projection/inclusion squares") {
    auto c = cn_complex(2).build(5);
    for (int t = 0; t < 12; ++t) {
        int a2 = rand_int(-4, 0), a1 = a2 - rand_int(1, 2);
        Rat b1 = rand_int(0, 3), b2 = b1 + rand_int(1, 2);
        TruncationSpec s11 = spec(a1, std::nullopt, -2, 6);
        s11.b_action = b1;
        TruncationSpec s12 = s11;
        s12.b_action = b2;
        TruncationSpec s21 = s11;
        s21.a_mu_level = a2;
        TruncationSpec s22 = s12;
        s22.a_mu_level = a2;
        WindowComplex w11 = instantiate_window(c, s11), w12 = instantiate_window(c, s12);
        WindowComplex w21 = instantiate_window(c, s21), w22 = instantiate_window(c, s22);
        auto i1 = chain_embedding(w11, w12);
        auto i2 = chain_embedding(w21, w22);
        auto p1 = chain_projection(w11, w21);
        auto p2 = chain_projection(w12, w22);
        for (int d = -2; d <= 6; ++d) CHECK(p2.at(d) * i1.at(d) == i2.at(d) * p1.at(d));
    }
}

TEST_CASE("500 random windows keep d^2 = 0") {
    std::vector<std::shared_ptr<const EquivariantComplex>> sources = {
        cn_complex(1).build(5), cn_complex(2).build(5), t_star_s2().build(5),
        rabinowitz_c().build(6), torus(2, 1).build(1)};
    for (int t = 0; t < 500; ++t) {
        auto& c = sources[size_t(rand_int(0, int(sources.size()) - 1))];
        TruncationSpec s;
        if (rand_int(0, 3) > 0) s.a_mu_level = rand_int(-6, 1);
        if (rand_int(0, 3) == 0) s.b_mu_level = s.a_mu_level ? *s.a_mu_level + rand_int(0, 6)
                                                             : rand_int(-1, 4);
        if (rand_int(0, 2) > 0) s.b_action = Rat(rand_int(0, 5));
        s.d_low = rand_int(-6, 4);
        s.d_high = s.d_low + rand_int(0, 8);
        WindowComplex w = instantiate_window(c, s);
        CHECK(w.d_squared_is_zero());
    }
}

TEST_CASE("reduction cancels acyclic pairs and preserves homology") {
    auto c = t_star_s2().build(4);
    WindowComplex w = instantiate_window(c, spec(-4, std::nullopt, -1, 6));
    ChainComplexZ cc = to_chain_complex(w);
    GradedHomologyZ before = homology_z(cc);

    // cancel nothing: identity
    ChainComplexZ same = reduce_complex(cc, {});
    CHECK(same.labels == cc.labels);

    // over Q: removing the r-pairs (z_k, w_k pairs in the change of basis)
    // leaves the weighted staircase with unchanged homology
    ChainComplexQ q = to_rational(cc);
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.push_back({"r1-@0", "r1+@-1"});
    pairs.push_back({"r2-@-1", "r2+@-2"});
    ChainComplexQ qr = reduce_complex_q(q, pairs);
    GradedHomologyQ hq_before = homology_q(q), hq_after = homology_q(qr);
    for (int d = 0; d <= 5; ++d) CHECK(hq_before.dim(d) == hq_after.dim(d));
    // the cancelled generators are gone
    CHECK(qr.find(1, "r1-@0") == -1);

    // non-invertible pivot over Z is rejected: the bad-orbit pair has weight 2
    auto bad = local_orbit(2, false, 0).build(1);
    WindowComplex wb = instantiate_window(bad, spec(-2, std::nullopt, -2, 3));
    ChainComplexZ cb = to_chain_complex(wb);
    CHECK_THROWS_WITH_AS(reduce_complex(cb, {{"w+@0", "w-@0"}}), doctest::Contains("NonInvertiblePivot"),
                         TateError);

    // homology preservation over Z on 100 random reducible complexes: plant a
    // unit pair (Y, X) with dY = X + (random cycle) in a random 4-term complex
    for (int t = 0; t < 100; ++t) {
        ChainComplexZ cz;
        cz.d_low = 0;
        cz.d_high = 3;
        std::vector<int> dims = {rand_int(1, 4), rand_int(1, 4), rand_int(1, 4), rand_int(1, 4)};
        for (int d = 0; d <= 3; ++d) {
            std::vector<std::string> names;
            for (int i = 0; i < dims[d]; ++i) names.push_back("g" + std::to_string(d) + "_" + std::to_string(i));
            cz.labels[d] = names;
        }
        IntMat d1 = random_int_matrix(dims[0], dims[1], -2, 2);
        IntMat k1 = int_kernel(d1);
        IntMat d2 = k1 * random_int_matrix(k1.cols(), dims[2], -2, 2);
        IntMat k2 = int_kernel(d2);
        IntMat d3 = k2 * random_int_matrix(k2.cols(), dims[3], -2, 2);
        cz.diff[1] = d1;
        cz.diff[2] = d2;
        cz.diff[3] = d3;
        REQUIRE(cz.d_squared_is_zero());
        GradedHomologyZ h_old = homology_z(cz);

        // plant the pair in degrees (2, 1): X in degree 1 with dX = 0, Y in
        // degree 2 with dY = X + cycle
        int q = 1;
        ChainComplexZ with = cz;
        with.labels[q].push_back("X");
        with.labels[q + 1].push_back("Y");
        IntMat nd1(dims[0], dims[1] + 1);
        for (int i = 0; i < dims[0]; ++i)
            for (int j = 0; j < dims[1]; ++j) nd1(i, j) = d1(i, j);
        IntMat nd2(dims[1] + 1, dims[2] + 1);
        for (int i = 0; i < dims[1]; ++i)
            for (int j = 0; j < dims[2]; ++j) nd2(i, j) = d2(i, j);
        // dY = X + random cycle in the old degree-1 part
        IntMat cyc = k1 * random_int_matrix(k1.cols(), 1, -2, 2);
        for (int i = 0; i < dims[1]; ++i) nd2(i, dims[2]) = cyc(i, 0);
        nd2(dims[1], dims[2]) = 1;
        IntMat nd3(dims[2] + 1, dims[3]);
        for (int i = 0; i < dims[2]; ++i)
            for (int j = 0; j < dims[3]; ++j) nd3(i, j) = d3(i, j);
        with.diff[1] = nd1;
        with.diff[2] = nd2;
        with.diff[3] = nd3;
        REQUIRE(with.d_squared_is_zero());

        ChainComplexZ red = reduce_complex(with, {{"Y", "X"}});
        GradedHomologyZ h_red = homology_z(red);
        for (int d = 1; d <= 2; ++d) CHECK(h_red.group(d) == h_old.group(d));
    }
}
