#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/tower.hpp"
#include "test_util.hpp"

#include <algorithm>

using namespace tate;
using namespace tate::testutil;

namespace {

AbGroupMap z_map(const Int& m) {
    AbGroupMap f;
    f.source = f.target = FgAbGroup::free(1);
    f.source_orders = f.target_orders = {Int(0)};
    f.matrix = IntMat(1, 1, {m});
    return f;
}

AbGroupMap mat_map(const FgAbGroup& src, const FgAbGroup& tgt, const IntMat& m) {
    AbGroupMap f;
    f.source = src;
    f.target = tgt;
    for (auto& d : src.torsion) f.source_orders.push_back(d);
    for (long i = 0; i < src.free_rank; ++i) f.source_orders.push_back(0);
    for (auto& d : tgt.torsion) f.target_orders.push_back(d);
    for (long i = 0; i < tgt.free_rank; ++i) f.target_orders.push_back(0);
    f.matrix = m;
    return f;
}

}  // namespace

TEST_CASE("subgroup presentations") {
    // <(2,0),(0,3)> inside Z^2: free of rank 2 abstractly
    IntMat gens(2, 2, {2, 0, 0, 3});
    SubquotientPresentation p = present_subgroup(gens, {Int(0), Int(0)});
    CHECK(p.group == FgAbGroup::free(2));
    auto c = p.coords({2, 3});
    REQUIRE(c.has_value());
    CHECK_FALSE(p.coords({1, 0}).has_value());

    // subgroup 2Z/4Z of Z/4 is Z/2
    IntMat g2(1, 1, {2});
    SubquotientPresentation p2 = present_subgroup(g2, {Int(4)});
    CHECK(p2.group == FgAbGroup::cyclic(2));

    // kernel of x2 : Z/4 -> Z/4 is 2Z/4
    AbGroupMap twice = mat_map(FgAbGroup::cyclic(4), FgAbGroup::cyclic(4), IntMat(1, 1, {2}));
    IntMat ker = kernel_subgroup(twice);
    CHECK(same_subgroup(ker, g2, {Int(4)}));
}

TEST_CASE("direct limit: constant tower") {
    TowerZ t;
    t.dir = TowerDirection::ToDirect;
    for (int i = 0; i < 4; ++i) t.groups.push_back(FgAbGroup::free(1));
    for (int i = 0; i < 3; ++i) t.maps.push_back(z_map(1));
    LimitResultZ r = direct_limit(t);
    REQUIRE(r.stable());
    CHECK(r.group == FgAbGroup::free(1));
}

TEST_CASE("direct limit: multiplier tower is the rationals-type colimit") {
    TowerZ t;
    t.dir = TowerDirection::ToDirect;
    for (int i = 0; i < 6; ++i) t.groups.push_back(FgAbGroup::free(1));
    for (int i = 0; i < 5; ++i) t.maps.push_back(z_map(i + 2));  // x2, x3, ...
    LimitResultZ r = direct_limit(t, IntSequence::k_plus(1));
    REQUIRE(r.kind == LimitResultZ::Kind::Colimit);
    REQUIRE(r.colimit.has_extension());
    QCriterionReport q = r.colimit.q_criterion(97, 400);
    CHECK(q.holds());
    CHECK(q.failed_primes.empty());

    // constant multiplier 2: divisible only by powers of two
    TowerZ t2;
    for (int i = 0; i < 5; ++i) t2.groups.push_back(FgAbGroup::free(1));
    for (int i = 0; i < 4; ++i) t2.maps.push_back(z_map(2));
    LimitResultZ r2 = direct_limit(t2, IntSequence::constant(2));
    REQUIRE(r2.kind == LimitResultZ::Kind::Colimit);
    QCriterionReport q2 = r2.colimit.q_criterion(7, 300);
    CHECK_FALSE(q2.holds());
    CHECK(std::find(q2.failed_primes.begin(), q2.failed_primes.end(), 3) !=
          q2.failed_primes.end());
}

TEST_CASE("direct limit: image stabilization with a dying summand") {
    // Z^2 -> Z^2, (x, y) -> (x, 0) repeatedly: colimit Z
    TowerZ t;
    for (int i = 0; i < 5; ++i) t.groups.push_back(FgAbGroup::free(2));
    IntMat kill(2, 2, {1, 0, 0, 0});
    for (int i = 0; i < 4; ++i) t.maps.push_back(mat_map(t.groups[i], t.groups[i + 1], kill));
    LimitResultZ r = direct_limit(t);
    REQUIRE(r.stable());
    CHECK(r.group == FgAbGroup::free(1));
}

TEST_CASE("inverse limit: constant and eventually-stable towers") {
    TowerZ t;
    t.dir = TowerDirection::ToInverse;
    for (int i = 0; i < 4; ++i) t.groups.push_back(FgAbGroup::free(1));
    for (int i = 0; i < 3; ++i) t.maps.push_back(z_map(1));
    LimitResultZ r = inverse_limit(t);
    REQUIRE(r.stable());
    CHECK(r.group == FgAbGroup::free(1));

    // projection Z^2 -> Z killing a factor at the shallow step, identities
    // deeper: the limit is Z^2, presented one step in
    TowerZ t2;
    t2.dir = TowerDirection::ToInverse;
    t2.groups.push_back(FgAbGroup::free(1));
    for (int i = 0; i < 4; ++i) t2.groups.push_back(FgAbGroup::free(2));
    IntMat proj(1, 2, {1, 0});
    t2.maps.push_back(mat_map(t2.groups[1], t2.groups[0], proj));
    for (int i = 1; i < 4; ++i)
        t2.maps.push_back(mat_map(t2.groups[i + 1], t2.groups[i], IntMat::identity(2)));
    LimitResultZ r2 = inverse_limit(t2);
    REQUIRE(r2.stable());
    CHECK(r2.group == FgAbGroup::free(2));
    CHECK(r2.presented_at == 1);
}

TEST_CASE("inverse limit: Mittag-Leffler failure is undecided") {
    // nested subgroups Z > 2Z > 4Z > ...: no stabilization
    TowerZ t;
    t.dir = TowerDirection::ToInverse;
    for (int i = 0; i < 6; ++i) t.groups.push_back(FgAbGroup::free(1));
    for (int i = 0; i < 5; ++i) t.maps.push_back(z_map(2));
    LimitResultZ r = inverse_limit(t);
    CHECK(r.kind == LimitResultZ::Kind::Undecided);
    CHECK(r.diagnostics.find("does not stabilize") != std::string::npos);
}

TEST_CASE("rational towers") {
    TowerQ t;
    t.dir = TowerDirection::ToInverse;
    // periodic one-dimensional tower with T = 0: eventual image is zero
    for (int i = 0; i < 5; ++i) t.dims.push_back(1);
    for (int i = 0; i < 4; ++i) t.maps.push_back(RatMat(1, 1, {Rat(0)}));
    LimitResultQ r = inverse_limit(t);
    REQUIRE(r.stable());
    CHECK(r.dim == 0);

    // multiplier towers over the rationals are isomorphisms
    TowerQ t2;
    t2.dir = TowerDirection::ToDirect;
    for (int i = 0; i < 5; ++i) t2.dims.push_back(1);
    for (int i = 0; i < 4; ++i) t2.maps.push_back(RatMat(1, 1, {Rat(i + 2)}));
    LimitResultQ r2 = direct_limit(t2);
    REQUIRE(r2.stable());
    CHECK(r2.dim == 1);
}
