#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tate/flows.hpp"

#include <cmath>

using namespace tate;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Independent five-dimensional right-hand side for the two-mode reduction,
// written out by hand: x0' = -2 pi eta x0 (componentwise complex), etc.
std::vector<double> two_mode_rhs_by_hand(const std::vector<double>& y) {
    double x0r = y[0], x0i = y[1], x1r = y[2], x1i = y[3], eta = y[4];
    double n2 = x0r * x0r + x0i * x0i + x1r * x1r + x1i * x1i;
    return {2 * kPi * (0 - eta) * x0r, 2 * kPi * (0 - eta) * x0i,
            2 * kPi * (1 - eta) * x1r, 2 * kPi * (1 - eta) * x1i, -kPi * (n2 - 1)};
}

}  // namespace

TEST_CASE("critical points are stationary and carry the right action") {
    for (int l = -2; l <= 2; ++l) {
        RabinowitzState s = RabinowitzState::critical(l, -4, 4);
        RabinowitzState d = rabinowitz_rhs(s);
        for (auto& v : d.z) CHECK(std::abs(v) == 0.0);
        CHECK(d.eta == 0.0);
        CHECK(action(s) == doctest::Approx(kPi * l).epsilon(1e-14));
    }
    // z = 0, eta = 0: only the multiplier moves
    RabinowitzState zero;
    zero.k_min = -2;
    zero.k_max = 2;
    zero.z.assign(5, {0, 0});
    zero.eta = 0;
    RabinowitzState d = rabinowitz_rhs(zero);
    CHECK(d.eta == doctest::Approx(kPi).epsilon(1e-14));
    for (auto& v : d.z) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("two-mode state matches the hand-coded vector field") {
    RabinowitzState s = RabinowitzState::critical(0, 0, 1);
    s.mode(0) = {0.6, -0.3};
    s.mode(1) = {0.2, 0.7};
    s.eta = 0.37;
    RabinowitzState d = rabinowitz_rhs(s);
    auto ref = two_mode_rhs_by_hand({0.6, -0.3, 0.2, 0.7, 0.37});
    CHECK(d.mode(0).real() == doctest::Approx(ref[0]).epsilon(1e-14));
    CHECK(d.mode(0).imag() == doctest::Approx(ref[1]).epsilon(1e-14));
    CHECK(d.mode(1).real() == doctest::Approx(ref[2]).epsilon(1e-14));
    CHECK(d.mode(1).imag() == doctest::Approx(ref[3]).epsilon(1e-14));
    CHECK(d.eta == doctest::Approx(ref[4]).epsilon(1e-14));
}

TEST_CASE("invariant subspaces and stationarity under integration") {
    // start at a critical point: stays put
    RabinowitzState crit = RabinowitzState::critical(1, -2, 2);
    RabinowitzDiagnostics d = integrate_rabinowitz(crit, 2.0, 1e-12);
    CHECK_FALSE(d.step_failure);
    CHECK(d.final_residual < 1e-10);
    CHECK(std::abs(d.final_action - kPi) < 1e-10);

    // modes started at zero stay at zero (before the saddle escape takes over)
    RabinowitzState s = RabinowitzState::critical(0, -2, 2);
    s.mode(1) = {1e-4, 0};
    RabinowitzDiagnostics d2 = integrate_rabinowitz(s, 1.0, 1e-12);
    CHECK_FALSE(d2.step_failure);
    CHECK(d2.invariant_drift <= 1e-12);
    // the action never decreases along a positive gradient flow
    CHECK(d2.action_decrease <= 1e-9);
}

TEST_CASE("gradient identity and directional derivatives") {
    RabinowitzState s = RabinowitzState::critical(0, 0, 1);
    s.mode(1) = {1e-3, 0};
    GradientIdentityReport g = gradient_identity_check(s, 1.2, 100);
    CHECK(g.samples >= 100);
    CHECK(g.max_rel_error < 1e-6);

    RabinowitzState r = RabinowitzState::critical(0, -3, 3);
    r.mode(1) = {0.3, 0.1};
    r.mode(-2) = {0.05, -0.2};
    r.eta = 0.4;
    CHECK(directional_derivative_max_error(r, 20) < 1e-6);
}

TEST_CASE("two-mode heteroclinic connects the actions 0 and pi") {
    HeteroclinicReport rep = two_mode_heteroclinic(1e-5, 8.0);
    CHECK_FALSE(rep.step_failure);
    // the endpoint actions are quadratically accurate at the critical circles
    CHECK(std::abs(rep.action_backward - 0.0) < 1e-6);
    CHECK(std::abs(rep.action_forward - kPi) < 1e-6);
    CHECK(rep.residual_backward < 1e-4);
    CHECK(rep.residual_forward < 1e-4);
}

TEST_CASE("heat flow matches the closed form") {
    for (double x0 : {0.5, -0.5, 0.1, -0.1, 0.9, -0.9}) {
        HeatReport rep = heat_flow_check(x0, 0.3, 1e-6);
        CHECK(rep.max_rel_error < 1e-8);
        CHECK(rep.sign_preserved);
        CHECK(rep.converged_to_pole);
        CHECK((rep.final_x > 0) == (x0 > 0));
        CHECK(rep.y_drift == 0.0);
    }
    // the equator itself is stationary
    HeatReport still = heat_flow_check(0.0, 0.2, 1e-9);
    CHECK(std::abs(still.final_x) < 1e-12);
}

TEST_CASE("closed-form solution solves the flow equation to second order") {
    double r200 = pde_residual(0.3, 200, 200);
    CHECK(r200 < 1e-3 * 4 * kPi * kPi);  // comfortably small on a 200x200 grid
    double r400 = pde_residual(0.3, 400, 400);
    double order = std::log2(r200 / r400);
    CHECK(order > 1.7);  // second-order convergence
    CHECK(order < 2.3);

    // the limiting geodesic is an exact solution: the measured residual sits
    // at the finite-difference floor of the t-derivatives and refines at
    // second order like everything else
    double floor_100 = std::pow(2 * kPi, 4) * 1e-4 / 12.0;
    double g100 = pde_residual(1e-9, 100, 100);
    double g200 = pde_residual(1e-9, 200, 200);
    CHECK(g100 < 4 * floor_100);
    CHECK(g200 < g100 / 3.0);
}

TEST_CASE("the pole is hit by exactly two flow lines") {
    C1Report rep = count_c1();
    CHECK(rep.forward_reaches_pole);
    CHECK(rep.reversed_reaches_pole);
    CHECK(rep.count == 2);
}
