#include "tate/flows.hpp"

#include <cmath>
#include <random>

namespace tate {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RabinowitzState RabinowitzState::critical(int level, int k_min, int k_max) {
    RabinowitzState s;
    s.k_min = k_min;
    s.k_max = k_max;
    s.z.assign(size_t(k_max - k_min + 1), {0.0, 0.0});
    s.eta = double(level);
    s.mode(level) = {1.0, 0.0};
    return s;
}

double RabinowitzState::norm_sq() const {
    double n = 0;
    for (auto& v : z) n += std::norm(v);
    return n;
}

double action(const RabinowitzState& s) {
    double a = 0;
    for (int k = s.k_min; k <= s.k_max; ++k) a += k * std::norm(s.mode(k));
    return kPi * a - s.eta * kPi * (s.norm_sq() - 1.0);
}

RabinowitzState rabinowitz_rhs(const RabinowitzState& s) {
    RabinowitzState d = s;
    for (int k = s.k_min; k <= s.k_max; ++k) d.mode(k) = 2.0 * kPi * (k - s.eta) * s.mode(k);
    d.eta = -kPi * (s.norm_sq() - 1.0);
    return d;
}

double gradient_norm_sq(const RabinowitzState& s) {
    RabinowitzState g = rabinowitz_rhs(s);
    double n = 0;
    for (auto& v : g.z) n += std::norm(v);
    return n + g.eta * g.eta;
}

namespace {

std::vector<double> pack(const RabinowitzState& s) {
    std::vector<double> y;
    y.reserve(s.z.size() * 2 + 1);
    for (auto& v : s.z) {
        y.push_back(v.real());
        y.push_back(v.imag());
    }
    y.push_back(s.eta);
    return y;
}

RabinowitzState unpack(const std::vector<double>& y, int k_min, int k_max) {
    RabinowitzState s;
    s.k_min = k_min;
    s.k_max = k_max;
    size_t modes = size_t(k_max - k_min + 1);
    s.z.resize(modes);
    for (size_t i = 0; i < modes; ++i) s.z[i] = {y[2 * i], y[2 * i + 1]};
    s.eta = y[2 * modes];
    return s;
}

}  // namespace

OdeResult integrate(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                    std::vector<double> y0, double s0, double s1, const OdeOptions& opt) {
    // Dormand-Prince 5(4) coefficients.
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeResult out;
    size_t n = y0.size();
    double s = s0;
    double dir = s1 >= s0 ? 1.0 : -1.0;
    double h = opt.h_init * dir;
    out.s.push_back(s);
    out.y.push_back(y0);
    auto add = [&](const std::vector<double>& a, double c, const std::vector<double>& b) {
        std::vector<double> r(n);
        for (size_t i = 0; i < n; ++i) r[i] = a[i] + c * b[i];
        return r;
    };
    std::vector<double> y = y0;
    while ((s1 - s) * dir > 1e-15) {
        if (std::abs(h) > std::abs(s1 - s)) h = s1 - s;
        auto k1 = f(y);
        auto k2 = f(add(y, h * a21, k1));
        std::vector<double> t3(n), t4(n), t5(n), t6(n), t7(n);
        for (size_t i = 0; i < n; ++i) t3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        auto k3 = f(t3);
        for (size_t i = 0; i < n; ++i)
            t4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        auto k4 = f(t4);
        for (size_t i = 0; i < n; ++i)
            t5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        auto k5 = f(t5);
        for (size_t i = 0; i < n; ++i)
            t6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        auto k6 = f(t6);
        std::vector<double> y_new(n);
        for (size_t i = 0; i < n; ++i)
            y_new[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        auto k7 = f(y_new);
        double err = 0;
        for (size_t i = 0; i < n; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                            e7 * k7[i]);
            double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        (void)c2; (void)c3; (void)c4; (void)c5;
        if (err <= 1.0) {
            s += h;
            y = y_new;
            out.s.push_back(s);
            out.y.push_back(y);
        }
        double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::min(5.0, std::max(0.2, factor));
        h *= factor;
        if (std::abs(h) < opt.h_min || ++out.steps > opt.max_steps) {
            out.step_failure = (s1 - s) * dir > 1e-12;
            break;
        }
    }
    return out;
}

RabinowitzDiagnostics integrate_rabinowitz(const RabinowitzState& s0, double s_span, double tol,
                                           const OdeOptions& opt) {
    RabinowitzDiagnostics d;
    std::vector<bool> started_zero(s0.z.size());
    for (size_t i = 0; i < s0.z.size(); ++i) started_zero[i] = std::norm(s0.z[i]) == 0.0;

    auto f = [&](const std::vector<double>& y) {
        return pack(rabinowitz_rhs(unpack(y, s0.k_min, s0.k_max)));
    };
    OdeResult r = integrate(f, pack(s0), 0.0, s_span, opt);
    d.step_failure = r.step_failure;
    double prev_action = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < r.y.size(); ++i) {
        RabinowitzState st = unpack(r.y[i], s0.k_min, s0.k_max);
        for (size_t m = 0; m < st.z.size(); ++m)
            if (started_zero[m]) d.invariant_drift = std::max(d.invariant_drift, std::abs(st.z[m]));
        double a = action(st);
        if (i > 0) d.action_decrease = std::max(d.action_decrease, prev_action - a);
        prev_action = a;
        d.action_trace.push_back({r.s[i], a});
    }
    RabinowitzState fin = unpack(r.y.back(), s0.k_min, s0.k_max);
    d.final_residual = std::sqrt(gradient_norm_sq(fin));
    d.final_action = action(fin);
    d.nearest_critical_level = int(std::lround(d.final_action / kPi));
    d.distance_to_critical = std::abs(d.final_action - kPi * d.nearest_critical_level);
    (void)tol;
    return d;
}

GradientIdentityReport gradient_identity_check(const RabinowitzState& s0, double s_span,
                                               int samples) {
    GradientIdentityReport rep;
    auto f = [&](const std::vector<double>& y) {
        return pack(rabinowitz_rhs(unpack(y, s0.k_min, s0.k_max)));
    };
    OdeResult r = integrate(f, pack(s0), 0.0, s_span);
    size_t stride = std::max<size_t>(1, r.y.size() / size_t(samples));
    // at each sample, difference the action across a short internal flow step;
    // skip the blow-up region where the identity drowns in cancellation
    const double ds = 1e-5;
    for (size_t i = 0; i < r.y.size() && rep.samples < samples; i += stride) {
        RabinowitzState at = unpack(r.y[i], s0.k_min, s0.k_max);
        double rhs = gradient_norm_sq(at);
        if (rhs < 1e-10 || rhs > 1e6 || at.norm_sq() > 9.0) continue;
        OdeResult fwd = integrate(f, r.y[i], 0.0, ds);
        OdeResult bwd = integrate(f, r.y[i], 0.0, -ds);
        double lhs = (action(unpack(fwd.y.back(), s0.k_min, s0.k_max)) -
                      action(unpack(bwd.y.back(), s0.k_min, s0.k_max))) /
                     (2 * ds);
        rep.max_rel_error = std::max(rep.max_rel_error, std::abs(lhs - rhs) / rhs);
        ++rep.samples;
    }
    return rep;
}

double directional_derivative_max_error(const RabinowitzState& s0, int directions, unsigned seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    double worst = 0.0;
    std::vector<double> base = pack(s0);
    auto a_of = [&](const std::vector<double>& y) { return action(unpack(y, s0.k_min, s0.k_max)); };
    // the rhs is the gradient of the action in these real coordinates
    std::vector<double> gv = pack(rabinowitz_rhs(s0));
    for (int t = 0; t < directions; ++t) {
        std::vector<double> delta(base.size());
        double norm = 0;
        for (auto& x : delta) {
            x = nd(gen);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (auto& x : delta) x /= norm;
        double h = 1e-6;
        std::vector<double> yp = base, ym = base;
        for (size_t i = 0; i < base.size(); ++i) {
            yp[i] += h * delta[i];
            ym[i] -= h * delta[i];
        }
        double fd = (a_of(yp) - a_of(ym)) / (2 * h);
        double ip = 0;
        for (size_t i = 0; i < base.size(); ++i) ip += gv[i] * delta[i];
        double scale = std::max(1.0, std::abs(ip));
        worst = std::max(worst, std::abs(fd - ip) / scale);
    }
    return worst;
}

HeteroclinicReport two_mode_heteroclinic(double perturbation, double s_span) {
    // The connection between the level-0 and level-1 critical circles is a
    // saddle-saddle orbit inside the invariant two-mode subspace. Both ends
    // have one expanding direction in the (|z|, eta)-plane, so the connecting
    // orbit is found by shooting over the circle of unstable directions at
    // the level-0 end. Overshoot blows up the norm, undershoot sends eta up.
    HeteroclinicReport rep;
    auto f = [&](const std::vector<double>& y) { return pack(rabinowitz_rhs(unpack(y, 0, 1))); };

    auto start_at = [&](double theta) {
        RabinowitzState s = RabinowitzState::critical(0, 0, 1);
        // unstable eigendirections: mode-1 growth and (Re z_0, eta) ~ -(1, -1),
        // taken with the sign that sends eta upward toward the target level
        s.mode(1) = {perturbation * std::sin(theta), 0.0};
        double c = perturbation * std::cos(theta) / std::sqrt(2.0);
        s.mode(0) -= c;
        s.eta += c;
        return pack(s);
    };
    // +1: norm blows up (overshoot), -1: eta runs away upward (undershoot)
    auto classify = [&](double theta) {
        std::vector<double> y = start_at(theta);
        double s = 0;
        OdeOptions opt;
        while (s < 4 * s_span) {
            OdeResult r = integrate(f, y, s, s + 0.25, opt);
            y = r.y.back();
            s = r.s.back();
            if (r.step_failure) return +1;
            RabinowitzState st = unpack(y, 0, 1);
            if (st.norm_sq() > 9.0) return +1;
            if (st.eta > 3.0) return -1;
        }
        return 0;
    };

    double lo = 1e-3, hi = kPi / 2 - 1e-3;
    int clo = classify(lo), chi = classify(hi);
    if (clo == chi) {
        rep.step_failure = true;
        return rep;
    }
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        int cm = classify(mid);
        if (cm == 0) {
            lo = hi = mid;
            break;
        }
        if (cm == clo) lo = mid;
        else hi = mid;
    }
    double theta = 0.5 * (lo + hi);

    // Forward along the connecting orbit: record the closest approach to the
    // level-1 circle; backward the flow returns to the level-0 circle.
    {
        std::vector<double> y = start_at(theta);
        double s = 0;
        double best = std::numeric_limits<double>::infinity();
        while (s < 4 * s_span) {
            OdeResult r = integrate(f, y, s, s + 0.05);
            y = r.y.back();
            s = r.s.back();
            RabinowitzState st = unpack(y, 0, 1);
            double res = std::sqrt(gradient_norm_sq(st));
            if (res < best) {
                best = res;
                rep.residual_forward = res;
                rep.action_forward = action(st);
            }
            if (st.norm_sq() > 9.0 || st.eta > 3.0 || r.step_failure) break;
        }
    }
    {
        // Backward the shot decays into the level-0 circle until rounding
        // reintroduces stable-direction noise; keep the closest approach.
        std::vector<double> y = start_at(theta);
        double s = 0;
        double best = std::numeric_limits<double>::infinity();
        while (s > -s_span) {
            OdeResult r = integrate(f, y, s, s - 0.05);
            rep.step_failure = rep.step_failure || r.step_failure;
            y = r.y.back();
            s = r.s.back();
            RabinowitzState st = unpack(y, 0, 1);
            double res = std::sqrt(gradient_norm_sq(st));
            if (res < best) {
                best = res;
                rep.residual_backward = res;
                rep.action_backward = action(st);
            } else if (res > 100 * best) {
                break;  // noise has taken over
            }
        }
    }
    return rep;
}

namespace {

double heat_closed_form(double x0, double s) {
    double e = std::exp(-8.0 * kPi * kPi * s);
    return x0 / std::sqrt((1.0 - x0 * x0) * e + x0 * x0);
}

}  // namespace

HeatReport heat_flow_check(double x0, double s_span, double tol) {
    HeatReport rep;
    auto f = [](const std::vector<double>& y) {
        double x = y[0];
        return std::vector<double>{4.0 * kPi * kPi * (1.0 - x * x) * x, 0.0};
    };
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    OdeResult r = integrate(f, {x0, 0.0}, 0.0, s_span, opt);
    for (size_t i = 0; i < r.y.size(); ++i) {
        double x = r.y[i][0];
        double ref = heat_closed_form(x0, r.s[i]);
        double denom = std::max(std::abs(ref), 1e-12);
        rep.max_rel_error = std::max(rep.max_rel_error, std::abs(x - ref) / denom);
        if (x0 != 0.0 && x * x0 <= 0.0 && std::abs(x) > 1e-15) rep.sign_preserved = false;
        rep.y_drift = std::max(rep.y_drift, std::abs(r.y[i][1]));
    }
    rep.final_x = r.y.back()[0];
    rep.converged_to_pole = std::abs(std::abs(rep.final_x) - 1.0) < tol;
    return rep;
}

double pde_residual(double x0, int grid_s, int grid_t, double s_lo, double s_hi) {
    // v(s,t) = (x(s), sqrt(1-x^2) cos(2 pi t), sqrt(1-x^2) sin(2 pi t))
    auto v = [&](double s, double t, int comp) {
        double x = heat_closed_form(x0, s);
        double rho = std::sqrt(std::max(0.0, 1.0 - x * x));
        switch (comp) {
            case 0: return x;
            case 1: return rho * std::cos(2 * kPi * t);
            default: return rho * std::sin(2 * kPi * t);
        }
    };
    double hs = (s_hi - s_lo) / grid_s;
    double ht = 1.0 / grid_t;
    double worst = 0.0;
    for (int i = 1; i + 1 < grid_s; ++i)
        for (int j = 0; j < grid_t; ++j) {
            double s = s_lo + i * hs;
            double t = j * ht;
            double res_sq = 0.0;
            double dt_sq = 0.0;
            double dv[3], dtt[3], vv[3];
            for (int c = 0; c < 3; ++c) {
                double vs = (v(s + hs, t, c) - v(s - hs, t, c)) / (2 * hs);
                double vt = (v(s, t + ht, c) - v(s, t - ht, c)) / (2 * ht);
                double vtt = (v(s, t + ht, c) - 2 * v(s, t, c) + v(s, t - ht, c)) / (ht * ht);
                dv[c] = vs;
                dtt[c] = vtt;
                vv[c] = v(s, t, c);
                dt_sq += vt * vt;
            }
            for (int c = 0; c < 3; ++c) {
                double r = dv[c] - dtt[c] - dt_sq * vv[c];
                res_sq += r * r;
            }
            worst = std::max(worst, std::sqrt(res_sq));
        }
    return worst;
}

C1Report count_c1() {
    C1Report rep;
    // The two orientation classes of the equatorial geodesic carry the same
    // reduced x-dynamics; each one contributes a single flow line with x0 > 0.
    auto runs_to_pole = [](int orientation) {
        double x0 = 1e-3;
        auto f = [](const std::vector<double>& y) {
            double x = y[0];
            return std::vector<double>{4.0 * kPi * kPi * (1.0 - x * x) * x};
        };
        OdeResult r = integrate(f, {x0}, 0.0, 0.8);
        double x = r.y.back()[0];
        // rho is floored near sqrt(rtol) by the integrator, so the loop
        // collapse is certified at that scale
        double rho = std::sqrt(std::max(0.0, 1.0 - x * x));
        double vy = rho * std::cos(orientation * kPi / 2.0);
        double vz = rho * std::sin(orientation * kPi / 2.0);
        return std::abs(x - 1.0) < 1e-9 && std::abs(vy) < 1e-4 && std::abs(vz) < 1e-4;
    };
    rep.forward_reaches_pole = runs_to_pole(1);
    rep.reversed_reaches_pole = runs_to_pole(-1);
    rep.count = int(rep.forward_reaches_pole) + int(rep.reversed_reaches_pole);
    return rep;
}

}  // namespace tate
