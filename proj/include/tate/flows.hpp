#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace tate {

// Truncated Fourier state (z_k for k in [k_min, k_max]) plus the Lagrange
// multiplier eta.
struct RabinowitzState {
    int k_min = -8, k_max = 8;
    std::vector<std::complex<double>> z;  // index k - k_min
    double eta = 0.0;

    std::complex<double>& mode(int k) { return z[size_t(k - k_min)]; }
    const std::complex<double>& mode(int k) const { return z[size_t(k - k_min)]; }
    static RabinowitzState critical(int level, int k_min = -8, int k_max = 8);

    double norm_sq() const;
};

double action(const RabinowitzState& s);                       // A^mu
RabinowitzState rabinowitz_rhs(const RabinowitzState& s);      // positive gradient
double gradient_norm_sq(const RabinowitzState& s);

// Dormand-Prince 5(4) adaptive integration of y' = f(y).
struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-14;
    long max_steps = 2000000;
};

struct OdeResult {
    std::vector<double> s;                    // accepted times
    std::vector<std::vector<double>> y;       // states
    bool step_failure = false;
    long steps = 0;
};

OdeResult integrate(const std::function<std::vector<double>(const std::vector<double>&)>& f,
                    std::vector<double> y0, double s0, double s1, const OdeOptions& opt = {});

struct RabinowitzDiagnostics {
    bool step_failure = false;
    double invariant_drift = 0.0;   // max |z_k| over modes that started at 0
    double action_decrease = 0.0;   // largest decrease along the flow (>= 0 is bad)
    double final_residual = 0.0;    // |grad| at the endpoint
    double final_action = 0.0;
    int nearest_critical_level = 0;
    double distance_to_critical = 0.0;
    std::vector<std::pair<double, double>> action_trace;  // (s, action)
};

RabinowitzDiagnostics integrate_rabinowitz(const RabinowitzState& s0, double s_span,
                                           double tol, const OdeOptions& opt = {});

// Gradient identity dA/ds = |grad A|^2 along a trajectory, sampled.
struct GradientIdentityReport {
    double max_rel_error = 0.0;
    int samples = 0;
};
GradientIdentityReport gradient_identity_check(const RabinowitzState& s0, double s_span,
                                               int samples);

// Directional derivative <grad A, delta> vs finite differences of A.
double directional_derivative_max_error(const RabinowitzState& s0, int directions,
                                        unsigned seed = 12345u);

// Heteroclinic run in the exact two-mode invariant subspace between the
// level-0 and level-1 critical circles.
struct HeteroclinicReport {
    double action_backward = 0.0;  // limit value toward s -> -infinity
    double action_forward = 0.0;   // limit value toward s -> +infinity
    double residual_backward = 0.0;
    double residual_forward = 0.0;
    bool step_failure = false;
};
HeteroclinicReport two_mode_heteroclinic(double perturbation = 1e-5, double s_span = 6.0);

// --- Heat flow on the 2-sphere ------------------------------------------------

struct HeatReport {
    double max_rel_error = 0.0;   // integrator vs closed form
    bool sign_preserved = true;
    double final_x = 0.0;
    bool converged_to_pole = false;
    double y_drift = 0.0;         // phase must stay constant
};

HeatReport heat_flow_check(double x0, double s_span, double tol);

// max |d_s v - d_t^2 v - |d_t v|^2 v| of the closed-form solution on a grid
double pde_residual(double x0, int grid_s, int grid_t, double s_lo = 0.0, double s_hi = 0.25);

// Number of isolated gradient flow lines into the positive pole, counted over
// the two orientation classes of the equatorial geodesic.
struct C1Report {
    int count = 0;
    bool forward_reaches_pole = false;
    bool reversed_reaches_pole = false;
};
C1Report count_c1();

}  // namespace tate
