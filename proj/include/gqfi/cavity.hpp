#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gqfi/perturbative.hpp"

namespace gqfi {

// Rigid cavity of proper length 1: acceleration a for proper time tau, then
// deceleration for tau. Mode labels below are physical (1-based).
struct CavityScenario {
    double a = 0;
    double tau = 1;
    int N = 10;
};

double cavity_omega(int n);
cplx cavity_alpha0(int n, double tau);
// first-order coefficients (multiply by a)
cplx cavity_alpha1(int m, int n, double tau);
cplx cavity_beta1(int m, int n, double tau);

// Orders 0..3 over modes 1..N (row/column j holds label j + 1). The second
// order follows from the first through the Bogoliubov identities:
//   alpha2 = (beta1 beta1^dag - alpha1 alpha1^dag) alpha0 / 2
//   beta2  = (alpha1 beta1^T - beta1 alpha1^T) conj(alpha0) / 2
// and the third order is set to zero. G holds e^{i omega_n 2 tau}.
TaylorChannel cavity_taylor_channel(double tau, int N);

// Finite-a transform alpha0 + a alpha1 + a^2 alpha2, a beta1 + a^2 beta2.
BogoliubovTransform cavity_transform(double tau, double a, int N);
// Only the printed orders, alpha0 + a alpha1 and a beta1.
BogoliubovTransform cavity_first_order_transform(double tau, double a, int N);

struct CavityChannel {
    TaylorChannel taylor;
    BogoliubovTransform transform;  // at the scenario's a
};
CavityChannel cavity_channel(const CavityScenario& sc);

struct SweepRow {
    double tau = 0;
    double r = 0;
    double nu1 = 1;
    double nu2 = 1;
    double H = 0;
    std::string regime;
    int N = 0;
};

struct SweepOptions {
    int N = 10;
    int jobs = 1;
};

// H1(0) for a squeezed vacuum in mode m, rows ordered tau-major.
std::vector<SweepRow> fig1_sweep(const std::vector<double>& r_values, const std::vector<double>& tau_grid, int m = 1,
                                 const SweepOptions& opt = {});
// H2(0) for a two-mode squeezed thermal probe in modes (m, n), rows ordered by
// pair, then tau, then r.
std::vector<SweepRow> fig2_sweep(const std::vector<std::pair<double, double>>& nu_pairs,
                                 const std::vector<double>& r_values, const std::vector<double>& tau_grid, int m = 1,
                                 int n = 2, const SweepOptions& opt = {});

// single points of the two sweeps
SweepRow fig1_point(double tau, double r, int m, int N);
SweepRow fig2_point(double tau, double r, double nu1, double nu2, int m, int n, int N);

// "start:stop:step" (inclusive) or a comma-separated list
std::vector<double> parse_grid(const std::string& text);

}  // namespace gqfi
