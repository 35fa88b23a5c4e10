#pragma once

#include <functional>
#include <string>

#include "gqfi/gaussian.hpp"

namespace gqfi {

// Closed forms in terms of Xi = K sigma. No branch handling: the caller gets
// the raw complex value (its imaginary part is rounding noise).
// One mode: the determinant entering the formula is det(sigma) = -det(Xi).
template <class R>
Complex<R> h1_closed(const MatC<R>& sigma, const MatC<R>& sigma_dot);
template <class R>
Complex<R> h2_closed(const MatC<R>& sigma, const MatC<R>& sigma_dot);

extern template Complex<double> h1_closed<double>(const MatC<double>&, const MatC<double>&);
extern template Complex<quad> h1_closed<quad>(const MatC<quad>&, const MatC<quad>&);
extern template Complex<double> h2_closed<double>(const MatC<double>&, const MatC<double>&);
extern template Complex<quad> h2_closed<quad>(const MatC<quad>&, const MatC<quad>&);

struct QfiOptions {
    double purity_tol = 1e-9;   // |det Xi| - 1 below this selects the pure branch
    double imag_tol = 1e-9;     // relative imaginary residue tolerated on H
    double reg_delta = 1e-6;    // nu-regularisation for two-mode pure states
    double reg_drift = 1e-3;    // allowed relative change between delta and delta/10
};

struct QfiResult {
    double value = 0;
    bool pure_branch = false;
    bool displacement_included = false;
    double regularisation_drift = 0;  // only set when the two-mode pure branch ran
    std::string notes;
};

QfiResult qfi_one_mode_exact(const CMat& sigma, const CMat& sigma_dot, const QfiOptions& opt = {});
QfiResult qfi_two_mode_exact(const CMat& sigma, const CMat& sigma_dot, const QfiOptions& opt = {});
// dispatch on size; adds the displacement term when d_dot is non-empty
QfiResult qfi_exact(const CMat& sigma, const CMat& sigma_dot, const CVec& d_dot = CVec(),
                    const QfiOptions& opt = {});

// 2 d_dot^dag sigma^-1 d_dot
double qfi_displacement_term(const CVec& d_dot, const CMat& sigma);

// Central difference with Richardson extrapolation over {h, h/2}.
CMat central_difference(const std::function<CMat(double)>& f, double x, double h = 1e-5);
CVec central_difference(const std::function<CVec(double)>& f, double x, double h = 1e-5);

struct StateCurve {
    std::function<GaussianState(double)> state;
    std::function<CMat(double)> sigma_dot;  // optional analytic derivative
    double h = 1e-5;

    CMat derivative(double eps) const;
    CVec displacement_derivative(double eps) const;
};

QfiResult qfi_exact(const StateCurve& curve, double eps, const QfiOptions& opt = {});

struct NumericQfi {
    double value = 0;
    double error_estimate = 0;
    double coarse = 0;  // 8(1 - sqrt F)/h^2 at the coarse step
    double fine = 0;    // same at h/2
};

// Bures-limit estimate of H = lim 8 (1 - sqrt F(eps - h/2, eps + h/2)) / h^2.
NumericQfi qfi_numeric(const StateCurve& curve, double eps0, double d_eps = 1e-3);

}  // namespace gqfi
