#pragma once

#include <vector>

#include "gqfi/gaussian.hpp"

namespace gqfi {

struct IdentityResiduals {
    double unitarity = 0;  // |alpha alpha^dag - beta beta^dag - I|
    double symmetry = 0;   // |alpha beta^T - beta alpha^T|
    double max() const { return unitarity > symmetry ? unitarity : symmetry; }
};

// Field-mode coefficients over a truncated set of N modes.
struct BogoliubovTransform {
    CMat alpha;
    CMat beta;

    BogoliubovTransform() = default;
    BogoliubovTransform(CMat a, CMat b);
    int N() const { return static_cast<int>(alpha.rows()); }
    IdentityResiduals residuals() const;
    static BogoliubovTransform identity(int n);
};

IdentityResiduals check_identities(const BogoliubovTransform& t);

// S = [[alpha, beta], [conj(beta), conj(alpha)]]
CMat coefficient_form(const BogoliubovTransform& t);
// S~ = [[conj(alpha), -conj(beta)], [-beta, alpha]] = K conj(S) K, the matrix
// that acts on the moments
CMat operator_form(const BogoliubovTransform& t);
// the (alpha, beta) pair whose substitution into the element sums reproduces S~
BogoliubovTransform operator_coefficients(const BogoliubovTransform& t);

// S_R = L^dag S L and back
RMat real_form(const BogoliubovTransform& t);
BogoliubovTransform from_real_form(const RMat& s_real);

// Global system+environment moments, X0 and Y0 over N modes.
template <class R>
struct GlobalMoments {
    MatC<R> X0;
    MatC<R> Y0;
    int N() const { return static_cast<int>(X0.rows()); }
};

// Embeds a one- or two-mode probe into N modes with a thermal environment.
// env_nu has either one entry (broadcast) or N entries (probe slots ignored).
template <class R>
GlobalMoments<R> global_one_mode(int N, int m, R nu_m, R r, const std::vector<R>& env_nu);
template <class R>
GlobalMoments<R> global_two_mode(int N, int m, int n, R nu_m, R nu_n, R r, const std::vector<R>& env_nu);

GlobalMoments<double> embed_state(const GaussianState& probe, const std::vector<int>& modes, int N,
                                  const std::vector<double>& env_nu);
GaussianState global_state(const GlobalMoments<double>& g);

// Rows `modes` of X = A X0 A^dag + B conj(Y0) A^dag + A Y0 B^dag + B conj(X0) B^dag and
// Y = B conj(X0) A^T + A Y0 A^T + B conj(Y0) B^T + A X0 B^T, restricted to the
// mode columns as well. (A, B) is the pair substituted into the element sums.
template <class R>
void reduced_moments(const GlobalMoments<R>& g, const MatC<R>& A, const MatC<R>& B, const std::vector<int>& modes,
                     MatC<R>& X, MatC<R>& Y);
// derivative of the above for A(eps), B(eps) with derivatives dA, dB
template <class R>
void reduced_moments_derivative(const GlobalMoments<R>& g, const MatC<R>& A, const MatC<R>& B, const MatC<R>& dA,
                                const MatC<R>& dB, const std::vector<int>& modes, MatC<R>& dX, MatC<R>& dY);

extern template GlobalMoments<double> global_one_mode<double>(int, int, double, double, const std::vector<double>&);
extern template GlobalMoments<quad> global_one_mode<quad>(int, int, quad, quad, const std::vector<quad>&);
extern template GlobalMoments<double> global_two_mode<double>(int, int, int, double, double, double,
                                                              const std::vector<double>&);
extern template GlobalMoments<quad> global_two_mode<quad>(int, int, int, quad, quad, quad, const std::vector<quad>&);
extern template void reduced_moments<double>(const GlobalMoments<double>&, const MatC<double>&, const MatC<double>&,
                                             const std::vector<int>&, MatC<double>&, MatC<double>&);
extern template void reduced_moments<quad>(const GlobalMoments<quad>&, const MatC<quad>&, const MatC<quad>&,
                                           const std::vector<int>&, MatC<quad>&, MatC<quad>&);
extern template void reduced_moments_derivative<double>(const GlobalMoments<double>&, const MatC<double>&,
                                                        const MatC<double>&, const MatC<double>&,
                                                        const MatC<double>&, const std::vector<int>&, MatC<double>&,
                                                        MatC<double>&);
extern template void reduced_moments_derivative<quad>(const GlobalMoments<quad>&, const MatC<quad>&,
                                                      const MatC<quad>&, const MatC<quad>&, const MatC<quad>&,
                                                      const std::vector<int>&, MatC<quad>&, MatC<quad>&);

struct ChannelResult {
    GaussianState reduced;
    std::vector<double> env_nu;  // thermal parameters of the traced-out modes
    int N = 0;
    IdentityResiduals residuals;
};

// E[sigma0] = tr_E[S~ sigma0 S~^dag]; sigma0 is the 2N x 2N global state, which
// must be a product of the system block and a thermal-diagonal environment.
ChannelResult apply_channel(const GaussianState& global, const BogoliubovTransform& t,
                            const std::vector<int>& system_modes, double tol = kDefaultTol);

// Element-wise double sums over a, b for X_ij and Y_ij with the given pair.
// Returns the rows/columns listed in `modes` (all modes when empty).
void covariance_elements_general(const CMat& X0, const CMat& Y0, const CMat& alpha, const CMat& beta,
                                 const std::vector<int>& modes, CMat& X, CMat& Y);

struct ElementsResult {
    CMat X;
    CMat Y;
    bool truncation_warning = false;  // environment tail above 1e-10 at the last mode
    double tail = 0;
};

// Single-probe closed sums; evaluated on the field-mode coefficients of t.
ElementsResult covariance_elements_one_mode(double nu_m, double r, const std::vector<double>& env_nu,
                                            const BogoliubovTransform& t, int m);
// Two-mode probe closed sums; evaluated on operator_coefficients(t) so that
// they describe the same channel as apply_channel.
ElementsResult covariance_elements_two_mode(double nu_m, double nu_n, double r, const std::vector<double>& env_nu,
                                            const BogoliubovTransform& t, int m, int n);

}  // namespace gqfi
