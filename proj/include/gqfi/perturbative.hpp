#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "gqfi/bogoliubov.hpp"
#include "gqfi/qfi.hpp"

namespace gqfi {

// alpha(eps) = sum_k alpha[k] eps^k, same for beta. Field-mode coefficients.
struct TaylorChannel {
    std::vector<CMat> alpha;
    std::vector<CMat> beta;
    CVec G;          // free-evolution phases, the diagonal of alpha[0]
    double tau = 0;  // elapsed proper time the phases refer to
    std::vector<IdentityResiduals> order_residuals;

    int N() const { return alpha.empty() ? 0 : static_cast<int>(alpha[0].rows()); }
    int max_order() const { return static_cast<int>(alpha.size()) - 1; }
    BogoliubovTransform at(double eps) const;
    BogoliubovTransform derivative_at(double eps) const;
};

// Checks the structure: alpha[0] diagonal with unit-modulus entries, beta[0] = 0,
// and vanishing first-order diagonals. Identity residuals are recorded per order.
TaylorChannel make_taylor_channel(std::vector<CMat> alpha, std::vector<CMat> beta, double tau = 0,
                                  double tol = kDefaultTol);

// Taylor data by central differences in eps (step 1e-3, Richardson over {h, h/2}).
TaylorChannel taylor_channel_numeric(const std::function<BogoliubovTransform(double)>& t, int order = 3,
                                     double h = 1e-3, double tau = 0);

// Taylor coefficients X[k], Y[k] of the reduced moments over the probe modes.
struct CovarianceSeries {
    std::array<CMat, 4> X;
    std::array<CMat, 4> Y;
    std::vector<int> modes;

    // k-th derivative at eps = 0, which is what the regime formulas consume
    CMat Xd(int k) const;
    CMat Yd(int k) const;
};

CovarianceSeries expand_covariance(const GlobalMoments<double>& g, const TaylorChannel& ch,
                                   const std::vector<int>& modes);
CovarianceSeries expand_covariance(const ThermalSqueezedSpec& spec, const std::vector<double>& env_nu,
                                   const TaylorChannel& ch);

enum class Regime { ZeroTemp, SmallTemp, LargeTemp };
const char* regime_name(Regime r);

struct ValidityCheck {
    std::string condition;
    double ratio = 0;
    double threshold = 0.1;
    bool ok() const { return ratio < threshold; }
};

struct RegimeQfi {
    Regime regime = Regime::ZeroTemp;
    double h0 = 0;          // H(0)
    double h1 = 0;          // linear coefficient
    double h2 = 0;          // quadratic coefficient (one-mode large temperature)
    double correction = 0;  // small-temperature term
    double eps = 0;
    double value = 0;
    bool has_h1 = false;
    std::vector<ValidityCheck> validity;
    bool valid() const;
    // throws RegimeViolation when a validity check fails and force is false
    void require_valid(bool force) const;
};

RegimeQfi one_mode_zero_temp(const CovarianceSeries& s, cplx G_m, double r, double eps);
RegimeQfi one_mode_small_temp(double H1_zero, double Z, double eps);
RegimeQfi one_mode_large_temp(const CovarianceSeries& s, cplx G_m, double nu, double r, double eps);

// m, n index the probe modes of the channel; the series must be over {m, n}.
// The linear coefficient is only available at r = 0.
RegimeQfi two_mode_zero_temp(const CovarianceSeries& s, const TaylorChannel& ch, int m, int n, double r, double eps,
                             bool with_first_order = true);
// r = 0 only unless force is set
RegimeQfi two_mode_small_temp(double H2_zero, double q_m, double q_n, double Z, double eps, double r = 0,
                              bool force = false);

struct LargeTempCoefficients {
    double h00 = 0, h02 = 0, h10 = 0, h11 = 0, h12 = 0;
    double h00_mixing = 0;   // the |alpha_mn|^2 part of h00
    double h00_creation = 0; // the |beta_mn|^2 part of h00
};

LargeTempCoefficients large_temp_coefficients(const CovarianceSeries& s, const TaylorChannel& ch, int m, int n,
                                              double nu_m, double nu_n, double r);
RegimeQfi two_mode_large_temp(const CovarianceSeries& s, const TaylorChannel& ch, int m, int n, double nu_m,
                              double nu_n, double r, double eps);

// Reduced moments along eps for a Taylor channel, used as the exact path.
template <class R>
struct ChannelCurve {
    GlobalMoments<R> g;
    std::vector<MatC<R>> A;  // operator-form orders
    std::vector<MatC<R>> B;
    std::vector<int> modes;

    MatC<R> sigma(const R& eps) const;
    MatC<R> sigma_dot(const R& eps) const;
    // raw closed-form H at eps (one or two modes)
    Complex<R> closed_form_qfi(const R& eps) const;
};

template <class R>
ChannelCurve<R> make_channel_curve(const GlobalMoments<R>& g, const TaylorChannel& ch, const std::vector<int>& modes);

extern template struct ChannelCurve<double>;
extern template struct ChannelCurve<quad>;
extern template ChannelCurve<double> make_channel_curve<double>(const GlobalMoments<double>&, const TaylorChannel&,
                                                                const std::vector<int>&);
extern template ChannelCurve<quad> make_channel_curve<quad>(const GlobalMoments<quad>&, const TaylorChannel&,
                                                            const std::vector<int>&);

StateCurve as_state_curve(const ChannelCurve<double>& c);

}  // namespace gqfi
