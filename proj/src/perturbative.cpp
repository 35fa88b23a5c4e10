#include "gqfi/perturbative.hpp"

#include <cmath>
#include <sstream>

namespace gqfi {

namespace {

template <class M>
M polynomial(const std::vector<M>& c, double eps) {
    M out = c.back();
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) out = (out * eps + c[k]).eval();
    return out;
}

template <class M>
M polynomial_derivative(const std::vector<M>& c, double eps) {
    M out = M::Zero(c[0].rows(), c[0].cols());
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) out = (out * eps + double(k) * c[k]).eval();
    return out;
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

BogoliubovTransform TaylorChannel::at(double eps) const {
    return BogoliubovTransform(polynomial(alpha, eps), polynomial(beta, eps));
}

BogoliubovTransform TaylorChannel::derivative_at(double eps) const {
    return BogoliubovTransform(polynomial_derivative(alpha, eps), polynomial_derivative(beta, eps));
}

TaylorChannel make_taylor_channel(std::vector<CMat> alpha, std::vector<CMat> beta, double tau, double tol) {
    if (alpha.empty() || alpha.size() != beta.size())
        throw Error(ErrorKind::InsufficientTaylorData, "taylor channel: need matching alpha and beta orders");
    const Eigen::Index n = alpha[0].rows();
    for (std::size_t k = 0; k < alpha.size(); ++k)
        if (alpha[k].rows() != n || alpha[k].cols() != n || beta[k].rows() != n || beta[k].cols() != n)
            throw Error(ErrorKind::DimensionMismatch, "taylor channel: all orders must be N x N");

    CMat a0 = alpha[0];
    CMat off = a0;
    off.diagonal().setZero();
    if (max_abs(off) > tol) throw Error(ErrorKind::InvalidArgument, "taylor channel: alpha(0) must be diagonal");
    for (Eigen::Index j = 0; j < n; ++j)
        if (std::abs(std::abs(a0(j, j)) - 1.0) > tol)
            throw Error(ErrorKind::InvalidArgument, "taylor channel: alpha(0) entries must have unit modulus");
    if (max_abs(beta[0]) > tol) throw Error(ErrorKind::InvalidArgument, "taylor channel: beta(0) must vanish");
    if (alpha.size() > 1) {
        const double d = std::max(alpha[1].diagonal().cwiseAbs().maxCoeff(), beta[1].diagonal().cwiseAbs().maxCoeff());
        if (d > tol) {
            std::ostringstream os;
            os << "taylor channel: first-order diagonal coefficients must vanish (found " << d << ")";
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
    }

    TaylorChannel ch;
    ch.alpha = std::move(alpha);
    ch.beta = std::move(beta);
    ch.G = a0.diagonal();
    ch.tau = tau;
    const int K = ch.max_order();
    for (int k = 0; k <= K; ++k) {
        CMat u = CMat::Zero(n, n), s = CMat::Zero(n, n);
        for (int i = 0; i <= k; ++i) {
            const int j = k - i;
            u += ch.alpha[i] * ch.alpha[j].adjoint() - ch.beta[i] * ch.beta[j].adjoint();
            s += ch.alpha[i] * ch.beta[j].transpose() - ch.beta[i] * ch.alpha[j].transpose();
        }
        if (k == 0) u -= CMat::Identity(n, n);
        ch.order_residuals.push_back({max_abs(u), max_abs(s)});
    }
    return ch;
}

TaylorChannel taylor_channel_numeric(const std::function<BogoliubovTransform(double)>& t, int order, double h,
                                     double tau) {
    if (order < 1 || order > 3) throw Error(ErrorKind::InvalidArgument, "taylor_channel_numeric: order in 1..3");
    auto deriv = [&](int k, double step, bool beta) -> CMat {
        auto f = [&](double e) { return beta ? t(e).beta : t(e).alpha; };
        switch (k) {
            case 1: return (f(step) - f(-step)) / (2 * step);
            case 2: return (f(step) - 2.0 * f(0) + f(-step)) / (step * step);
            default: return (f(2 * step) - 2.0 * f(step) + 2.0 * f(-step) - f(-2 * step)) / (2 * step * step * step);
        }
    };
    std::vector<CMat> alpha{t(0).alpha}, beta{t(0).beta};
    for (int k = 1; k <= order; ++k) {
        const double f = factorial(k);
        alpha.push_back((4.0 * deriv(k, h / 2, false) - deriv(k, h, false)) / (3.0 * f));
        beta.push_back((4.0 * deriv(k, h / 2, true) - deriv(k, h, true)) / (3.0 * f));
    }
    return make_taylor_channel(std::move(alpha), std::move(beta), tau, 1e-8);
}

CMat CovarianceSeries::Xd(int k) const { return factorial(k) * X.at(k); }
CMat CovarianceSeries::Yd(int k) const { return factorial(k) * Y.at(k); }

CovarianceSeries expand_covariance(const GlobalMoments<double>& g, const TaylorChannel& ch,
                                   const std::vector<int>& modes) {
    if (ch.max_order() < 3) {
        std::ostringstream os;
        os << "expand_covariance: orders 0..3 required, channel supplies 0.." << ch.max_order();
        throw Error(ErrorKind::InsufficientTaylorData, os.str());
    }
    if (g.N() != ch.N()) throw Error(ErrorKind::DimensionMismatch, "expand_covariance: truncation mismatch");
    const int k = static_cast<int>(modes.size());
    const int N = g.N();
    for (int m : modes)
        if (m < 0 || m >= N) throw Error(ErrorKind::TruncationError, "expand_covariance: mode outside truncation");
    std::array<CMat, 4> a, b, lx, ly;
    CMat x0c = g.X0.conjugate(), y0c = g.Y0.conjugate();
    for (int o = 0; o < 4; ++o) {
        // operator-form pair (conj(alpha), -conj(beta)) restricted to the probe rows
        a[o].resize(k, N);
        b[o].resize(k, N);
        for (int i = 0; i < k; ++i) {
            a[o].row(i) = ch.alpha[o].row(modes[i]).conjugate();
            b[o].row(i) = -ch.beta[o].row(modes[i]).conjugate();
        }
        lx[o] = a[o] * g.X0 + b[o] * y0c;
        ly[o] = a[o] * g.Y0 + b[o] * x0c;
    }
    CovarianceSeries s;
    s.modes = modes;
    for (int o = 0; o < 4; ++o) {
        s.X[o] = CMat::Zero(k, k);
        s.Y[o] = CMat::Zero(k, k);
        for (int i = 0; i <= o; ++i) {
            const int j = o - i;
            s.X[o] += lx[i] * a[j].adjoint() + ly[i] * b[j].adjoint();
            s.Y[o] += lx[i] * b[j].transpose() + ly[i] * a[j].transpose();
        }
    }
    return s;
}

CovarianceSeries expand_covariance(const ThermalSqueezedSpec& spec, const std::vector<double>& env_nu,
                                   const TaylorChannel& ch) {
    const int N = ch.N();
    if (spec.modes.size() == 1 && spec.nu.size() == 1)
        return expand_covariance(global_one_mode<double>(N, spec.modes[0], spec.nu[0], spec.r, env_nu), ch,
                                 spec.modes);
    if (spec.modes.size() == 2 && spec.nu.size() == 2)
        return expand_covariance(
            global_two_mode<double>(N, spec.modes[0], spec.modes[1], spec.nu[0], spec.nu[1], spec.r, env_nu), ch,
            spec.modes);
    throw Error(ErrorKind::InvalidArgument, "expand_covariance: one or two probe modes with matching nu");
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::ZeroTemp: return "zero_temp";
        case Regime::SmallTemp: return "small_temp";
        case Regime::LargeTemp: return "large_temp";
    }
    return "unknown";
}

bool RegimeQfi::valid() const {
    for (const auto& v : validity)
        if (!v.ok()) return false;
    return true;
}

void RegimeQfi::require_valid(bool force) const {
    if (force) return;
    for (const auto& v : validity)
        if (!v.ok()) {
            std::ostringstream os;
            os << regime_name(regime) << ": validity condition " << v.condition << " violated (" << v.ratio
               << " >= " << v.threshold << ")";
            throw Error(ErrorKind::RegimeViolation, os.str());
        }
}

namespace {

void require_modes(const CovarianceSeries& s, std::size_t k) {
    if (s.modes.size() != k) {
        std::ostringstream os;
        os << "regime formula expects a series over " << k << " mode(s)";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

ValidityCheck squeezing_window(double r, double eps) {
    return {"e^{2r} eps << 1", std::exp(2 * r) * std::abs(eps), 0.1};
}

}  // namespace

RegimeQfi one_mode_zero_temp(const CovarianceSeries& s, cplx G_m, double r, double eps) {
    require_modes(s, 1);
    const double c = std::cosh(2 * r), sh = std::sinh(2 * r);
    const cplx g2 = G_m * G_m;
    const double x2 = s.Xd(2)(0, 0).real(), x3 = s.Xd(3)(0, 0).real();
    const cplx y2 = s.Yd(2)(0, 0), y3 = s.Yd(3)(0, 0);
    RegimeQfi q;
    q.regime = Regime::ZeroTemp;
    q.h0 = x2 * c - std::real(g2 * y2) * sh;
    q.h1 = 2.0 / 3.0 * (x3 * c - std::real(g2 * y3) * sh);
    q.has_h1 = true;
    q.eps = eps;
    q.value = q.h0 + q.h1 * eps;
    q.validity.push_back(squeezing_window(r, eps));
    return q;
}

namespace {

RegimeQfi small_temp(double h_zero, double weight, double Z, double eps) {
    if (eps == 0) throw Error(ErrorKind::InvalidArgument, "small-temperature correction needs eps != 0");
    RegimeQfi q;
    q.regime = Regime::SmallTemp;
    q.h0 = h_zero;
    q.eps = eps;
    q.correction = -4.0 * weight * Z * Z / (eps * eps);
    q.value = h_zero + q.correction;
    q.validity.push_back({"Z^2 / eps^2 << 1", Z * Z / (eps * eps), 0.1});
    // the correction has to stay small against the leading term as well
    q.validity.push_back({"|correction| / H0 << 1",
                          h_zero != 0 ? std::abs(q.correction / h_zero) : (q.correction == 0 ? 0.0 : INFINITY),
                          0.1});
    return q;
}

}  // namespace

RegimeQfi one_mode_small_temp(double H1_zero, double Z, double eps) { return small_temp(H1_zero, 1.0, Z, eps); }

RegimeQfi one_mode_large_temp(const CovarianceSeries& s, cplx G_m, double nu, double r, double eps) {
    require_modes(s, 1);
    if (!(nu > 1.0)) throw Error(ErrorKind::WrongRegime, "one-mode large temperature needs nu > 1 (use zero_temp)");
    const double x2 = s.Xd(2)(0, 0).real();
    const cplx y2 = s.Yd(2)(0, 0);
    const cplx g2 = G_m * G_m;
    const double nu2 = nu * nu, nu4 = nu2 * nu2;
    const double s4 = std::sinh(4 * r), s2 = std::sinh(2 * r);
    RegimeQfi q;
    q.regime = Regime::LargeTemp;
    q.h0 = 0;
    q.h2 = std::norm(y2) / (nu2 + 1) + x2 * x2 / (nu2 - 1) -
           2 * nu2 * x2 * std::real(g2 * std::conj(y2)) / (nu4 - 1) * s4 +
           2 * nu2 * (x2 * x2 + std::real(g2 * g2 * std::conj(y2) * std::conj(y2))) / (nu4 - 1) * s2 * s2;
    q.eps = eps;
    q.value = q.h2 * eps * eps;
    q.validity.push_back({"eps^2 << nu - 1", eps * eps / (nu - 1), 0.1});
    return q;
}

RegimeQfi two_mode_zero_temp(const CovarianceSeries& s, const TaylorChannel& ch, int m, int n, double r, double eps,
                             bool with_first_order) {
    require_modes(s, 2);
    if (ch.max_order() < 1) throw Error(ErrorKind::InsufficientTaylorData, "two_mode_zero_temp: first order needed");
    if (with_first_order && r != 0)
        throw Error(ErrorKind::NotProvided, "two_mode_zero_temp: the linear coefficient is only known at r = 0");
    const cplx a1 = ch.alpha[1](m, n), b1 = ch.beta[1](m, n);
    const cplx gm = ch.G(m), gn = ch.G(n);
    const double c = std::cosh(2 * r), sh = std::sinh(2 * r);
    CMat x2 = s.Xd(2), y2 = s.Yd(2), x3 = s.Xd(3);
    const double im = std::imag(gm * std::conj(b1));
    RegimeQfi q;
    q.regime = Regime::ZeroTemp;
    q.h0 = (x2(0, 0) + x2(1, 1)).real() * c - 4 * std::norm(b1) - 2 * std::real(gm * gn * y2(0, 1)) * sh -
           4 * (std::norm(a1) + im * im) * sh * sh;
    if (with_first_order) {
        q.h1 = 2.0 / 3.0 * (6 * std::real(gn * b1 * y2(0, 1)) + (x3(0, 0) + x3(1, 1)).real());
        q.has_h1 = true;
    }
    q.eps = eps;
    q.value = q.h0 + q.h1 * eps;
    q.validity.push_back(squeezing_window(r, eps));
    return q;
}

RegimeQfi two_mode_small_temp(double H2_zero, double q_m, double q_n, double Z, double eps, double r, bool force) {
    if (r != 0 && !force)
        throw Error(ErrorKind::NotProvided, "two_mode_small_temp: the correction is only established at r = 0");
    return small_temp(H2_zero, q_m + q_n, Z, eps);
}

LargeTempCoefficients large_temp_coefficients(const CovarianceSeries& s, const TaylorChannel& ch, int m, int n,
                                              double nu_m, double nu_n, double r) {
    require_modes(s, 2);
    if (!(nu_m > 1.0) || !(nu_n > 1.0))
        throw Error(ErrorKind::WrongRegime, "two-mode large temperature needs nu_m, nu_n > 1");
    const cplx a1 = ch.alpha[1](m, n), b1 = ch.beta[1](m, n);
    const cplx gm = ch.G(m), gn = ch.G(n);
    const double c = std::cosh(2 * r);
    CMat x2 = s.Xd(2), y2 = s.Yd(2);
    const cplx x2mn = x2(0, 1), y2mn = y2(0, 1), y2mm = y2(0, 0), y2nn = y2(1, 1);
    const double xsum = (x2(0, 0) + x2(1, 1)).real();
    const double a2 = std::norm(a1), b2 = std::norm(b1);
    const double mm = nu_m, nn = nu_n;
    const double pm1 = mm * nn - 1, pp1 = mm * nn + 1;
    const double qm = mm * mm + 1, qn = nn * nn + 1;
    const double im_gb = std::imag(gm * std::conj(b1));
    const double re_gb = std::real(gm * std::conj(b1));
    const cplx ga = gn * std::conj(a1);
    const cplx gg = gm * gn;

    LargeTempCoefficients h;
    h.h00_mixing = 2 * (mm - nn) * (mm - nn) * a2 / pm1;
    h.h00_creation = 2 * (mm + nn) * (mm + nn) * b2 / pp1;
    h.h00 = h.h00_mixing + h.h00_creation;
    h.h02 = 2 * (mm + nn) * (mm + nn) * (pm1 * pm1 + mm * mm + nn * nn - 2) * a2 / (qm * qn * pm1) +
            2 * (mm + nn) * (mm + nn) * im_gb * im_gb / pp1;
    h.h10 = 4 * ((nn - mm) / pm1 * std::real(ga * std::conj(x2mn)) - (mm + nn) / pp1 * std::real(gn * b1 * y2mn) * c);
    // the third term carries (nu_m^2 + 1)^2 where the symmetric (nu_m^2 + 1)(nu_n^2 + 1) would be expected;
    // kept as given
    h.h11 = 2 * (mm + nn) * re_gb / pp1 * xsum -
            16 * mm * nn * (mm * mm - nn * nn) * (mm * mm - nn * nn) * a2 * re_gb / (qm * qn * (mm * mm * nn * nn - 1)) *
                c -
            2 * (mm + nn) * pp1 / (qm * qm) * std::real(ga * (std::conj(gg) * std::conj(y2mm) - gg * y2nn)) +
            2 * (mm - nn) * (mm + nn) * (mm + nn) / (qm * qn * pm1) *
                std::real(ga * (std::conj(gg) * std::conj(y2mm) + gg * y2nn)) * c;
    h.h12 = 4 * (nn - mm) * (nn + mm) * (nn + mm) * std::real(ga * std::conj(x2mn)) / (qm * qn * pm1);
    return h;
}

RegimeQfi two_mode_large_temp(const CovarianceSeries& s, const TaylorChannel& ch, int m, int n, double nu_m,
                              double nu_n, double r, double eps) {
    LargeTempCoefficients h = large_temp_coefficients(s, ch, m, n, nu_m, nu_n, r);
    const double sh = std::sinh(2 * r);
    RegimeQfi q;
    q.regime = Regime::LargeTemp;
    q.h0 = h.h00 + h.h02 * sh * sh;
    q.h1 = h.h10 + h.h11 * sh + h.h12 * sh * sh;
    q.has_h1 = true;
    q.eps = eps;
    q.value = q.h0 + q.h1 * eps;
    q.validity.push_back({"eps^2 << nu_m - 1", eps * eps / (nu_m - 1), 0.1});
    q.validity.push_back({"eps^2 << nu_n - 1", eps * eps / (nu_n - 1), 0.1});
    return q;
}

namespace {

template <class R>
MatC<R> assemble(const MatC<R>& X, const MatC<R>& Y) {
    const Eigen::Index k = X.rows();
    MatC<R> s(2 * k, 2 * k);
    s.topLeftCorner(k, k) = X;
    s.topRightCorner(k, k) = Y;
    s.bottomLeftCorner(k, k) = Y.conjugate();
    s.bottomRightCorner(k, k) = X.conjugate();
    return s;
}

template <class R>
MatC<R> poly(const std::vector<MatC<R>>& c, const R& eps) {
    MatC<R> out = c.back();
    const Complex<R> e(eps);
    for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) out = (out * e + c[k]).eval();
    return out;
}

template <class R>
MatC<R> poly_derivative(const std::vector<MatC<R>>& c, const R& eps) {
    MatC<R> out = MatC<R>::Zero(c[0].rows(), c[0].cols());
    const Complex<R> e(eps);
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) out = (out * e + c[k] * Complex<R>(R(k))).eval();
    return out;
}

}  // namespace

template <class R>
MatC<R> ChannelCurve<R>::sigma(const R& eps) const {
    MatC<R> X, Y;
    reduced_moments<R>(g, poly<R>(A, eps), poly<R>(B, eps), modes, X, Y);
    return assemble<R>(X, Y);
}

template <class R>
MatC<R> ChannelCurve<R>::sigma_dot(const R& eps) const {
    MatC<R> dX, dY;
    reduced_moments_derivative<R>(g, poly<R>(A, eps), poly<R>(B, eps), poly_derivative<R>(A, eps),
                                  poly_derivative<R>(B, eps), modes, dX, dY);
    return assemble<R>(dX, dY);
}

template <class R>
Complex<R> ChannelCurve<R>::closed_form_qfi(const R& eps) const {
    if (modes.size() == 1) return h1_closed<R>(sigma(eps), sigma_dot(eps));
    if (modes.size() == 2) return h2_closed<R>(sigma(eps), sigma_dot(eps));
    throw Error(ErrorKind::InvalidArgument, "closed_form_qfi: one or two modes");
}

template <class R>
ChannelCurve<R> make_channel_curve(const GlobalMoments<R>& g, const TaylorChannel& ch, const std::vector<int>& modes) {
    if (g.N() != ch.N()) throw Error(ErrorKind::DimensionMismatch, "channel curve: truncation mismatch");
    ChannelCurve<R> c;
    c.g = g;
    c.modes = modes;
    for (int k = 0; k <= ch.max_order(); ++k) {
        c.A.push_back(cast_matrix<R>(ch.alpha[k].conjugate()));
        c.B.push_back(cast_matrix<R>(CMat(-ch.beta[k].conjugate())));
    }
    return c;
}

template struct ChannelCurve<double>;
template struct ChannelCurve<quad>;
template ChannelCurve<double> make_channel_curve<double>(const GlobalMoments<double>&, const TaylorChannel&,
                                                         const std::vector<int>&);
template ChannelCurve<quad> make_channel_curve<quad>(const GlobalMoments<quad>&, const TaylorChannel&,
                                                     const std::vector<int>&);

StateCurve as_state_curve(const ChannelCurve<double>& c) {
    StateCurve sc;
    sc.state = [c](double e) { return make_state(c.sigma(e), CVec(), 1e-8); };
    sc.sigma_dot = [c](double e) { return CMat(c.sigma_dot(e)); };
    return sc;
}

}  // namespace gqfi
