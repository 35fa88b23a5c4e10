#include "gqfi/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gqfi {

BogoliubovTransform::BogoliubovTransform(CMat a, CMat b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha.rows() != alpha.cols() || beta.rows() != beta.cols() || alpha.rows() != beta.rows())
        throw Error(ErrorKind::DimensionMismatch, "bogoliubov: alpha and beta must be square and equal size");
}

IdentityResiduals BogoliubovTransform::residuals() const { return check_identities(*this); }

BogoliubovTransform BogoliubovTransform::identity(int n) {
    return BogoliubovTransform(CMat::Identity(n, n), CMat::Zero(n, n));
}

IdentityResiduals check_identities(const BogoliubovTransform& t) {
    const int n = t.N();
    IdentityResiduals r;
    r.unitarity = max_abs(t.alpha * t.alpha.adjoint() - t.beta * t.beta.adjoint() - CMat::Identity(n, n));
    r.symmetry = max_abs(t.alpha * t.beta.transpose() - t.beta * t.alpha.transpose());
    return r;
}

CMat coefficient_form(const BogoliubovTransform& t) {
    const int n = t.N();
    CMat s(2 * n, 2 * n);
    s << t.alpha, t.beta, t.beta.conjugate(), t.alpha.conjugate();
    return s;
}

CMat operator_form(const BogoliubovTransform& t) {
    const int n = t.N();
    CMat s(2 * n, 2 * n);
    s << t.alpha.conjugate(), -t.beta.conjugate(), -t.beta, t.alpha;
    return s;
}

BogoliubovTransform operator_coefficients(const BogoliubovTransform& t) {
    return BogoliubovTransform(t.alpha.conjugate(), -t.beta.conjugate());
}

RMat real_form(const BogoliubovTransform& t) {
    CMat L = l_matrix(t.N());
    CMat sr = L.adjoint() * coefficient_form(t) * L;
    if (sr.imag().cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, max_abs(sr)))
        throw Error(ErrorKind::NumericInstability, "real_form: result is not real");
    return sr.real();
}

BogoliubovTransform from_real_form(const RMat& s_real) {
    if (s_real.rows() != s_real.cols() || s_real.rows() % 2 != 0)
        throw Error(ErrorKind::DimensionMismatch, "from_real_form: need a 2N x 2N matrix");
    const int n = static_cast<int>(s_real.rows() / 2);
    CMat L = l_matrix(n);
    CMat s = L * s_real.cast<cplx>() * L.adjoint();
    return BogoliubovTransform(s.topLeftCorner(n, n), s.topRightCorner(n, n));
}

namespace {

template <class R>
std::vector<R> expand_env(const std::vector<R>& env_nu, int N) {
    if (env_nu.size() == 1) return std::vector<R>(N, env_nu[0]);
    if (static_cast<int>(env_nu.size()) != N) {
        std::ostringstream os;
        os << "environment: expected 1 or " << N << " thermal parameters, got " << env_nu.size();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    return env_nu;
}

void check_mode(int m, int N) {
    if (m < 0 || m >= N) {
        std::ostringstream os;
        os << "mode " << m << " outside truncation N = " << N;
        throw Error(ErrorKind::TruncationError, os.str());
    }
}

}  // namespace

template <class R>
GlobalMoments<R> global_one_mode(int N, int m, R nu_m, R r, const std::vector<R>& env_nu) {
    using std::cosh;
    using std::sinh;
    check_mode(m, N);
    std::vector<R> env = expand_env(env_nu, N);
    GlobalMoments<R> g;
    g.X0 = MatC<R>::Zero(N, N);
    g.Y0 = MatC<R>::Zero(N, N);
    for (int a = 0; a < N; ++a) g.X0(a, a) = Complex<R>(env[a]);
    g.X0(m, m) = Complex<R>(nu_m * cosh(2 * r));
    g.Y0(m, m) = Complex<R>(nu_m * sinh(2 * r));
    return g;
}

template <class R>
GlobalMoments<R> global_two_mode(int N, int m, int n, R nu_m, R nu_n, R r, const std::vector<R>& env_nu) {
    using std::cosh;
    using std::sinh;
    check_mode(m, N);
    check_mode(n, N);
    if (m == n) throw Error(ErrorKind::InvalidArgument, "two-mode probe needs distinct modes");
    std::vector<R> env = expand_env(env_nu, N);
    GlobalMoments<R> g;
    g.X0 = MatC<R>::Zero(N, N);
    g.Y0 = MatC<R>::Zero(N, N);
    for (int a = 0; a < N; ++a) g.X0(a, a) = Complex<R>(env[a]);
    const R ch = cosh(r), sh = sinh(r);
    g.X0(m, m) = Complex<R>(nu_m * ch * ch + nu_n * sh * sh);
    g.X0(n, n) = Complex<R>(nu_n * ch * ch + nu_m * sh * sh);
    g.Y0(m, n) = g.Y0(n, m) = Complex<R>((nu_m + nu_n) * ch * sh);
    return g;
}

GlobalMoments<double> embed_state(const GaussianState& probe, const std::vector<int>& modes, int N,
                                  const std::vector<double>& env_nu) {
    if (static_cast<int>(modes.size()) != probe.n_modes)
        throw Error(ErrorKind::DimensionMismatch, "embed_state: one mode label per probe mode");
    if (std::set<int>(modes.begin(), modes.end()).size() != modes.size())
        throw Error(ErrorKind::InvalidArgument, "embed_state: repeated mode label");
    std::vector<double> env = expand_env(env_nu, N);
    GlobalMoments<double> g;
    g.X0 = CMat::Zero(N, N);
    g.Y0 = CMat::Zero(N, N);
    for (int a = 0; a < N; ++a) g.X0(a, a) = env[a];
    CMat X = probe.X(), Y = probe.Y();
    for (std::size_t i = 0; i < modes.size(); ++i) check_mode(modes[i], N);
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = 0; j < modes.size(); ++j) {
            g.X0(modes[i], modes[j]) = X(i, j);
            g.Y0(modes[i], modes[j]) = Y(i, j);
        }
    return g;
}

GaussianState global_state(const GlobalMoments<double>& g) { return make_state(assemble_sigma(g.X0, g.Y0)); }

template <class R>
void reduced_moments(const GlobalMoments<R>& g, const MatC<R>& A, const MatC<R>& B, const std::vector<int>& modes,
                     MatC<R>& X, MatC<R>& Y) {
    const int k = static_cast<int>(modes.size());
    const int N = g.N();
    MatC<R> a(k, N), b(k, N);
    for (int i = 0; i < k; ++i) {
        check_mode(modes[i], N);
        a.row(i) = A.row(modes[i]);
        b.row(i) = B.row(modes[i]);
    }
    MatC<R> x0c = g.X0.conjugate(), y0c = g.Y0.conjugate();
    MatC<R> left_x = a * g.X0 + b * y0c;  // rows of (A X0 + B conj(Y0))
    MatC<R> left_y = a * g.Y0 + b * x0c;  // rows of (A Y0 + B conj(X0))
    X = left_x * a.adjoint() + left_y * b.adjoint();
    Y = left_x * b.transpose() + left_y * a.transpose();
}

template <class R>
void reduced_moments_derivative(const GlobalMoments<R>& g, const MatC<R>& A, const MatC<R>& B, const MatC<R>& dA,
                                const MatC<R>& dB, const std::vector<int>& modes, MatC<R>& dX, MatC<R>& dY) {
    const int k = static_cast<int>(modes.size());
    const int N = g.N();
    MatC<R> a(k, N), b(k, N), da(k, N), db(k, N);
    for (int i = 0; i < k; ++i) {
        check_mode(modes[i], N);
        a.row(i) = A.row(modes[i]);
        b.row(i) = B.row(modes[i]);
        da.row(i) = dA.row(modes[i]);
        db.row(i) = dB.row(modes[i]);
    }
    MatC<R> x0c = g.X0.conjugate(), y0c = g.Y0.conjugate();
    MatC<R> lx = a * g.X0 + b * y0c, ly = a * g.Y0 + b * x0c;
    MatC<R> dlx = da * g.X0 + db * y0c, dly = da * g.Y0 + db * x0c;
    dX = dlx * a.adjoint() + dly * b.adjoint() + lx * da.adjoint() + ly * db.adjoint();
    dY = dlx * b.transpose() + dly * a.transpose() + lx * db.transpose() + ly * da.transpose();
}

template GlobalMoments<double> global_one_mode<double>(int, int, double, double, const std::vector<double>&);
template GlobalMoments<quad> global_one_mode<quad>(int, int, quad, quad, const std::vector<quad>&);
template GlobalMoments<double> global_two_mode<double>(int, int, int, double, double, double,
                                                       const std::vector<double>&);
template GlobalMoments<quad> global_two_mode<quad>(int, int, int, quad, quad, quad, const std::vector<quad>&);
template void reduced_moments<double>(const GlobalMoments<double>&, const MatC<double>&, const MatC<double>&,
                                      const std::vector<int>&, MatC<double>&, MatC<double>&);
template void reduced_moments<quad>(const GlobalMoments<quad>&, const MatC<quad>&, const MatC<quad>&,
                                    const std::vector<int>&, MatC<quad>&, MatC<quad>&);
template void reduced_moments_derivative<double>(const GlobalMoments<double>&, const MatC<double>&,
                                                 const MatC<double>&, const MatC<double>&, const MatC<double>&,
                                                 const std::vector<int>&, MatC<double>&, MatC<double>&);
template void reduced_moments_derivative<quad>(const GlobalMoments<quad>&, const MatC<quad>&, const MatC<quad>&,
                                               const MatC<quad>&, const MatC<quad>&, const std::vector<int>&,
                                               MatC<quad>&, MatC<quad>&);

ChannelResult apply_channel(const GaussianState& global, const BogoliubovTransform& t,
                            const std::vector<int>& system_modes, double tol) {
    const int N = t.N();
    if (global.n_modes != N) {
        std::ostringstream os;
        os << "apply_channel: global state has " << global.n_modes << " modes, transform has " << N;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (system_modes.empty()) throw Error(ErrorKind::InvalidArgument, "apply_channel: no system modes");
    std::vector<bool> is_sys(N, false);
    for (int m : system_modes) {
        check_mode(m, N);
        if (is_sys[m]) throw Error(ErrorKind::InvalidArgument, "apply_channel: repeated system mode");
        is_sys[m] = true;
    }
    CMat X0 = global.X(), Y0 = global.Y();
    const double scale = std::max(1.0, max_abs(global.sigma));
    ChannelResult res;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (is_sys[i] && is_sys[j]) continue;
            const bool diag_env = (i == j);
            const double off = diag_env ? std::max(std::abs(X0(i, j).imag()), std::abs(Y0(i, j)))
                                        : std::max(std::abs(X0(i, j)), std::abs(Y0(i, j)));
            if (off > tol * scale) {
                std::ostringstream os;
                os << "apply_channel: initial state is not system (x) thermal environment at (" << i << ", " << j
                   << ")";
                throw Error(ErrorKind::UnsupportedInitialState, os.str());
            }
        }
    for (int a = 0; a < N; ++a)
        if (!is_sys[a]) res.env_nu.push_back(X0(a, a).real());

    CMat S = operator_form(t);
    CMat sigma = S * global.sigma * S.adjoint();
    CVec d = S * global.d;
    const int k = static_cast<int>(system_modes.size());
    std::vector<int> idx;
    for (int m : system_modes) idx.push_back(m);
    for (int m : system_modes) idx.push_back(m + N);
    CMat red(2 * k, 2 * k);
    CVec dr(2 * k);
    for (int i = 0; i < 2 * k; ++i) {
        dr(i) = d(idx[i]);
        for (int j = 0; j < 2 * k; ++j) red(i, j) = sigma(idx[i], idx[j]);
    }
    res.reduced = make_state(red, dr, 1e-8);
    res.N = N;
    res.residuals = check_identities(t);
    return res;
}

void covariance_elements_general(const CMat& X0, const CMat& Y0, const CMat& alpha, const CMat& beta,
                                 const std::vector<int>& modes, CMat& X, CMat& Y) {
    const int N = static_cast<int>(X0.rows());
    if (X0.cols() != N || Y0.rows() != N || Y0.cols() != N || alpha.rows() != N || alpha.cols() != N ||
        beta.rows() != N || beta.cols() != N)
        throw Error(ErrorKind::DimensionMismatch, "covariance_elements_general: inconsistent dimensions");
    std::vector<int> rows = modes;
    if (rows.empty())
        for (int i = 0; i < N; ++i) rows.push_back(i);
    for (int m : rows) check_mode(m, N);
    const int k = static_cast<int>(rows.size());
    X = CMat::Zero(k, k);
    Y = CMat::Zero(k, k);
    for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
            const int i = rows[p], j = rows[q];
            cplx x = 0, y = 0;
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    const cplx x0 = X0(a, b), y0 = Y0(a, b);
                    x += alpha(i, a) * x0 * std::conj(alpha(j, b)) +
                         beta(i, a) * std::conj(y0) * std::conj(alpha(j, b)) +
                         alpha(i, a) * y0 * std::conj(beta(j, b)) +
                         beta(i, a) * std::conj(x0) * std::conj(beta(j, b));
                    y += beta(i, a) * std::conj(x0) * alpha(j, b) + alpha(i, a) * y0 * alpha(j, b) +
                         beta(i, a) * std::conj(y0) * beta(j, b) + alpha(i, a) * x0 * beta(j, b);
                }
            X(p, q) = x;
            Y(p, q) = y;
        }
}

namespace {

double env_tail(const BogoliubovTransform& t, int m) {
    const int last = t.N() - 1;
    return std::norm(t.alpha(m, last)) + std::norm(t.beta(m, last));
}

}  // namespace

ElementsResult covariance_elements_one_mode(double nu_m, double r, const std::vector<double>& env_nu,
                                            const BogoliubovTransform& t, int m) {
    const int N = t.N();
    check_mode(m, N);
    std::vector<double> env = expand_env(env_nu, N);
    const double c = std::cosh(2 * r), s = std::sinh(2 * r);
    const cplx amm = t.alpha(m, m), bmm = t.beta(m, m);
    cplx x = nu_m * (c * (std::norm(amm) + std::norm(bmm)) - 2.0 * std::real(amm * std::conj(bmm)) * s);
    cplx y = nu_m * (-2.0 * c * std::conj(amm) * std::conj(bmm) +
                     (std::conj(amm) * std::conj(amm) + std::conj(bmm) * std::conj(bmm)) * s);
    for (int a = 0; a < N; ++a) {
        if (a == m) continue;
        x += env[a] * (std::norm(t.alpha(m, a)) + std::norm(t.beta(m, a)));
        y -= 2.0 * env[a] * std::conj(t.alpha(m, a)) * std::conj(t.beta(m, a));
    }
    ElementsResult out;
    out.X = CMat::Constant(1, 1, x);
    out.Y = CMat::Constant(1, 1, y);
    out.tail = env_tail(t, m);
    out.truncation_warning = out.tail > 1e-10;
    return out;
}

ElementsResult covariance_elements_two_mode(double nu_m, double nu_n, double r, const std::vector<double>& env_nu,
                                            const BogoliubovTransform& t, int m, int n) {
    const int N = t.N();
    check_mode(m, N);
    check_mode(n, N);
    if (m == n) throw Error(ErrorKind::InvalidArgument, "two-mode elements need distinct modes");
    std::vector<double> env = expand_env(env_nu, N);
    BogoliubovTransform op = operator_coefficients(t);
    const CMat& al = op.alpha;
    const CMat& be = op.beta;
    const double ch = std::cosh(r), sh = std::sinh(r);
    const double dmn = nu_m * ch * ch + nu_n * sh * sh;
    const double dnm = nu_n * ch * ch + nu_m * sh * sh;
    const double cmn = (nu_m + nu_n) * ch * sh, cnm = cmn;
    const int idx[2] = {m, n};
    ElementsResult out;
    out.X = CMat::Zero(2, 2);
    out.Y = CMat::Zero(2, 2);
    for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
            const int i = idx[p], j = idx[q];
            cplx x = dmn * (al(i, m) * std::conj(al(j, m)) + be(i, m) * std::conj(be(j, m))) +
                     cmn * (be(i, m) * std::conj(al(j, n)) + al(i, m) * std::conj(be(j, n))) +
                     dnm * (al(i, n) * std::conj(al(j, n)) + be(i, n) * std::conj(be(j, n))) +
                     cnm * (be(i, n) * std::conj(al(j, m)) + al(i, n) * std::conj(be(j, m)));
            cplx y = dmn * (be(i, m) * al(j, m) + al(i, m) * be(j, m)) +
                     cmn * (al(i, m) * al(j, n) + be(i, m) * be(j, n)) +
                     dnm * (be(i, n) * al(j, n) + al(i, n) * be(j, n)) +
                     cnm * (al(i, n) * al(j, m) + be(i, n) * be(j, m));
            for (int a = 0; a < N; ++a) {
                if (a == m || a == n) continue;
                x += env[a] * (al(i, a) * std::conj(al(j, a)) + be(i, a) * std::conj(be(j, a)));
                y += env[a] * (be(i, a) * al(j, a) + al(i, a) * be(j, a));
            }
            out.X(p, q) = x;
            out.Y(p, q) = y;
        }
    out.tail = std::max(env_tail(t, m), env_tail(t, n));
    out.truncation_warning = out.tail > 1e-10;
    return out;
}

}  // namespace gqfi
