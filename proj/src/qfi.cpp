#include "gqfi/qfi.hpp"

#include <cmath>
#include <sstream>

#include "gqfi/fidelity.hpp"

namespace gqfi {
namespace {

template <class R>
MatC<R> k_matrix(Eigen::Index n2) {
    MatC<R> k = MatC<R>::Identity(n2, n2);
    for (Eigen::Index i = n2 / 2; i < n2; ++i) k(i, i) = Complex<R>(R(-1));
    return k;
}

double checked_real(cplx z, double tol, const char* what) {
    if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real()))) {
        std::ostringstream os;
        os << what << ": imaginary residue " << z.imag() << " on value " << z.real();
        throw Error(ErrorKind::NumericInstability, os.str());
    }
    return z.real();
}

void check_square(const CMat& sigma, const CMat& sigma_dot, Eigen::Index n2) {
    if (sigma.rows() != n2 || sigma.cols() != n2 || sigma_dot.rows() != n2 || sigma_dot.cols() != n2) {
        std::ostringstream os;
        os << "qfi: expected " << n2 << "x" << n2 << " sigma and sigma_dot";
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

}  // namespace

template <class R>
Complex<R> h1_closed(const MatC<R>& sigma, const MatC<R>& sigma_dot) {
    using C = Complex<R>;
    MatC<R> k = k_matrix<R>(2);
    MatC<R> xi = k * sigma, xi_dot = k * sigma_dot;
    Eigen::PartialPivLU<MatC<R>> lu(xi);
    MatC<R> a = lu.solve(xi_dot);
    const C one(R(1));
    // det(K) = -1 for one mode, so the determinant that makes the formula
    // reproduce the Bures limit is det(sigma)
    const C d = sigma.determinant();
    const C tr_a = a.trace();
    const C tr_a2 = (a * a).trace();
    const C half(R(0.5));
    return half * tr_a2 / (one + one / d) + half * (one / d) * tr_a * tr_a / (one - one / (d * d));
}

template <class R>
Complex<R> h2_closed(const MatC<R>& sigma, const MatC<R>& sigma_dot) {
    using C = Complex<R>;
    using std::sqrt;
    const Eigen::Index n2 = 4;
    MatC<R> k = k_matrix<R>(n2);
    MatC<R> I = MatC<R>::Identity(n2, n2);
    MatC<R> xi = k * sigma, xi_dot = k * sigma_dot;
    const C one(R(1)), two(R(2)), four(R(4));

    const C det_xi = xi.determinant();
    MatC<R> a = Eigen::PartialPivLU<MatC<R>>(xi).solve(xi_dot);
    const C t1 = det_xi * (a * a).trace();

    MatC<R> q = I + xi * xi;
    MatC<R> b = Eigen::PartialPivLU<MatC<R>>(q).solve(xi_dot);
    const C t2 = sqrt(q.determinant()) * (b * b).trace();

    const C tr_xxd = (xi * xi_dot).trace();
    const C tr_a = a.trace();
    const C tr_x2 = (xi * xi).trace();
    const C num = four * (one + det_xi) * (tr_xxd * tr_xxd - det_xi * tr_a * tr_a) +
                  det_xi * tr_a * tr_x2 * (tr_a * tr_x2 - four * tr_xxd);
    const C den = four * (one + det_xi) * (one + det_xi) - tr_x2 * tr_x2;
    return (t1 + t2 + num / den) / (two * (det_xi - one));
}

template Complex<double> h1_closed<double>(const MatC<double>&, const MatC<double>&);
template Complex<quad> h1_closed<quad>(const MatC<quad>&, const MatC<quad>&);
template Complex<double> h2_closed<double>(const MatC<double>&, const MatC<double>&);
template Complex<quad> h2_closed<quad>(const MatC<quad>&, const MatC<quad>&);

QfiResult qfi_one_mode_exact(const CMat& sigma, const CMat& sigma_dot, const QfiOptions& opt) {
    check_square(sigma, sigma_dot, 2);
    const cplx d = sigma.determinant();
    if (std::abs(d) < 1e-300) throw Error(ErrorKind::SingularState, "qfi: singular sigma");
    QfiResult res;
    if (std::abs(std::abs(d) - 1.0) < opt.purity_tol) {
        // pure branch: 1 + 1/det -> 2 in the first term; the second term is
        // tr(A)^2 / (det - 1/det) and tr(A) = d/d eps log det must vanish here
        CMat k = make_k(1);
        CMat a = Eigen::PartialPivLU<CMat>(k * sigma).solve(k * sigma_dot);
        const cplx tr_a = a.trace();
        if (std::abs(tr_a) > 1e-7 * std::max(1.0, max_abs(a)))
            throw Error(ErrorKind::LimitUndefined,
                        "qfi: pure state with non-stationary determinant, the curve leaves the physical set");
        res.value = checked_real(0.25 * (a * a).trace(), opt.imag_tol, "qfi one-mode (pure)");
        res.pure_branch = true;
        res.notes = "pure-state branch";
        return res;
    }
    const cquad h = h1_closed<quad>(cast_matrix<quad>(sigma), cast_matrix<quad>(sigma_dot));
    res.value = checked_real(to_double(h), opt.imag_tol, "qfi one-mode");
    return res;
}

QfiResult qfi_two_mode_exact(const CMat& sigma, const CMat& sigma_dot, const QfiOptions& opt) {
    check_square(sigma, sigma_dot, 4);
    QMat s = cast_matrix<quad>(sigma), sd = cast_matrix<quad>(sigma_dot);
    QMat k = QMat::Identity(4, 4);
    k(2, 2) = k(3, 3) = cquad(quad(-1));
    QMat xi = k * s;
    // nu1^2 nu2^2 = det Xi and nu1^2 + nu2^2 = tr Xi^2 / 2
    const quad det_xi = xi.determinant().real();
    const quad half_tr = (xi * xi).trace().real() / 2;
    using std::sqrt;
    const quad disc = half_tr * half_tr / 4 - det_xi;
    const quad nu_min_sq = half_tr / 2 - sqrt(disc > 0 ? disc : quad(0));
    if (!(abs(det_xi) > quad(1e-300))) throw Error(ErrorKind::SingularState, "qfi: singular sigma");

    QfiResult res;
    if (to_double(nu_min_sq) - 1.0 < 2 * opt.purity_tol || std::abs(to_double(det_xi) - 1.0) < opt.purity_tol) {
        // nu-regularisation: scale sigma (and its derivative) by 1 + delta so
        // every symplectic eigenvalue moves off 1, then check the limit
        auto at = [&](double delta) {
            const cquad f(quad(1) + quad(delta));
            cquad h = h2_closed<quad>(QMat(s * f), QMat(sd * f));
            return checked_real(to_double(h), opt.imag_tol, "qfi two-mode (regularised)");
        };
        const double h_coarse = at(opt.reg_delta);
        const double h_fine = at(opt.reg_delta / 10);
        const double scale = std::max(std::abs(h_fine), 1e-300);
        res.regularisation_drift = std::abs(h_coarse - h_fine) / scale;
        if (res.regularisation_drift > opt.reg_drift && std::abs(h_coarse - h_fine) > 1e-12) {
            std::ostringstream os;
            os << "qfi: regularised pure-state value not stable (" << h_coarse << " vs " << h_fine << ")";
            throw Error(ErrorKind::LimitUndefined, os.str());
        }
        // H(delta) is linear in delta near zero
        res.value = h_fine + (h_fine - h_coarse) / 9.0;
        res.pure_branch = true;
        res.notes = "nu-regularised pure-state branch";
        return res;
    }
    const quad den = 4 * (1 + det_xi) * (1 + det_xi) - 4 * half_tr * half_tr;
    if (abs(den) < quad(1e-24) * (1 + det_xi) * (1 + det_xi))
        throw Error(ErrorKind::DegenerateSpectrum, "qfi: vanishing denominator 4(1+det Xi)^2 - tr(Xi^2)^2");
    res.value = checked_real(to_double(h2_closed<quad>(s, sd)), opt.imag_tol, "qfi two-mode");
    return res;
}

double qfi_displacement_term(const CVec& d_dot, const CMat& sigma) {
    if (d_dot.size() != sigma.rows()) throw Error(ErrorKind::DimensionMismatch, "displacement term: size");
    if (max_abs(d_dot) == 0.0) return 0.0;
    Eigen::FullPivLU<CMat> lu(sigma);
    if (!lu.isInvertible()) throw Error(ErrorKind::SingularState, "displacement term: singular sigma");
    const cplx v = 2.0 * d_dot.dot(lu.solve(d_dot));
    return checked_real(v, 1e-9, "displacement term");
}

QfiResult qfi_exact(const CMat& sigma, const CMat& sigma_dot, const CVec& d_dot, const QfiOptions& opt) {
    QfiResult res;
    if (sigma.rows() == 2)
        res = qfi_one_mode_exact(sigma, sigma_dot, opt);
    else if (sigma.rows() == 4)
        res = qfi_two_mode_exact(sigma, sigma_dot, opt);
    else
        throw Error(ErrorKind::InvalidArgument, "qfi: only one- and two-mode states are supported");
    if (d_dot.size() != 0) {
        res.value += qfi_displacement_term(d_dot, sigma);
        res.displacement_included = true;
    }
    return res;
}

template <class M>
static M richardson_difference(const std::function<M(double)>& f, double x, double h) {
    M coarse = (f(x + h) - f(x - h)) / (2 * h);
    M fine = (f(x + h / 2) - f(x - h / 2)) / h;
    return (4.0 * fine - coarse) / 3.0;
}

CMat central_difference(const std::function<CMat(double)>& f, double x, double h) {
    return richardson_difference<CMat>(f, x, h);
}

CVec central_difference(const std::function<CVec(double)>& f, double x, double h) {
    return richardson_difference<CVec>(f, x, h);
}

CMat StateCurve::derivative(double eps) const {
    if (sigma_dot) return sigma_dot(eps);
    return central_difference(std::function<CMat(double)>([this](double e) { return state(e).sigma; }), eps, h);
}

CVec StateCurve::displacement_derivative(double eps) const {
    return central_difference(std::function<CVec(double)>([this](double e) { return state(e).d; }), eps, h);
}

QfiResult qfi_exact(const StateCurve& curve, double eps, const QfiOptions& opt) {
    GaussianState s = curve.state(eps);
    CVec d_dot = curve.displacement_derivative(eps);
    if (max_abs(d_dot) < 1e-14) d_dot = CVec();
    return qfi_exact(s.sigma, curve.derivative(eps), d_dot, opt);
}

NumericQfi qfi_numeric(const StateCurve& curve, double eps0, double d_eps) {
    if (!(d_eps >= 1e-5 && d_eps <= 1e-2))
        throw Error(ErrorKind::InvalidArgument, "qfi_numeric: d_eps must lie in [1e-5, 1e-2]");
    auto gap = [&](double h) {
        const double F = fidelity(curve.state(eps0 - h / 2), curve.state(eps0 + h / 2));
        return 1.0 - std::sqrt(F);
    };
    const double g1 = gap(d_eps), g2 = gap(d_eps / 2);
    // a fidelity whose first derivative does not vanish makes 1 - sqrt F
    // linear in the step, so halving the step only halves the gap
    if (g1 > 1e-11 && g2 > 0 && g1 / g2 < 3.0) {
        std::ostringstream os;
        os << "qfi_numeric: 1 - sqrt(F) scales like the step (ratio " << g1 / g2 << "), the limit does not exist";
        throw Error(ErrorKind::LimitUndefined, os.str());
    }
    NumericQfi out;
    out.coarse = 8 * g1 / (d_eps * d_eps);
    out.fine = 8 * g2 / (d_eps * d_eps / 4);
    out.value = (4 * out.fine - out.coarse) / 3;
    out.error_estimate = std::abs(out.fine - out.coarse) / 3;
    return out;
}

}  // namespace gqfi
