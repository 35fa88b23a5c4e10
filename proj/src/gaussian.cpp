#include "gqfi/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gqfi {

CMat make_k(int n_modes) {
    if (n_modes < 1) throw Error(ErrorKind::InvalidArgument, "make_k: n_modes must be >= 1");
    CMat k = CMat::Identity(2 * n_modes, 2 * n_modes);
    k.bottomRightCorner(n_modes, n_modes) *= -1.0;
    return k;
}

CMat assemble_sigma(const CMat& X, const CMat& Y) {
    const Eigen::Index n = X.rows();
    if (X.cols() != n || Y.rows() != n || Y.cols() != n)
        throw Error(ErrorKind::DimensionMismatch, "assemble_sigma: X and Y must be square and equal size");
    CMat s(2 * n, 2 * n);
    s << X, Y, Y.conjugate(), X.conjugate();
    return s;
}

GaussianState make_state(const CMat& sigma, const CVec& d, double tol) {
    if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0 || sigma.rows() == 0)
        throw Error(ErrorKind::DimensionMismatch, "state: sigma must be 2n x 2n");
    GaussianState s;
    s.n_modes = static_cast<int>(sigma.rows() / 2);
    s.sigma = sigma;
    s.d = d.size() == 0 ? CVec::Zero(sigma.rows()) : d;
    if (s.d.size() != sigma.rows())
        throw Error(ErrorKind::DimensionMismatch, "state: d must have length 2n");
    StateReport rep = inspect_state(s);
    const double scale = std::max(1.0, max_abs(sigma));
    if (rep.hermiticity > tol * scale || rep.symmetry > tol * scale || rep.block_structure > tol * scale ||
        rep.displacement > tol * std::max(1.0, max_abs(s.d))) {
        std::ostringstream os;
        os << "state: block structure violated (hermiticity " << rep.hermiticity << ", symmetry "
           << rep.symmetry << ", blocks " << rep.block_structure << ", d " << rep.displacement << ")";
        throw Error(ErrorKind::InvalidArgument, os.str());
    }
    return s;
}

bool StateReport::ok(double tol) const {
    return hermiticity <= tol && symmetry <= tol && block_structure <= tol && displacement <= tol &&
           min_eigenvalue >= -tol;
}

StateReport inspect_state(const GaussianState& s) {
    const int n = s.n_modes;
    StateReport rep;
    CMat X = s.sigma.topLeftCorner(n, n), Y = s.sigma.topRightCorner(n, n);
    rep.hermiticity = max_abs(X - X.adjoint());
    rep.symmetry = max_abs(Y - Y.transpose());
    rep.block_structure = std::max(max_abs(s.sigma.bottomLeftCorner(n, n) - Y.conjugate()),
                                   max_abs(s.sigma.bottomRightCorner(n, n) - X.conjugate()));
    rep.displacement = max_abs(s.d.tail(n) - s.d.head(n).conjugate());
    CMat m = s.sigma + make_k(n);
    CMat h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMat> es(h, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues().minCoeff();
    return rep;
}

bool is_physical(const GaussianState& s, double tol) { return inspect_state(s).ok(tol); }

void require_valid(const GaussianState& s, double tol) {
    StateReport rep = inspect_state(s);
    const double scale = std::max(1.0, max_abs(s.sigma));
    if (rep.hermiticity > tol * scale || rep.symmetry > tol * scale || rep.block_structure > tol * scale)
        throw Error(ErrorKind::InvalidArgument, "state: X not Hermitian or Y not symmetric");
    if (rep.min_eigenvalue < -tol * scale) {
        std::ostringstream os;
        os << "state: sigma + K has eigenvalue " << rep.min_eigenvalue;
        throw Error(ErrorKind::UnphysicalState, os.str());
    }
}

RVec symplectic_eigenvalues(const CMat& sigma) {
    const int n = static_cast<int>(sigma.rows() / 2);
    Eigen::ComplexEigenSolver<CMat> es(make_k(n) * sigma, false);
    std::vector<double> v;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) v.push_back(std::abs(es.eigenvalues()(i)));
    std::sort(v.begin(), v.end());
    RVec out(n);
    for (int k = 0; k < n; ++k) out(k) = 0.5 * (v[2 * k] + v[2 * k + 1]);
    return out;
}

GaussianState vacuum_state(int n_modes) {
    if (n_modes < 1) throw Error(ErrorKind::InvalidArgument, "vacuum_state: n_modes must be >= 1");
    GaussianState s;
    s.n_modes = n_modes;
    s.d = CVec::Zero(2 * n_modes);
    s.sigma = CMat::Identity(2 * n_modes, 2 * n_modes);
    return s;
}

GaussianState one_mode_squeezed_thermal(double nu, double r) {
    if (!(nu >= 1.0)) throw Error(ErrorKind::UnphysicalState, "thermal parameter nu must be >= 1");
    CMat s(2, 2);
    s << std::cosh(2 * r), std::sinh(2 * r), std::sinh(2 * r), std::cosh(2 * r);
    return make_state(nu * s);
}

GaussianState two_mode_squeezed_thermal(double nu_m, double nu_n, double r) {
    if (!(nu_m >= 1.0) || !(nu_n >= 1.0))
        throw Error(ErrorKind::UnphysicalState, "thermal parameters must be >= 1");
    const double ch = std::cosh(r), sh = std::sinh(r);
    const double dmn = nu_m * ch * ch + nu_n * sh * sh;
    const double dnm = nu_n * ch * ch + nu_m * sh * sh;
    const double c = (nu_m + nu_n) * ch * sh;
    CMat X = CMat::Zero(2, 2), Y = CMat::Zero(2, 2);
    X(0, 0) = dmn;
    X(1, 1) = dnm;
    Y(0, 1) = Y(1, 0) = c;
    return make_state(assemble_sigma(X, Y));
}

double thermal_nu(double energy, double temperature) {
    if (temperature < 0 || energy <= 0) throw Error(ErrorKind::InvalidArgument, "thermal_nu: need E > 0, T >= 0");
    if (temperature == 0) return 1.0;
    return 1.0 / std::tanh(energy / (2 * temperature));
}

GaussianState probe_state(const ThermalSqueezedSpec& spec) {
    if (spec.modes.size() == 1 && spec.nu.size() == 1) return one_mode_squeezed_thermal(spec.nu[0], spec.r);
    if (spec.modes.size() == 2 && spec.nu.size() == 2) {
        if (spec.modes[0] == spec.modes[1])
            throw Error(ErrorKind::InvalidArgument, "probe_state: two-mode probe needs distinct modes");
        return two_mode_squeezed_thermal(spec.nu[0], spec.nu[1], spec.r);
    }
    throw Error(ErrorKind::InvalidArgument, "probe_state: need one or two modes with matching nu");
}

double symplectic_residual(const CMat& S) {
    if (S.rows() != S.cols() || S.rows() % 2 != 0)
        throw Error(ErrorKind::DimensionMismatch, "symplectic matrix must be 2n x 2n");
    CMat k = make_k(static_cast<int>(S.rows() / 2));
    return max_abs(S * k * S.adjoint() - k);
}

GaussianState apply_symplectic(const GaussianState& s, const CMat& S, const CVec& b, double tol) {
    if (S.rows() != s.sigma.rows())
        throw Error(ErrorKind::DimensionMismatch, "apply_symplectic: size mismatch");
    const double res = symplectic_residual(S);
    if (res > tol * std::max(1.0, max_abs(S) * max_abs(S))) {
        std::ostringstream os;
        os << "apply_symplectic: |S K S^dag - K| = " << res;
        throw Error(ErrorKind::SymplecticViolation, os.str());
    }
    GaussianState out;
    out.n_modes = s.n_modes;
    out.d = S * s.d;
    if (b.size() != 0) {
        if (b.size() != s.d.size()) throw Error(ErrorKind::DimensionMismatch, "apply_symplectic: b length");
        out.d += b;
    }
    out.sigma = S * s.sigma * S.adjoint();
    return out;
}

CMat l_matrix(int n_modes) {
    const double h = 1.0 / std::sqrt(2.0);
    const cplx i(0, 1);
    CMat I = CMat::Identity(n_modes, n_modes);
    CMat L(2 * n_modes, 2 * n_modes);
    L << h * I, i * h * I, h * I, -i * h * I;
    return L;
}

GaussianState real_to_complex(const RealFormState& rf) {
    if (rf.sigma.rows() != rf.sigma.cols() || rf.sigma.rows() != rf.d.size() || rf.d.size() % 2 != 0)
        throw Error(ErrorKind::DimensionMismatch, "real_to_complex: inconsistent dimensions");
    CMat L = l_matrix(rf.n_modes());
    CMat sigma = L * rf.sigma.cast<cplx>() * L.adjoint();
    CVec d = L * rf.d.cast<cplx>();
    return make_state(sigma, d, 1e-8);
}

RealFormState complex_to_real(const GaussianState& s) {
    CMat L = l_matrix(s.n_modes);
    CMat sr = L.adjoint() * s.sigma * L;
    CVec dr = L.adjoint() * s.d;
    const double scale = std::max(1.0, max_abs(s.sigma));
    if (sr.imag().cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw Error(ErrorKind::NumericInstability, "complex_to_real: real-form covariance is not real");
    RealFormState rf;
    rf.sigma = sr.real();
    rf.d = dr.real();
    return rf;
}

}  // namespace gqfi
