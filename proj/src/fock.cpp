#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "gqfi/fidelity.hpp"

namespace gqfi {
namespace {

struct OneModeParams {
    double nu;
    double r;
    double phi;
};

// sigma = nu [[cosh 2r, e^{i phi} sinh 2r], [c.c., cosh 2r]]
OneModeParams decompose(const GaussianState& s) {
    if (s.n_modes != 1) throw Error(ErrorKind::InvalidArgument, "fock oracle: one-mode states only");
    if (max_abs(s.d) > 1e-12) throw Error(ErrorKind::InvalidArgument, "fock oracle: centred states only");
    const double x = s.sigma(0, 0).real();
    const cplx y = s.sigma(0, 1);
    const double det = x * x - std::norm(y);
    if (det < 1.0 - 1e-10) throw Error(ErrorKind::UnphysicalState, "fock oracle: det sigma < 1");
    OneModeParams p;
    p.nu = std::sqrt(std::max(det, 1.0));
    p.r = 0.5 * std::asinh(std::abs(y) / p.nu);
    p.phi = std::abs(y) > 0 ? std::arg(y) : 0.0;
    return p;
}

}  // namespace

CMat fock_density_matrix(const GaussianState& s, int cutoff, double* tail_mass) {
    if (cutoff < 2) throw Error(ErrorKind::InvalidArgument, "fock oracle: cutoff too small");
    OneModeParams p = decompose(s);
    // work in a larger space so that truncating the generator does not touch the kept block
    const int big = 3 * cutoff + 40;
    CMat rho = CMat::Zero(big, big);
    const double nbar = 0.5 * (p.nu - 1.0);
    for (int n = 0; n < big; ++n) rho(n, n) = std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1);

    if (p.r != 0.0) {
        // G = (r/2)(e^{i phi} a^dag^2 - e^{-i phi} a^2), <a a> = (nu/2) e^{i phi} sinh 2r
        CMat adag2 = CMat::Zero(big, big);
        for (int n = 0; n + 2 < big; ++n) adag2(n + 2, n) = std::sqrt(double(n + 1) * double(n + 2));
        const cplx ph = std::polar(1.0, p.phi);
        CMat g = 0.5 * p.r * (ph * adag2 - std::conj(ph) * adag2.adjoint());
        CMat u = g.exp();
        rho = u * rho * u.adjoint();
    }
    CMat kept = rho.topLeftCorner(cutoff, cutoff);
    const double tail = 1.0 - kept.trace().real();
    if (tail_mass) *tail_mass = tail;
    return 0.5 * (kept + kept.adjoint());
}

double uhlmann_fidelity(const CMat& rho1, const CMat& rho2) {
    if (rho1.rows() != rho2.rows()) throw Error(ErrorKind::DimensionMismatch, "uhlmann_fidelity: sizes differ");
    auto sqrtm = [](const CMat& m) {
        Eigen::SelfAdjointEigenSolver<CMat> es(m);
        RVec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return CMat(es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint());
    };
    // tr sqrt(sqrt(r1) r2 sqrt(r1)) is the trace norm of sqrt(r1) sqrt(r2)
    Eigen::JacobiSVD<CMat> svd(sqrtm(rho1) * sqrtm(rho2));
    const double tn = svd.singularValues().sum();
    return tn * tn;
}

double fock_fidelity_oracle(const GaussianState& s1, const GaussianState& s2, int cutoff) {
    double t1 = 0, t2 = 0;
    CMat r1 = fock_density_matrix(s1, cutoff, &t1);
    CMat r2 = fock_density_matrix(s2, cutoff, &t2);
    if (t1 > 1e-8 || t2 > 1e-8) {
        std::ostringstream os;
        os << "fock oracle: truncation tail mass " << std::max(t1, t2) << " exceeds 1e-8 at cutoff " << cutoff;
        throw Error(ErrorKind::CutoffTooSmall, os.str());
    }
    return uhlmann_fidelity(r1, r2);
}

}  // namespace gqfi
