#include "gqfi/fidelity.hpp"

#include <cmath>
#include <sstream>

namespace gqfi {
namespace {

double realified(cplx z, double tol, const char* what) {
    if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real()))) {
        std::ostringstream os;
        os << what << " has imaginary residue " << z.imag();
        throw Error(ErrorKind::NumericInstability, os.str());
    }
    return z.real();
}

void check_pair(const GaussianState& s1, const GaussianState& s2, int n) {
    if (s1.n_modes != s2.n_modes) throw Error(ErrorKind::DimensionMismatch, "fidelity: mode counts differ");
    if (n != 0 && s1.n_modes != n) {
        std::ostringstream os;
        os << "fidelity: expected " << n << "-mode states, got " << s1.n_modes;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    if (s1.n_modes < 1 || s1.n_modes > 2)
        throw Error(ErrorKind::InvalidArgument, "fidelity: only one- and two-mode states are supported");
}

// exp(-dd^dag (s1 + s2)^-1 dd)
double displacement_factor(const GaussianState& s1, const GaussianState& s2, double tol) {
    CVec dd = s1.d - s2.d;
    if (max_abs(dd) == 0.0) return 1.0;
    Eigen::PartialPivLU<CMat> lu(s1.sigma + s2.sigma);
    cplx q = dd.dot(lu.solve(dd));
    return std::exp(-realified(q, tol, "displacement exponent"));
}

double clamp_lambda(double lambda, const FidelityOptions& opt) {
    if (std::abs(lambda) < opt.lambda_clamp) return 0.0;
    if (lambda < 0) {
        std::ostringstream os;
        os << "fidelity: Lambda = " << lambda << " is negative";
        throw Error(ErrorKind::NumericInstability, os.str());
    }
    return lambda;
}

}  // namespace

FidelityInvariants invariants(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt) {
    check_pair(s1, s2, 0);
    const int n = s1.n_modes;
    CMat k = make_k(n);
    CMat I = CMat::Identity(2 * n, 2 * n);
    FidelityInvariants inv;
    inv.delta = realified((s1.sigma + s2.sigma).determinant(), opt.imag_tol, "Delta");
    inv.gamma = realified((k * s1.sigma * k * s2.sigma + I).determinant(), opt.imag_tol, "Gamma");
    inv.lambda_ = realified((s1.sigma + k).determinant() * (s2.sigma + k).determinant(), opt.imag_tol, "Lambda");
    return inv;
}

double fidelity_one_mode(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt) {
    check_pair(s1, s2, 1);
    FidelityInvariants inv = invariants(s1, s2, opt);
    if (!(inv.delta > 0)) throw Error(ErrorKind::DegeneratePair, "fidelity: sigma1 + sigma2 is singular");
    const double lambda = clamp_lambda(inv.lambda_, opt);
    // 2 / (sqrt(D + L) - sqrt(L)) rewritten without the cancellation
    const double denom_inv = (std::sqrt(inv.delta + lambda) + std::sqrt(lambda)) / inv.delta;
    return 2.0 * displacement_factor(s1, s2, opt.imag_tol) * denom_inv;
}

double fidelity_two_mode(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt) {
    check_pair(s1, s2, 2);
    FidelityInvariants inv = invariants(s1, s2, opt);
    if (!(inv.delta > 0)) throw Error(ErrorKind::DegeneratePair, "fidelity: sigma1 + sigma2 is singular");
    const double lambda = clamp_lambda(inv.lambda_, opt);
    if (inv.gamma < 0) {
        std::ostringstream os;
        os << "fidelity: Gamma = " << inv.gamma << " is negative";
        throw Error(ErrorKind::NumericInstability, os.str());
    }
    const double a = std::sqrt(inv.gamma) + std::sqrt(lambda);
    double rad = a * a - inv.delta;
    if (rad < 0) {
        if (rad < -opt.radicand_clamp * std::max(1.0, inv.delta)) {
            std::ostringstream os;
            os << "fidelity: radicand " << rad << " below clamp";
            throw Error(ErrorKind::NumericInstability, os.str());
        }
        rad = 0;
    }
    // 4 / (a - sqrt(a^2 - D)) == 4 (a + sqrt(a^2 - D)) / D
    return 4.0 * displacement_factor(s1, s2, opt.imag_tol) * (a + std::sqrt(rad)) / inv.delta;
}

double fidelity(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt) {
    check_pair(s1, s2, 0);
    return s1.n_modes == 1 ? fidelity_one_mode(s1, s2, opt) : fidelity_two_mode(s1, s2, opt);
}

double bures_from_fidelity(double F) {
    if (!(F >= 0)) throw Error(ErrorKind::InvalidArgument, "bures: fidelity must be non-negative");
    const double v = 2.0 * (1.0 - std::sqrt(F));
    return v > 0 ? std::sqrt(v) : 0.0;
}

double bures_distance(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt) {
    return bures_from_fidelity(fidelity(s1, s2, opt));
}

}  // namespace gqfi
