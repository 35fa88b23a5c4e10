#pragma once

#include <vector>

#include "gqfi/error.hpp"
#include "gqfi/scalar.hpp"

namespace gqfi {

constexpr double kDefaultTol = 1e-10;

// diag(I_n, -I_n)
CMat make_k(int n_modes);

// Complex-form moments: d = (d_a, conj(d_a)), sigma = [[X, Y], [conj(Y), conj(X)]].
// Vacuum is the identity.
struct GaussianState {
    int n_modes = 0;
    CVec d;
    CMat sigma;

    CMat X() const { return sigma.topLeftCorner(n_modes, n_modes); }
    CMat Y() const { return sigma.topRightCorner(n_modes, n_modes); }
};

CMat assemble_sigma(const CMat& X, const CMat& Y);

// Builds a state and checks the block structure (not physicality).
GaussianState make_state(const CMat& sigma, const CVec& d = CVec(), double tol = kDefaultTol);

struct StateReport {
    double hermiticity = 0;       // |X - X^dag|
    double symmetry = 0;          // |Y - Y^T|
    double block_structure = 0;   // lower blocks vs conjugates of upper blocks
    double displacement = 0;      // lower half of d vs conj(upper half)
    double min_eigenvalue = 0;    // of sigma + K
    bool ok(double tol = kDefaultTol) const;
};

StateReport inspect_state(const GaussianState& s);
bool is_physical(const GaussianState& s, double tol = kDefaultTol);
// throws UnphysicalState / InvalidArgument with the failing residual
void require_valid(const GaussianState& s, double tol = kDefaultTol);

// |eigenvalues of K sigma|, one per mode, ascending
RVec symplectic_eigenvalues(const CMat& sigma);

GaussianState vacuum_state(int n_modes);
GaussianState one_mode_squeezed_thermal(double nu, double r);
GaussianState two_mode_squeezed_thermal(double nu_m, double nu_n, double r);

// nu = coth(E / 2T); T = 0 gives 1
double thermal_nu(double energy, double temperature);

struct ThermalSqueezedSpec {
    std::vector<int> modes;    // one or two zero-based labels
    std::vector<double> nu;    // one per mode
    double r = 0;
};

GaussianState probe_state(const ThermalSqueezedSpec& spec);

double symplectic_residual(const CMat& S);
GaussianState apply_symplectic(const GaussianState& s, const CMat& S, const CVec& b = CVec(),
                               double tol = kDefaultTol);

struct RealFormState {
    RVec d;      // (x, p)
    RMat sigma;  // [[A, B], [B^T, C]]
    int n_modes() const { return static_cast<int>(d.size() / 2); }
};

// (1/sqrt 2) [[I, iI], [I, -iI]]
CMat l_matrix(int n_modes);
GaussianState real_to_complex(const RealFormState& rf);
RealFormState complex_to_real(const GaussianState& s);

}  // namespace gqfi
