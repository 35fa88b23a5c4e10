#pragma once

#include "gqfi/gaussian.hpp"

namespace gqfi {

struct FidelityInvariants {
    double delta = 0;    // det(s1 + s2)
    double gamma = 0;    // det(K s1 K s2 + I)
    double lambda_ = 0;  // det(s1 + K) det(s2 + K)
};

struct FidelityOptions {
    double imag_tol = 1e-10;       // relative imaginary residue allowed on the determinants
    double lambda_clamp = 1e-12;   // |Lambda| below this is treated as a pure-state zero
    double radicand_clamp = 1e-10; // negative radicands down to -this are set to zero
};

FidelityInvariants invariants(const GaussianState& s1, const GaussianState& s2,
                              const FidelityOptions& opt = {});

double fidelity_one_mode(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt = {});
double fidelity_two_mode(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt = {});
// dispatches on mode count
double fidelity(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt = {});

double bures_from_fidelity(double F);
double bures_distance(const GaussianState& s1, const GaussianState& s2, const FidelityOptions& opt = {});

// Uhlmann fidelity of two centred one-mode states computed from truncated
// Fock-space density matrices.
double fock_fidelity_oracle(const GaussianState& s1, const GaussianState& s2, int cutoff = 60);

// Truncated Fock density matrix of a centred one-mode Gaussian state.
// tail_mass receives 1 - trace of the kept block.
CMat fock_density_matrix(const GaussianState& s, int cutoff, double* tail_mass = nullptr);

// (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 for density matrices
double uhlmann_fidelity(const CMat& rho1, const CMat& rho2);

}  // namespace gqfi
