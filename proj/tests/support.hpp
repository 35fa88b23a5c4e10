#pragma once

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "gqfi/gaussian.hpp"
#include "gqfi/qfi.hpp"

namespace testsupport {

using namespace gqfi;

// exp of G = [[P, Q], [conj Q, conj P]] with P anti-Hermitian and Q symmetric,
// which is the general generator of S K S^dag = K
inline CMat random_generator(int n, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    CMat p(n, n), q(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            p(i, j) = cplx(g(rng), g(rng));
            q(i, j) = cplx(g(rng), g(rng));
        }
    p = (0.5 * (p - p.adjoint())).eval();
    q = (0.5 * (q + q.transpose())).eval();
    CMat gen(2 * n, 2 * n);
    gen << p, q, q.conjugate(), p.conjugate();
    return gen;
}

inline CMat random_symplectic(int n, std::mt19937_64& rng, double scale = 0.4) {
    return random_generator(n, rng, scale).exp();
}

inline CMat thermal_sigma(const std::vector<double>& nu) {
    const int n = static_cast<int>(nu.size());
    CMat s = CMat::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) s(i, i) = s(i + n, i + n) = nu[i];
    return s;
}

// sigma(eps) = S0 exp(eps G) D(eps) exp(eps G)^dag S0^dag with D = diag(nu + c eps)
struct RandomCurve {
    int n = 1;
    CMat s0, gen;
    std::vector<double> nu, c;

    CMat sigma(double eps) const {
        std::vector<double> v(nu.size());
        for (std::size_t i = 0; i < nu.size(); ++i) v[i] = nu[i] + c[i] * eps;
        CMat s = s0 * CMat(eps * gen).exp();
        return s * thermal_sigma(v) * s.adjoint();
    }
    StateCurve curve() const {
        StateCurve sc;
        RandomCurve self = *this;
        sc.state = [self](double e) { return make_state(self.sigma(e), CVec(), 1e-9); };
        return sc;
    }
};

inline RandomCurve random_curve(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RandomCurve rc;
    rc.n = n;
    rc.s0 = random_symplectic(n, rng, 0.4);
    rc.gen = random_generator(n, rng, 0.5);
    for (int i = 0; i < n; ++i) {
        rc.nu.push_back(1.3 + 2.0 * u(rng));
        rc.c.push_back(u(rng) - 0.5);
    }
    return rc;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testsupport
