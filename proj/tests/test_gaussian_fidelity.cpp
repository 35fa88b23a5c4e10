#include <doctest.h>

#include "gqfi/fidelity.hpp"
#include "oracles/frozen_values.hpp"
#include "support.hpp"

using namespace gqfi;
using namespace testsupport;

namespace {

GaussianState phased(double nu, double r, double phi) {
    CMat s(2, 2);
    s << nu * std::cosh(2 * r), nu * std::sinh(2 * r) * std::polar(1.0, phi), nu * std::sinh(2 * r) * std::polar(1.0, -phi),
        nu * std::cosh(2 * r);
    return make_state(s);
}

CMat beamsplitter(double theta, double phase) {
    CMat u(2, 2);
    u << std::cos(theta), -std::polar(1.0, -phase) * std::sin(theta), std::polar(1.0, phase) * std::sin(theta),
        std::cos(theta);
    CMat S = CMat::Zero(4, 4);
    S.topLeftCorner(2, 2) = u;
    S.bottomRightCorner(2, 2) = u.conjugate();
    return S;
}

}  // namespace

TEST_CASE("make_state rejects broken block structure") {
    CMat s = CMat::Identity(2, 2);
    s(0, 1) = 0.3;  // lower block must be its conjugate
    CHECK_THROWS_AS(make_state(s), Error);
    CHECK_THROWS_AS(make_state(CMat::Identity(3, 3)), Error);
}

TEST_CASE("vacuum and thermal states are physical, sub-vacuum is not") {
    CHECK(is_physical(vacuum_state(2)));
    CHECK(is_physical(one_mode_squeezed_thermal(2.0, 0.7)));
    GaussianState bad = make_state(0.5 * CMat::Identity(2, 2));
    CHECK_FALSE(is_physical(bad));
    CHECK_THROWS_AS(require_valid(bad), Error);
    CHECK_THROWS_AS(one_mode_squeezed_thermal(0.9, 0.0), Error);
}

TEST_CASE("symplectic eigenvalues of the two-mode squeezed thermal state") {
    RVec nu = symplectic_eigenvalues(two_mode_squeezed_thermal(2.0, 6.0, 0.8).sigma);
    REQUIRE(nu.size() == 2);
    CHECK(nu(0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(nu(1) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("real and complex forms round-trip") {
    GaussianState s = apply_symplectic(two_mode_squeezed_thermal(1.5, 3.0, 0.4), beamsplitter(0.3, 0.9));
    s.d = CVec(4);
    s.d << cplx(0.2, -0.1), cplx(-0.4, 0.3), cplx(0.2, 0.1), cplx(-0.4, -0.3);
    GaussianState back = real_to_complex(complex_to_real(s));
    CHECK(max_abs(CMat(back.sigma - s.sigma)) < 1e-13);
    CHECK(max_abs(CVec(back.d - s.d)) < 1e-13);
    RealFormState rf = complex_to_real(vacuum_state(1));
    CHECK(max_abs(CMat(rf.sigma.cast<cplx>() - CMat::Identity(2, 2))) < 1e-15);
}

TEST_CASE("apply_symplectic rejects non-symplectic matrices") {
    CMat S = 1.1 * CMat::Identity(2, 2);
    CHECK_THROWS_AS(apply_symplectic(vacuum_state(1), S), Error);
}

TEST_CASE("self-fidelity is one") {
    CHECK(fidelity(vacuum_state(1), vacuum_state(1)) == doctest::Approx(1.0).epsilon(1e-14));
    GaussianState t = one_mode_squeezed_thermal(3.0, 0.0);
    CHECK(fidelity(t, t) == doctest::Approx(1.0).epsilon(1e-12));
    GaussianState p = two_mode_squeezed_thermal(2, 6, 0.3);
    CHECK(fidelity(p, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(vacuum_state(2), vacuum_state(2)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("one-mode fidelity against frozen values") {
    CHECK(fidelity_one_mode(vacuum_state(1), one_mode_squeezed_thermal(2, 0)) ==
          doctest::Approx(frozen::kFidVacuumThermal2).epsilon(1e-13));
    CHECK(fidelity_one_mode(one_mode_squeezed_thermal(1.5, 0), one_mode_squeezed_thermal(2.5, 0)) ==
          doctest::Approx(frozen::kFidThermal15Thermal25).epsilon(1e-13));
    CHECK(fidelity_one_mode(phased(1.2, 0.3, 0.4), phased(2, 0.5, -1.1)) ==
          doctest::Approx(frozen::kFidSqueezedPair).epsilon(1e-12));
}

TEST_CASE("two-mode fidelity against a frozen value") {
    GaussianState a = two_mode_squeezed_thermal(2, 6, 0.3);
    GaussianState b = apply_symplectic(two_mode_squeezed_thermal(1.5, 3, 0.5), beamsplitter(0.4, 0.7));
    CHECK(fidelity_two_mode(a, b) == doctest::Approx(frozen::kFidTwoModePair).epsilon(1e-11));
}

TEST_CASE("fidelity symmetry, bounds and unitary invariance") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 2;
        RandomCurve c1 = random_curve(n, rng), c2 = random_curve(n, rng);
        GaussianState a = make_state(c1.sigma(0.0)), b = make_state(c2.sigma(0.0));
        const double f = fidelity(a, b);
        CHECK(std::abs(f - fidelity(b, a)) < 1e-10);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0 + 1e-10);
        CMat S = random_symplectic(n, rng, 0.4);
        CHECK(std::abs(fidelity(apply_symplectic(a, S), apply_symplectic(b, S)) - f) < 1e-9);
    }
}

TEST_CASE("two-mode fidelity of products factorizes") {
    auto product = [](double n1, double n2) {
        CMat s = CMat::Zero(4, 4);
        s(0, 0) = s(2, 2) = n1;
        s(1, 1) = s(3, 3) = n2;
        return make_state(s);
    };
    const double f2 = fidelity_two_mode(product(2, 2), product(2.1, 2));
    const double f1 = fidelity_one_mode(one_mode_squeezed_thermal(2, 0), one_mode_squeezed_thermal(2.1, 0));
    CHECK(std::abs(f2 - f1) < 1e-9);
    const double g2 = fidelity_two_mode(product(1.3, 4), product(2.2, 1.7));
    const double g1 = fidelity_one_mode(one_mode_squeezed_thermal(1.3, 0), one_mode_squeezed_thermal(2.2, 0)) *
                      fidelity_one_mode(one_mode_squeezed_thermal(4, 0), one_mode_squeezed_thermal(1.7, 0));
    CHECK(std::abs(g2 - g1) < 1e-9);
}

TEST_CASE("displacement lowers the fidelity by the Gaussian overlap factor") {
    GaussianState a = vacuum_state(1), b = vacuum_state(1);
    b.d = CVec(2);
    b.d << cplx(0.5, 0), cplx(0.5, 0);
    // coherent states: F = exp(-|delta alpha|^2) with d = (alpha, conj alpha)
    CHECK(fidelity(a, b) == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
}

TEST_CASE("Bures distance") {
    CHECK(bures_from_fidelity(0.25) == doctest::Approx(1.0));
    CHECK(bures_distance(vacuum_state(1), vacuum_state(1)) == doctest::Approx(0.0));
    const double f = fidelity(vacuum_state(1), one_mode_squeezed_thermal(2, 0));
    CHECK(bures_distance(vacuum_state(1), one_mode_squeezed_thermal(2, 0)) ==
          doctest::Approx(std::sqrt(2 * (1 - std::sqrt(f)))));
}

TEST_CASE("Fock oracle agrees with the closed form") {
    CHECK(fock_fidelity_oracle(one_mode_squeezed_thermal(2, 0), one_mode_squeezed_thermal(2, 0), 60) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(fock_fidelity_oracle(vacuum_state(1), one_mode_squeezed_thermal(2, 0), 60) -
                   frozen::kFidVacuumThermal2) < 1e-6);
    CHECK(std::abs(fock_fidelity_oracle(one_mode_squeezed_thermal(1.5, 0), one_mode_squeezed_thermal(2.5, 0), 80) -
                   frozen::kFidThermal15Thermal25) < 1e-6);
    CHECK(std::abs(fock_fidelity_oracle(phased(1.2, 0.3, 0.4), phased(2, 0.5, -1.1), 80) -
                   frozen::kFidSqueezedPair) < 1e-6);
}

TEST_CASE("Fock oracle refuses a cutoff that loses probability") {
    CHECK_THROWS_AS(fock_fidelity_oracle(one_mode_squeezed_thermal(3, 0), one_mode_squeezed_thermal(3, 0), 10),
                    Error);
}
