#include <doctest.h>

#include "gqfi/bogoliubov.hpp"
#include "gqfi/cavity.hpp"
#include "support.hpp"

using namespace gqfi;
using namespace testsupport;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

BogoliubovTransform from_symplectic(const CMat& S) {
    const int n = static_cast<int>(S.rows() / 2);
    return BogoliubovTransform(S.topLeftCorner(n, n), S.topRightCorner(n, n));
}

}  // namespace

TEST_CASE("identity transform") {
    BogoliubovTransform id = BogoliubovTransform::identity(4);
    CHECK(id.N() == 4);
    CHECK(id.residuals().max() == 0.0);
    CHECK(max_abs(CMat(operator_form(id) - CMat::Identity(8, 8))) == 0.0);
}

TEST_CASE("random symplectic matrices satisfy the Bogoliubov identities") {
    std::mt19937_64 rng(21);
    for (int n : {1, 2, 4}) {
        BogoliubovTransform t = from_symplectic(random_symplectic(n, rng, 0.5));
        CHECK(check_identities(t).max() < 1e-12);
        CMat K = CMat::Identity(2 * n, 2 * n);
        K.bottomRightCorner(n, n) *= -1.0;
        CMat St = operator_form(t);
        CHECK(max_abs(CMat(St * K * St.adjoint() - K)) < 1e-12);
    }
    // a non-unitary alpha breaks the first identity
    BogoliubovTransform bad(1.1 * CMat::Identity(2, 2), CMat::Zero(2, 2));
    CHECK(check_identities(bad).unitarity == doctest::Approx(0.21));
}

TEST_CASE("coefficient and operator forms") {
    CMat a(1, 1), b(1, 1);
    a << cplx(std::cosh(0.4), 0.0);
    b << std::polar(std::sinh(0.4), 0.7);
    BogoliubovTransform t(a, b);
    CMat S = coefficient_form(t);
    CHECK(S(0, 1) == b(0, 0));
    CHECK(S(1, 0) == std::conj(b(0, 0)));
    CMat K = CMat::Identity(2, 2);
    K(1, 1) = -1;
    CHECK(max_abs(CMat(operator_form(t) - K * S.conjugate() * K)) < 1e-15);
    BogoliubovTransform op = operator_coefficients(t);
    CHECK(op.alpha(0, 0) == std::conj(a(0, 0)));
    CHECK(op.beta(0, 0) == -std::conj(b(0, 0)));
}

TEST_CASE("real form round-trip") {
    std::mt19937_64 rng(8);
    BogoliubovTransform t = from_symplectic(random_symplectic(3, rng, 0.4));
    RMat sr = real_form(t);
    CHECK(sr.rows() == 6);
    BogoliubovTransform back = from_real_form(sr);
    CHECK(max_abs(CMat(back.alpha - t.alpha)) < 1e-13);
    CHECK(max_abs(CMat(back.beta - t.beta)) < 1e-13);
    RMat id = real_form(BogoliubovTransform::identity(2));
    CHECK(max_abs(CMat((id - RMat::Identity(4, 4)).cast<cplx>())) < 1e-15);
    CHECK(kind_of([] { from_real_form(RMat::Identity(3, 3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("apply_channel input checks") {
    BogoliubovTransform t = BogoliubovTransform::identity(3);
    GaussianState g = global_state(global_one_mode<double>(3, 0, 2.0, 0.3, {1.5}));
    CHECK(kind_of([&] { apply_channel(g, BogoliubovTransform::identity(4), {0}); }) ==
          ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { apply_channel(g, t, {5}); }) == ErrorKind::TruncationError);
    CHECK(kind_of([&] { apply_channel(g, t, {}); }) == ErrorKind::InvalidArgument);
    // squeezing between system and environment is not a product state
    GaussianState entangled = global_state(global_two_mode<double>(3, 0, 1, 1.0, 1.0, 0.5, {1.0}));
    CHECK(kind_of([&] { apply_channel(entangled, t, {0}); }) == ErrorKind::UnsupportedInitialState);
    CHECK(kind_of([] { global_one_mode<double>(3, 3, 1.0, 0.0, {1.0}); }) == ErrorKind::TruncationError);
    CHECK(kind_of([] { global_one_mode<double>(3, 0, 1.0, 0.0, {1.0, 1.0}); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("identity channel returns the probe and reports the environment") {
    GaussianState probe = two_mode_squeezed_thermal(2.0, 3.0, 0.4);
    GlobalMoments<double> g = embed_state(probe, {1, 3}, 5, {1.0, 1.5, 2.0, 2.5, 3.0});
    ChannelResult res = apply_channel(global_state(g), BogoliubovTransform::identity(5), {1, 3});
    CHECK(max_abs(CMat(res.reduced.sigma - probe.sigma)) < 1e-14);
    REQUIRE(res.env_nu.size() == 3);
    CHECK(res.env_nu[0] == 1.0);
    CHECK(res.env_nu[1] == 2.0);
    CHECK(res.env_nu[2] == 3.0);
}

TEST_CASE("matrix, element-sum and closed-sum paths agree") {
    BogoliubovTransform t = cavity_transform(1.3, 0.02, 8);
    BogoliubovTransform op = operator_coefficients(t);
    std::vector<double> env{1.0, 1.2, 1.4, 1.6, 1.8, 2.0, 2.2, 2.4};

    GaussianState g1 = global_state(global_one_mode<double>(8, 2, 1.7, 0.4, env));
    CMat X, Y;
    covariance_elements_general(g1.X(), g1.Y(), op.alpha, op.beta, {2}, X, Y);
    ElementsResult e1 = covariance_elements_one_mode(1.7, 0.4, env, t, 2);
    CMat red1 = apply_channel(g1, t, {2}).reduced.sigma;
    CHECK(max_abs(CMat(red1 - assemble_sigma(X, Y))) < 1e-12);
    CHECK(max_abs(CMat(red1 - assemble_sigma(e1.X, e1.Y))) < 1e-12);

    GaussianState g2 = global_state(global_two_mode<double>(8, 0, 3, 2.0, 1.5, 0.6, env));
    covariance_elements_general(g2.X(), g2.Y(), op.alpha, op.beta, {0, 3}, X, Y);
    ElementsResult e2 = covariance_elements_two_mode(2.0, 1.5, 0.6, env, t, 0, 3);
    CMat red2 = apply_channel(g2, t, {0, 3}).reduced.sigma;
    CHECK(max_abs(CMat(red2 - assemble_sigma(X, Y))) < 1e-12);
    CHECK(max_abs(CMat(red2 - assemble_sigma(e2.X, e2.Y))) < 1e-12);
}

TEST_CASE("the reduced state of an exact Bogoliubov channel is physical") {
    std::mt19937_64 rng(4);
    BogoliubovTransform t = from_symplectic(random_symplectic(6, rng, 0.4));
    GaussianState g = global_state(global_two_mode<double>(6, 0, 1, 1.0, 1.0, 0.8, {1.0}));
    ChannelResult res = apply_channel(g, t, {0, 1});
    CHECK(is_physical(res.reduced, 1e-9));
    RVec nu = symplectic_eigenvalues(res.reduced.sigma);
    CHECK(nu.minCoeff() >= 1.0 - 1e-9);
    CHECK(nu.maxCoeff() > 1.0);  // mixing with the environment
}
