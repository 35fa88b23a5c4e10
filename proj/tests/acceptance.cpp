// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "gqfi/bogoliubov.hpp"
#include "gqfi/cavity.hpp"
#include "gqfi/fidelity.hpp"
#include "gqfi/perturbative.hpp"
#include "gqfi/qfi.hpp"
#include "support.hpp"

using namespace gqfi;
using namespace testsupport;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// exact closed-form H along the cavity curve, in quad precision
double exact_cavity_qfi(const std::vector<int>& modes, const std::vector<quad>& nu, double r, double tau, double eps,
                        int N = 10) {
    TaylorChannel ch = cavity_taylor_channel(tau, N);
    GlobalMoments<quad> g = modes.size() == 1
                                ? global_one_mode<quad>(N, modes[0], nu[0], quad(r), {quad(1)})
                                : global_two_mode<quad>(N, modes[0], modes[1], nu[0], nu[1], quad(r), {quad(1)});
    ChannelCurve<quad> c = make_channel_curve<quad>(g, ch, modes);
    return to_double(c.closed_form_qfi(quad(eps)).real());
}

CovarianceSeries cavity_series(const std::vector<int>& modes, const std::vector<double>& nu, double r,
                               const TaylorChannel& ch) {
    const int N = ch.N();
    if (modes.size() == 1) return expand_covariance(global_one_mode<double>(N, modes[0], nu[0], r, {1.0}), ch, modes);
    return expand_covariance(global_two_mode<double>(N, modes[0], modes[1], nu[0], nu[1], r, {1.0}), ch, modes);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

void exact_vs_limit() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    int count = 0, bad = 0;
    double worst = 0;
    for (int trial = 0; trial < 240; ++trial) {
        const int n = trial % 2 == 0 ? 1 : 2;
        RandomCurve rc = random_curve(n, rng);
        const double e0 = u(rng);
        StateCurve sc = rc.curve();
        const double exact = qfi_exact(sc, e0).value;
        const double numeric = qfi_numeric(sc, e0, 1e-3).value;
        const double err = std::abs(exact - numeric);
        const double allowed = std::max(1e-4 * std::abs(exact), 1e-8);
        worst = std::max(worst, err / allowed);
        if (err > allowed) ++bad;
        ++count;
    }
    const double dt = seconds_since(t0);
    report("exact-vs-limit-qfi", bad == 0 && count >= 200 && dt < 30,
           fmt("%.0f curves, %.0f outside max(1e-4 rel, 1e-8 abs), worst err/allowed %.3g, %.1f s", count, bad,
               worst, dt));
}

void fidelity_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<GaussianState> states;
    for (double nu : {1.0, 1.5, 2.0, 3.0})
        for (double r : {0.0, 0.2, 0.5}) states.push_back(one_mode_squeezed_thermal(nu, r));
    std::vector<CMat> rho;
    double tail = 0;
    for (const auto& s : states) {
        double t = 0;
        rho.push_back(fock_density_matrix(s, 100, &t));
        tail = std::max(tail, t);
    }
    if (tail > 1e-8) throw Error(ErrorKind::CutoffTooSmall, "fock oracle tail above 1e-8");
    double worst = 0;
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = i; j < states.size(); ++j) {
            const double f = fidelity_one_mode(states[i], states[j]);
            worst = std::max(worst, std::abs(f - uhlmann_fidelity(rho[i], rho[j])));
        }
    const double dt = seconds_since(t0);
    report("fidelity-fock-oracle", worst <= 1e-6 && dt < 60,
           fmt("max |F_formula - F_fock| = %.3g over nu {1,1.5,2,3} x r {0,0.2,0.5} pairs, %.1f s", worst, dt));
}

void thermal_null() {
    double worst = 0;
    for (double tau : {0.5, 1.0, 1.3})
        for (double nu : {1.5, 2.0, 5.0})
            for (double r : {0.0, 0.5, 1.0}) {
                TaylorChannel ch = cavity_taylor_channel(tau, 10);
                ChannelCurve<double> c =
                    make_channel_curve<double>(global_one_mode<double>(10, 0, nu, r, {1.0}), ch, {0});
                const double h = qfi_one_mode_exact(c.sigma(0.0), c.sigma_dot(0.0)).value;
                worst = std::max(worst, std::abs(h));
            }
    report("one-mode-thermal-null", worst <= 1e-10,
           fmt("max |H1(0)| = %.3g over nu {1.5,2,5} x r {0,0.5,1} x tau {0.5,1,1.3}", worst));
}

void regime_agreement() {
    std::ostringstream detail;
    bool ok = true;
    auto check = [&](const char* label, const RegimeQfi& q, double approx, double exact, double tol) {
        const double e = rel_err(approx, exact);
        const bool pass = e <= tol && q.valid();
        ok = ok && pass;
        char buf[200];
        std::snprintf(buf, sizeof buf, "%s%s rel %.2g (tol %.0e)%s", detail.tellp() > 0 ? "; " : "", label, e, tol,
                      q.valid() ? "" : " outside validity window");
        detail << buf;
    };
    const double tau = 1.0;
    const int N = 10;
    TaylorChannel ch = cavity_taylor_channel(tau, N);
    const quad pure = quad(1) + quad(1e-16);

    // one mode, zero temperature, leading order plus slope at eps = 1e-3
    for (double r : {0.0, 0.5}) {
        const double eps = 1e-3;
        RegimeQfi q = one_mode_zero_temp(cavity_series({0}, {1.0}, r, ch), ch.G(0), r, eps);
        check(r == 0 ? "1m-zero r=0" : "1m-zero r=0.5", q, q.value, exact_cavity_qfi({0}, {pure}, r, tau, eps), 1e-2);
    }
    // one mode, small temperature: nu = 1 + 2 Z^2, with Z chosen so the
    // correction is a few percent of H0
    {
        const double eps = 1e-4, Z = 6e-3 * eps;
        RegimeQfi z = one_mode_zero_temp(cavity_series({0}, {1.0}, 0.0, ch), ch.G(0), 0.0, eps);
        RegimeQfi q = one_mode_small_temp(z.h0, Z, eps);
        const quad nu = quad(1) + 2 * quad(Z) * quad(Z);
        check("1m-small", q, q.value, exact_cavity_qfi({0}, {nu}, 0.0, tau, eps), 5e-2);
    }
    // one mode, large temperature
    {
        const double eps = 1e-3;
        RegimeQfi q = one_mode_large_temp(cavity_series({0}, {2.0}, 0.3, ch), ch.G(0), 2.0, 0.3, eps);
        check("1m-large", q, q.value, exact_cavity_qfi({0}, {quad(2)}, 0.3, tau, eps), 1e-2);
    }
    // two modes, zero temperature
    {
        const double eps = 1e-3;
        RegimeQfi q = two_mode_zero_temp(cavity_series({0, 1}, {1.0, 1.0}, 0.0, ch), ch, 0, 1, 0.0, eps, true);
        check("2m-zero", q, q.value, exact_cavity_qfi({0, 1}, {pure, pure}, 0.0, tau, eps), 1e-2);
    }
    // two modes, small temperature
    {
        const double eps = 1e-4, Z = 6e-3 * eps;
        RegimeQfi z = two_mode_zero_temp(cavity_series({0, 1}, {1.0, 1.0}, 0.0, ch), ch, 0, 1, 0.0, eps, false);
        RegimeQfi q = two_mode_small_temp(z.h0, 1, 1, Z, eps);
        const quad nu = quad(1) + 2 * quad(Z) * quad(Z);
        check("2m-small", q, q.value, exact_cavity_qfi({0, 1}, {nu, nu}, 0.0, tau, eps), 5e-2);
    }
    // two modes, large temperature: H(0) exact, H0 + H1 eps at 1e-3
    for (double r : {0.0, 0.5}) {
        RegimeQfi q0 = two_mode_large_temp(cavity_series({0, 1}, {2.0, 6.0}, r, ch), ch, 0, 1, 2.0, 6.0, r, 0.0);
        check(r == 0 ? "2m-large H(0) r=0" : "2m-large H(0) r=0.5", q0, q0.h0,
              exact_cavity_qfi({0, 1}, {quad(2), quad(6)}, r, tau, 0.0), 1e-8);
        RegimeQfi q1 = two_mode_large_temp(cavity_series({0, 1}, {2.0, 6.0}, r, ch), ch, 0, 1, 2.0, 6.0, r, 1e-3);
        check(r == 0 ? "2m-large eps=1e-3 r=0" : "2m-large eps=1e-3 r=0.5", q1, q1.value,
              exact_cavity_qfi({0, 1}, {quad(2), quad(6)}, r, tau, 1e-3), 1e-2);
    }
    report("regime-formula-agreement", ok, detail.str());
}

void bogoliubov_structure() {
    std::ostringstream detail;
    // residual slope of the first-order cavity transform
    std::vector<double> as{0.02, 0.01, 0.005}, logs_a, logs_r;
    for (double a : as) {
        logs_a.push_back(std::log(a));
        logs_r.push_back(std::log(cavity_first_order_transform(1.0, a, 10).residuals().max()));
    }
    double ma = 0, mr = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
        ma += logs_a[i] / as.size();
        mr += logs_r[i] / as.size();
    }
    double num = 0, den = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
        num += (logs_a[i] - ma) * (logs_r[i] - mr);
        den += (logs_a[i] - ma) * (logs_a[i] - ma);
    }
    const double slope = num / den;
    const bool slope_ok = std::abs(slope - 2.0) <= 0.2;

    // symplectic condition for exactly symplectic inputs
    std::mt19937_64 rng(7);
    double worst_symp = 0;
    for (int trial = 0; trial < 50; ++trial) {
        CMat s = random_symplectic(1 + trial % 4, rng, 0.5);
        const int n = static_cast<int>(s.rows()) / 2;
        BogoliubovTransform t(s.topLeftCorner(n, n), s.topRightCorner(n, n));
        CMat st = operator_form(t);
        CMat k = make_k(n);
        worst_symp = std::max(worst_symp, max_abs(CMat(st * k * st.adjoint() - k)));
    }
    const bool symp_ok = worst_symp <= 1e-10;

    // the three channel-application paths
    double worst_path = 0;
    BogoliubovTransform t = cavity_transform(1.0, 0.01, 10);
    BogoliubovTransform op = operator_coefficients(t);
    {
        // one-mode probe
        GaussianState global = global_state(global_one_mode<double>(10, 0, 2.0, 0.5, {1.0}));
        CMat red = apply_channel(global, t, {0}).reduced.sigma;
        CMat Xg, Yg;
        covariance_elements_general(global.X(), global.Y(), op.alpha, op.beta, {0}, Xg, Yg);
        ElementsResult e1 = covariance_elements_one_mode(2.0, 0.5, {1.0}, t, 0);
        worst_path = std::max({worst_path, max_abs(CMat(red - assemble_sigma(Xg, Yg))),
                               max_abs(CMat(red - assemble_sigma(e1.X, e1.Y)))});
    }
    {
        GaussianState global = global_state(global_two_mode<double>(10, 0, 1, 2.0, 6.0, 0.5, {1.0}));
        CMat red = apply_channel(global, t, {0, 1}).reduced.sigma;
        CMat Xg, Yg;
        covariance_elements_general(global.X(), global.Y(), op.alpha, op.beta, {0, 1}, Xg, Yg);
        ElementsResult e2 = covariance_elements_two_mode(2.0, 6.0, 0.5, {1.0}, t, 0, 1);
        worst_path = std::max({worst_path, max_abs(CMat(red - assemble_sigma(Xg, Yg))),
                               max_abs(CMat(red - assemble_sigma(e2.X, e2.Y)))});
    }
    const bool path_ok = worst_path <= 1e-12;
    report("bogoliubov-structure", slope_ok && symp_ok && path_ok,
           fmt("residual slope %.3f (2.0 +- 0.2); max |S~ K S~^dag - K| = %.3g; max path difference %.3g", slope,
               worst_symp, worst_path));
}

void fig1_properties() {
    const double h1 = fig1_point(1.0, 1.0, 1, 10).H;
    const double h2 = fig1_point(2.0, 1.0, 1, 10).H;
    const double ratio = std::abs(h2 / h1);
    bool increasing = true;
    double prev = -1;
    for (double r : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const double h = fig1_point(1.0, r, 1, 10).H;
        increasing = increasing && h > prev;
        prev = h;
    }
    const double slope = std::log(fig1_point(1.0, 4.0, 1, 10).H) - std::log(fig1_point(1.0, 3.0, 1, 10).H);
    report("fig1-properties", ratio <= 1e-6 && increasing && std::abs(slope - 2.0) <= 0.1,
           fmt("H(tau=2)/H(tau=1) = %.3g; increasing in r: %.0f; log-slope over r in [3, 4] = %.4f", ratio,
               increasing ? 1.0 : 0.0, slope));
}

void fig2_properties() {
    std::ostringstream detail;
    bool order_ok = true;
    for (double r : {0.0, 1.0, 2.0}) {
        const double a = fig2_point(1.0, r, 2, 10, 1, 2, 10).H;
        const double b = fig2_point(1.0, r, 6, 6, 1, 2, 10).H;
        order_ok = order_ok && a > b && b > 0;
        detail << (r == 0 ? "" : ", ") << "r=" << r << ": H(2,10)=" << a << " H(6,6)=" << b;
    }
    TaylorChannel ch = cavity_taylor_channel(1.0, 10);
    double mixing = 0;
    for (double nu : {1.5, 2.0, 6.0, 10.0, 200.0})
        for (double r : {0.0, 1.0, 2.0})
            mixing = std::max(mixing, std::abs(large_temp_coefficients(cavity_series({0, 1}, {nu, nu}, r, ch), ch, 0,
                                                                       1, nu, nu, r)
                                                   .h00_mixing));
    const bool mixing_ok = mixing == 0.0;
    bool limit_ok = true;
    for (double r : {0.0, 1.0, 2.0}) {
        const double base = fig2_point(1.0, r, 1, 1, 1, 2, 10).H;
        const double hot = fig2_point(1.0, r, 200, 200, 1, 2, 10).H;
        const double ratio = hot / (2 * base);
        limit_ok = limit_ok && std::abs(ratio - 1) <= 0.1;
        detail << "; r=" << r << ": H(200,200)/(2 H(1,1)) = " << ratio;
    }
    detail << "; max equal-nu mixing term " << mixing;
    report("fig2-properties", order_ok && mixing_ok && limit_ok, detail.str());
}

void truncation() {
    double worst = 0;
    std::string where;
    auto track = [&](const std::string& label, double a, double b) {
        const double e = rel_err(a, b);
        if (e > worst) {
            worst = e;
            where = label;
        }
    };
    for (double tau : {0.5, 1.0, 3.0})
        for (double r : {0.0, 1.0}) {
            track("fig1 tau=" + std::to_string(tau), fig1_point(tau, r, 1, 10).H, fig1_point(tau, r, 1, 20).H);
            track("fig2 (1,1) tau=" + std::to_string(tau), fig2_point(tau, r, 1, 1, 1, 2, 10).H,
                  fig2_point(tau, r, 1, 1, 1, 2, 20).H);
            track("fig2 (2,10) tau=" + std::to_string(tau), fig2_point(tau, r, 2, 10, 1, 2, 10).H,
                  fig2_point(tau, r, 2, 10, 1, 2, 20).H);
        }
    report("mode-truncation", worst <= 1e-8,
           fmt("max relative change N=10 -> N=20 is %.3g", worst) + " (at " + where + ")");
}

void run(const char* name, const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(name, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    run("exact-vs-limit-qfi", exact_vs_limit);
    run("fidelity-fock-oracle", fidelity_oracle);
    run("one-mode-thermal-null", thermal_null);
    run("regime-formula-agreement", regime_agreement);
    run("bogoliubov-structure", bogoliubov_structure);
    run("fig1-properties", fig1_properties);
    run("fig2-properties", fig2_properties);
    run("mode-truncation", truncation);
    std::printf("%d criteria failed\n", failures);
    return failures;
}
