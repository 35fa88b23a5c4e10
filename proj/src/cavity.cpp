#include "gqfi/cavity.hpp"

#include <atomic>
#include <mutex>
#include <cmath>
#include <sstream>
#include <thread>

#include <boost/algorithm/string.hpp>

namespace gqfi {

namespace {
constexpr double kPi = 3.14159265358979323846;
const cplx kI(0, 1);
}  // namespace

double cavity_omega(int n) { return n * kPi; }

cplx cavity_alpha0(int n, double tau) { return std::exp(kI * (cavity_omega(n) * 2 * tau)); }

cplx cavity_alpha1(int m, int n, double tau) {
    if (m == n) return 0;
    const double d = m - n;
    return -8.0 * kI * std::sqrt(double(m) * n) / (d * d * d * kPi * kPi) *
           std::exp(0.5 * kI * kPi * (m + n - 2.0 * m * tau + 6.0 * n * tau)) * std::sin((m + n) * kPi / 2) *
           std::pow(std::sin(d * kPi * tau / 2), 2);
}

cplx cavity_beta1(int m, int n, double tau) {
    const double s = m + n;
    return -8.0 * kI * std::sqrt(double(m) * n) / (s * s * s * kPi * kPi) *
           std::exp(0.5 * kI * kPi * (m + n - 2.0 * m * tau + 2.0 * n * tau)) * std::sin(s * kPi / 2) *
           std::pow(std::sin(s * kPi * tau / 2), 2);
}

namespace {

struct Orders {
    CMat a0, a1, a2, b1, b2;
};

Orders cavity_orders(double tau, int N) {
    if (N < 1) throw Error(ErrorKind::InvalidArgument, "cavity: N must be positive");
    Orders o;
    o.a0 = CMat::Zero(N, N);
    o.a1.resize(N, N);
    o.b1.resize(N, N);
    for (int i = 0; i < N; ++i) {
        o.a0(i, i) = cavity_alpha0(i + 1, tau);
        for (int j = 0; j < N; ++j) {
            o.a1(i, j) = cavity_alpha1(i + 1, j + 1, tau);
            o.b1(i, j) = cavity_beta1(i + 1, j + 1, tau);
        }
    }
    o.a2 = 0.5 * (o.b1 * o.b1.adjoint() - o.a1 * o.a1.adjoint()) * o.a0;
    o.b2 = 0.5 * (o.a1 * o.b1.transpose() - o.b1 * o.a1.transpose()) * o.a0.conjugate();
    return o;
}

}  // namespace

TaylorChannel cavity_taylor_channel(double tau, int N) {
    Orders o = cavity_orders(tau, N);
    CMat z = CMat::Zero(N, N);
    // phases refer to the total elapsed time 2 tau
    return make_taylor_channel({o.a0, o.a1, o.a2, z}, {z, o.b1, o.b2, z}, 2 * tau, 1e-12);
}

BogoliubovTransform cavity_transform(double tau, double a, int N) {
    Orders o = cavity_orders(tau, N);
    return BogoliubovTransform(o.a0 + a * o.a1 + a * a * o.a2, a * o.b1 + a * a * o.b2);
}

BogoliubovTransform cavity_first_order_transform(double tau, double a, int N) {
    Orders o = cavity_orders(tau, N);
    return BogoliubovTransform(o.a0 + a * o.a1, a * o.b1);
}

CavityChannel cavity_channel(const CavityScenario& sc) {
    return {cavity_taylor_channel(sc.tau, sc.N), cavity_transform(sc.tau, sc.a, sc.N)};
}

namespace {

void require_margin(int max_mode, int N) {
    if (N < max_mode + 8) {
        std::ostringstream os;
        os << "cavity: N = " << N << " leaves too little room above probe mode " << max_mode << " (need N >= "
           << max_mode + 8 << ")";
        throw Error(ErrorKind::TruncationError, os.str());
    }
}

template <class F>
void parallel_for(std::size_t count, int jobs, F&& body) {
    const std::size_t workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

SweepRow fig1_point(double tau, double r, int m, int N) {
    require_margin(m, N);
    TaylorChannel ch = cavity_taylor_channel(tau, N);
    const int i = m - 1;
    CovarianceSeries s = expand_covariance(global_one_mode<double>(N, i, 1.0, r, {1.0}), ch, {i});
    RegimeQfi q = one_mode_zero_temp(s, ch.G(i), r, 0.0);
    return {tau, r, 1.0, 1.0, q.h0, regime_name(q.regime), N};
}

SweepRow fig2_point(double tau, double r, double nu1, double nu2, int m, int n, int N) {
    if (m == n) throw Error(ErrorKind::InvalidArgument, "fig2: probe modes must differ");
    if (nu1 < 1 || nu2 < 1) throw Error(ErrorKind::UnphysicalState, "fig2: nu must be >= 1");
    require_margin(std::max(m, n), N);
    TaylorChannel ch = cavity_taylor_channel(tau, N);
    const int i = m - 1, j = n - 1;
    GlobalMoments<double> g = global_two_mode<double>(N, i, j, nu1, nu2, r, {1.0});
    SweepRow row{tau, r, nu1, nu2, 0.0, "", N};
    if (nu1 == 1.0 && nu2 == 1.0) {
        RegimeQfi q = two_mode_zero_temp(expand_covariance(g, ch, {i, j}), ch, i, j, r, 0.0, false);
        row.H = q.h0;
        row.regime = regime_name(q.regime);
    } else if (nu1 > 1.0 && nu2 > 1.0) {
        LargeTempCoefficients h = large_temp_coefficients(expand_covariance(g, ch, {i, j}), ch, i, j, nu1, nu2, r);
        const double sh = std::sinh(2 * r);
        row.H = h.h00 + h.h02 * sh * sh;
        row.regime = regime_name(Regime::LargeTemp);
    } else {
        // one pure and one hot mode: neither expansion applies, and the exact
        // value at a = 0 depends on how nu -> 1 is approached
        throw Error(ErrorKind::NotProvided, "fig2: nu pairs must both be 1 or both exceed 1");
    }
    return row;
}

std::vector<SweepRow> fig1_sweep(const std::vector<double>& r_values, const std::vector<double>& tau_grid, int m,
                                 const SweepOptions& opt) {
    require_margin(m, opt.N);
    std::vector<SweepRow> rows(tau_grid.size() * r_values.size());
    parallel_for(rows.size(), opt.jobs, [&](std::size_t k) {
        rows[k] = fig1_point(tau_grid[k / r_values.size()], r_values[k % r_values.size()], m, opt.N);
    });
    return rows;
}

std::vector<SweepRow> fig2_sweep(const std::vector<std::pair<double, double>>& nu_pairs,
                                 const std::vector<double>& r_values, const std::vector<double>& tau_grid, int m,
                                 int n, const SweepOptions& opt) {
    require_margin(std::max(m, n), opt.N);
    const std::size_t per_pair = tau_grid.size() * r_values.size();
    std::vector<SweepRow> rows(nu_pairs.size() * per_pair);
    parallel_for(rows.size(), opt.jobs, [&](std::size_t k) {
        const auto& p = nu_pairs[k / per_pair];
        const std::size_t rem = k % per_pair;
        rows[k] = fig2_point(tau_grid[rem / r_values.size()], r_values[rem % r_values.size()], p.first, p.second, m,
                             n, opt.N);
    });
    return rows;
}

std::vector<double> parse_grid(const std::string& text) {
    auto number = [&](const std::string& tok) {
        std::string t = boost::algorithm::trim_copy(tok);
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (t.empty() || used != t.size()) throw Error(ErrorKind::InvalidArgument, "grid: bad number '" + tok + "'");
        return v;
    };
    std::vector<std::string> parts;
    if (text.find(':') != std::string::npos) {
        boost::algorithm::split(parts, text, boost::is_any_of(":"));
        if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "grid: expected start:stop:step");
        const double a = number(parts[0]), b = number(parts[1]), h = number(parts[2]);
        if (!(h > 0) || b < a) throw Error(ErrorKind::InvalidArgument, "grid: need step > 0 and stop >= start");
        const long count = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
        std::vector<double> out;
        out.reserve(count);
        // integer multiples keep grid points like 2.0 exact
        for (long i = 0; i < count; ++i) out.push_back(a + i * h);
        return out;
    }
    boost::algorithm::split(parts, text, boost::is_any_of(","));
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(number(p));
    return out;
}

}  // namespace gqfi
