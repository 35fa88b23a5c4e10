#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "gqfi/cavity.hpp"
#include "gqfi/fidelity.hpp"
#include "gqfi/io.hpp"
#include "gqfi/perturbative.hpp"
#include "gqfi/qfi.hpp"

using namespace gqfi;
using nlohmann::json;

namespace {

struct Options {
    std::string state, state_b, channel, out;
    std::string modes;
    std::string env_nu = "1";
    std::string nu, r_text, tau_text = "0:6:0.01", pairs;
    std::string regime;
    double eps = 1e-3;
    double d_eps = 1e-3;
    double tol = kDefaultTol;
    double r = 0;
    double Z = 0;
    int N = 10;
    int jobs = 1;
    int m = 1, n = 2;
    bool force = false;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
}

std::vector<int> int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_grid(text)) out.push_back(static_cast<int>(v));
    return out;
}

std::vector<double> env_list(const std::string& text) { return parse_grid(text); }

double number_or_null(const std::optional<double>& v, json& j, const char* key) {
    if (v)
        j[key] = *v;
    else
        j[key] = nullptr;
    return v.value_or(0);
}

// probe from --state, or a thermal squeezed probe from --nu and --r
GaussianState probe_from(const Options& o, std::vector<int>& modes) {
    if (!o.state.empty()) {
        GaussianState s = load_state(o.state);
        if (modes.empty())
            for (int k = 0; k < s.n_modes; ++k) modes.push_back(k);
        return s;
    }
    if (o.nu.empty()) throw Error(ErrorKind::InvalidArgument, "give --state or --nu");
    ThermalSqueezedSpec spec;
    spec.nu = parse_grid(o.nu);
    spec.r = o.r;
    if (modes.empty())
        for (std::size_t k = 0; k < spec.nu.size(); ++k) modes.push_back(static_cast<int>(k));
    spec.modes = modes;
    return probe_state(spec);
}

ChannelSpec channel_from(const Options& o, int min_modes) {
    if (!o.channel.empty()) return load_channel(o.channel);
    ChannelSpec c;
    c.transform = BogoliubovTransform::identity(min_modes);
    c.description = "identity";
    return c;
}

int max_mode(const std::vector<int>& modes) {
    int m = 0;
    for (int k : modes) m = std::max(m, k);
    return m;
}

int run_fidelity(const Options& o) {
    GaussianState a = load_state(o.state), b = load_state(o.state_b);
    const double F = fidelity(a, b);
    json j;
    j["fidelity"] = F;
    j["bures_distance"] = bures_from_fidelity(F);
    emit(o, j.dump(2) + "\n");
    return 0;
}

int run_channel(const Options& o, bool eps_given) {
    std::vector<int> modes = o.modes.empty() ? std::vector<int>{} : int_list(o.modes);
    GaussianState probe = probe_from(o, modes);
    ChannelSpec ch = channel_from(o, max_mode(modes) + 1);
    BogoliubovTransform t = (eps_given && ch.taylor) ? ch.taylor->at(o.eps) : ch.transform;
    GlobalMoments<double> g = embed_state(probe, modes, t.N(), env_list(o.env_nu));
    GaussianState global = global_state(g);
    if (probe.d.size()) {
        for (std::size_t k = 0; k < modes.size(); ++k) {
            global.d(modes[k]) = probe.d(static_cast<Eigen::Index>(k));
            global.d(modes[k] + t.N()) = probe.d(static_cast<Eigen::Index>(k + modes.size()));
        }
    }
    ChannelResult res = apply_channel(global, t, modes, o.tol);
    spdlog::info("channel residuals: unitarity {:.3g}, symmetry {:.3g}", res.residuals.unitarity,
                 res.residuals.symmetry);
    emit(o, state_to_json(res.reduced) + "\n");
    return 0;
}

int run_qfi(const Options& o) {
    std::vector<int> modes = o.modes.empty() ? std::vector<int>{} : int_list(o.modes);
    GaussianState probe = probe_from(o, modes);
    ChannelSpec ch = channel_from(o, max_mode(modes) + 1);
    const int N = ch.transform.N();
    std::vector<double> env = env_list(o.env_nu);
    GlobalMoments<double> g = embed_state(probe, modes, N, env);
    GaussianState global = global_state(g);
    for (std::size_t k = 0; probe.d.size() && k < modes.size(); ++k) {
        global.d(modes[k]) = probe.d(static_cast<Eigen::Index>(k));
        global.d(modes[k] + N) = probe.d(static_cast<Eigen::Index>(k + modes.size()));
    }

    StateCurve curve;
    if (ch.taylor) {
        TaylorChannel tc = *ch.taylor;
        curve.state = [global, tc, modes, o](double e) { return apply_channel(global, tc.at(e), modes, o.tol).reduced; };
        ChannelCurve<double> cc = make_channel_curve<double>(g, tc, modes);
        curve.sigma_dot = [cc](double e) { return CMat(cc.sigma_dot(e)); };
    } else {
        // a fixed channel carries no eps dependence
        GaussianState fixed = apply_channel(global, ch.transform, modes, o.tol).reduced;
        curve.state = [fixed](double) { return fixed; };
        curve.sigma_dot = [fixed](double) { return CMat(CMat::Zero(fixed.sigma.rows(), fixed.sigma.cols())); };
    }

    json j;
    j["eps"] = o.eps;
    QfiResult exact = qfi_exact(curve, o.eps);
    j["exact"] = exact.value;
    j["pure_branch"] = exact.pure_branch;
    std::optional<double> numeric, numeric_err;
    try {
        NumericQfi nq = qfi_numeric(curve, o.eps, o.d_eps);
        numeric = nq.value;
        numeric_err = nq.error_estimate;
    } catch (const Error& e) {
        j["numeric_note"] = e.what();
    }
    number_or_null(numeric, j, "numeric");
    number_or_null(numeric_err, j, "numeric_error_estimate");
    if (numeric)
        j["difference"] = exact.value - *numeric;
    else
        j["difference"] = nullptr;

    int status = 0;
    if (!o.regime.empty()) {
        if (!ch.taylor) throw Error(ErrorKind::InsufficientTaylorData, "regime formulas need a Taylor channel");
        if (o.nu.empty()) throw Error(ErrorKind::InvalidArgument, "regime formulas need --nu and --r");
        const TaylorChannel& tc = *ch.taylor;
        CovarianceSeries s = expand_covariance(g, tc, modes);
        std::vector<double> nu = parse_grid(o.nu);
        RegimeQfi q;
        if (modes.size() == 1) {
            if (o.regime == "zero_temp")
                q = one_mode_zero_temp(s, tc.G(modes[0]), o.r, o.eps);
            else if (o.regime == "small_temp")
                q = one_mode_small_temp(one_mode_zero_temp(s, tc.G(modes[0]), o.r, o.eps).h0, o.Z, o.eps);
            else if (o.regime == "large_temp")
                q = one_mode_large_temp(s, tc.G(modes[0]), nu[0], o.r, o.eps);
            else
                throw Error(ErrorKind::InvalidArgument, "unknown regime " + o.regime);
        } else {
            const int a = modes[0], b = modes[1];
            if (o.regime == "zero_temp")
                q = two_mode_zero_temp(s, tc, a, b, o.r, o.eps, o.r == 0);
            else if (o.regime == "small_temp")
                q = two_mode_small_temp(two_mode_zero_temp(s, tc, a, b, o.r, o.eps, false).h0, 1, 1, o.Z, o.eps, o.r,
                                        o.force);
            else if (o.regime == "large_temp")
                q = two_mode_large_temp(s, tc, a, b, nu[0], nu[1], o.r, o.eps);
            else
                throw Error(ErrorKind::InvalidArgument, "unknown regime " + o.regime);
        }
        json rj;
        rj["name"] = regime_name(q.regime);
        rj["H0"] = q.h0;
        rj["H1"] = q.has_h1 ? json(q.h1) : json(nullptr);
        rj["value"] = q.value;
        json checks = json::array();
        for (const auto& v : q.validity)
            checks.push_back({{"condition", v.condition}, {"ratio", v.ratio}, {"ok", v.ok()}});
        rj["validity"] = checks;
        j["regime"] = rj;
        if (!q.valid()) {
            for (const auto& v : q.validity)
                if (!v.ok()) spdlog::warn("validity condition {} at ratio {:.3g}", v.condition, v.ratio);
            if (!o.force) status = 2;
        }
    }
    emit(o, j.dump(2) + "\n");
    if (status == 2) {
        std::cerr << json{{"error", error_name(ErrorKind::RegimeViolation)},
                          {"message", "validity window violated, rerun with --force to accept"}}
                         .dump()
                  << "\n";
    }
    return status;
}

int run_validate(const Options& o) {
    json j;
    bool ok = true;
    if (!o.state.empty()) {
        GaussianState s = load_state(o.state);
        StateReport rep = inspect_state(s);
        j["state"] = {{"hermiticity", rep.hermiticity},
                      {"symmetry", rep.symmetry},
                      {"block_structure", rep.block_structure},
                      {"displacement", rep.displacement},
                      {"min_eigenvalue", rep.min_eigenvalue},
                      {"ok", rep.ok(o.tol)}};
        ok = ok && rep.ok(o.tol);
    }
    if (!o.channel.empty()) {
        ChannelSpec c = load_channel(o.channel);
        IdentityResiduals r = c.transform.residuals();
        const bool ch_ok = r.max() <= o.tol;
        j["channel"] = {{"unitarity", r.unitarity}, {"symmetry", r.symmetry}, {"ok", ch_ok}};
        ok = ok && ch_ok;
    }
    if (j.empty()) throw Error(ErrorKind::InvalidArgument, "validate: give --state and/or --channel");
    j["ok"] = ok;
    emit(o, j.dump(2) + "\n");
    if (!ok) {
        std::cerr << json{{"error", "validation-failed"}, {"message", "invariant check failed"}}.dump() << "\n";
        return 1;
    }
    return 0;
}

std::vector<std::pair<double, double>> nu_pairs(const Options& o) {
    std::vector<std::pair<double, double>> out;
    if (!o.pairs.empty()) {
        std::stringstream ss(o.pairs);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto slash = item.find('/');
            if (slash == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--pairs expects nu1/nu2,...");
            std::vector<double> a = parse_grid(item.substr(0, slash)), b = parse_grid(item.substr(slash + 1));
            out.emplace_back(a.at(0), b.at(0));
        }
        return out;
    }
    std::vector<double> grid = parse_grid(o.nu.empty() ? "2,6,10" : o.nu);
    for (double a : grid)
        for (double b : grid) out.emplace_back(a, b);
    return out;
}

int run_sweep(const Options& o, int fig) {
    SweepOptions so;
    so.N = o.N;
    so.jobs = o.jobs;
    std::vector<double> taus = parse_grid(o.tau_text);
    std::vector<double> rs = parse_grid(o.r_text.empty() ? "0,0.5,1,1.5,2" : o.r_text);
    std::vector<SweepRow> rows;
    if (fig == 1) {
        spdlog::info("fig1 sweep: {} tau x {} r, N = {}", taus.size(), rs.size(), so.N);
        rows = fig1_sweep(rs, taus, o.m, so);
    } else {
        auto pairs = nu_pairs(o);
        spdlog::info("fig2 sweep: {} pairs x {} tau x {} r, N = {}", pairs.size(), taus.size(), rs.size(), so.N);
        rows = fig2_sweep(pairs, rs, taus, o.m, o.n, so);
    }
    emit(o, sweep_csv(rows));
    return 0;
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::RegimeViolation: return 2;
        case ErrorKind::Io: return 3;
        default: return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* lvl = std::getenv("GQFI_LOG"))
        spdlog::set_level(spdlog::level::from_str(lvl));
    else
        spdlog::set_level(spdlog::level::warn);

    CLI::App app{"Quantum Fisher information for Gaussian states under Bogoliubov channels"};
    app.require_subcommand(1);
    Options o;

    auto* fid = app.add_subcommand("fidelity", "fidelity and Bures distance between two states");
    fid->add_option("--a", o.state, "first state JSON")->required();
    fid->add_option("--b", o.state_b, "second state JSON")->required();
    fid->add_option("--out", o.out, "output file (stdout by default)");

    auto add_probe = [&](CLI::App* c) {
        c->add_option("--state", o.state, "probe state JSON");
        c->add_option("--nu", o.nu, "thermal squeezed probe: symplectic eigenvalues, e.g. 2,6");
        c->add_option("--r", o.r, "thermal squeezed probe: squeezing");
        c->add_option("--channel", o.channel, "channel JSON (identity when omitted)");
        c->add_option("--modes", o.modes, "probe mode indices in the channel, 0-based, e.g. 0,1");
        c->add_option("--env-nu", o.env_nu, "environment nu, one value or one per mode");
        c->add_option("--tol", o.tol, "structure tolerance");
        c->add_option("--out", o.out, "output file (stdout by default)");
    };

    auto* qfi = app.add_subcommand("qfi", "exact and finite-difference QFI along a channel");
    add_probe(qfi);
    qfi->add_option("--eps", o.eps, "parameter value");
    qfi->add_option("--d-eps", o.d_eps, "finite-difference step for the numeric oracle");
    qfi->add_option("--regime", o.regime, "also evaluate an expansion: zero_temp, small_temp, large_temp");
    qfi->add_option("--Z", o.Z, "Boltzmann factor for small_temp");
    qfi->add_flag("--force", o.force, "accept evaluations outside the validity window");

    auto* chn = app.add_subcommand("channel", "reduced state after a channel");
    add_probe(chn);
    auto* eps_opt = chn->add_option("--eps", o.eps, "evaluate a Taylor channel at this parameter");

    auto* val = app.add_subcommand("validate", "check state and channel invariants");
    val->add_option("--state", o.state, "state JSON");
    val->add_option("--channel", o.channel, "channel JSON");
    val->add_option("--tol", o.tol, "tolerance");
    val->add_option("--out", o.out, "output file (stdout by default)");

    auto add_sweep = [&](CLI::App* c) {
        c->add_option("--r", o.r_text, "squeezing values");
        c->add_option("--tau", o.tau_text, "tau grid, start:stop:step or a list");
        c->add_option("--N", o.N, "mode truncation");
        c->add_option("--jobs", o.jobs, "worker threads");
        c->add_option("--m", o.m, "probe mode (1-based)");
        c->add_option("--out", o.out, "CSV output (stdout by default)");
        c->add_flag("--force", o.force, "accept evaluations outside the validity window");
    };
    auto* f1 = app.add_subcommand("sweep-fig1", "one-mode squeezed vacuum H(0) over tau and r");
    add_sweep(f1);
    auto* f2 = app.add_subcommand("sweep-fig2", "two-mode squeezed thermal H(0) over tau, r and nu");
    add_sweep(f2);
    f2->add_option("--n", o.n, "second probe mode (1-based)");
    f2->add_option("--nu", o.nu, "nu grid; all ordered pairs are swept");
    f2->add_option("--pairs", o.pairs, "explicit pairs, e.g. 2/10,6/6");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*fid) return run_fidelity(o);
        if (*qfi) return run_qfi(o);
        if (*chn) return run_channel(o, eps_opt->count() > 0);
        if (*val) return run_validate(o);
        if (*f1) return run_sweep(o, 1);
        if (*f2) return run_sweep(o, 2);
    } catch (const Error& e) {
        std::cerr << json{{"error", e.name()}, {"message", e.what()}}.dump() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
    return 1;
}
